//! Fixed curves shared by the benchmarks.

use equichi::curve::{theta_from_exponents, Branch, ComponentOrbit, GCurve, MarkedOrbit, NodeKind, NodeOrbit};
use equichi::group::cyclic;
use equichi::{Result, Subgroup};

fn fixed_point(g: &std::sync::Arc<equichi::PermGroup>, exp: i64) -> Result<MarkedOrbit> {
    let whole = Subgroup::whole(g);
    Ok(MarkedOrbit { theta: theta_from_exponents(&whole, 1, &[exp])?, stabilizer: whole, in_t: false })
}

/// `y^2 = f(x)` with `deg f = 2 genus + 2` and the involution.
pub fn hyperelliptic(genus: u32) -> Result<GCurve> {
    let g = cyclic(2)?;
    let marked = (0..2 * genus + 2).map(|_| fixed_point(&g, 1)).collect::<Result<Vec<_>>>()?;
    let comp = ComponentOrbit { genus, decomposition: Subgroup::whole(&g), inertia: Subgroup::trivial(&g), marked };
    GCurve::new(g, vec![comp], vec![])
}

/// Genus 4 curve with `Z/5` whose four fixed points are glued in two pairs.
pub fn p5_nodal() -> Result<GCurve> {
    let g = cyclic(5)?;
    let whole = Subgroup::whole(&g);
    let branch = |e| -> Result<Branch> {
        Ok(Branch { component: 0, translate: 0, theta: theta_from_exponents(&whole, 1, &[e])? })
    };
    let node = |a, b| -> Result<NodeOrbit> {
        Ok(NodeOrbit {
            kind: NodeKind::S1,
            stabilizer: whole.clone(),
            branch_stabilizer: whole.clone(),
            branches: vec![branch(a)?, branch(b)?],
        })
    };
    let comp = ComponentOrbit { genus: 4, decomposition: whole.clone(), inertia: Subgroup::trivial(&g), marked: vec![] };
    GCurve::new(g.clone(), vec![comp], vec![node(1, 1)?, node(1, 3)?])
}
