//! Equivariant Euler characteristics and the quantities derived from them.
//!
//! Every orbit contributes a degree zero correction `Gamma` to the regular
//! part `(chi(E)/|G|)[k[G]]`. Contributions are reported per orbit, already
//! summed over the orbit, so `chi_G(E)` is the regular part plus the sum of
//! the breakdown.

mod bounds;
mod invariants;
mod topology;

pub use bounds::{bound_certificates, Certificate};
pub use invariants::{def_dim, invariant_dim, DefDim, InvariantDim};
pub use topology::{dual_graph_chi, hodge_check, stratum_sum, topo_chi, DualGraphChi, TopoChi};

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{int, rat, Rational};
use crate::curve::{GCurve, NodeKind, ResolvedSheaf, SheafSpec};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::rep::RepClass;

/// Where a ramification contribution comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    Component { component: usize },
    Marked { component: usize, marked: usize },
    Node { node: usize },
}

/// How a node contribution was evaluated.
#[derive(Clone, Debug, Serialize)]
pub struct NodeEvaluation {
    pub node: usize,
    pub smoothable: bool,
    /// Both the general formula and the smoothable shortcut were evaluated and agreed.
    pub paths_agree: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ChiReport {
    pub chi_g: RepClass,
    /// Coefficient of `[k[G]]` in the regular part.
    pub regular_part: Rational,
    pub breakdown: Vec<(Locus, RepClass)>,
    pub euler: i64,
    pub degree: i64,
    pub rank: u32,
    pub nodes: Vec<NodeEvaluation>,
}

/// `Psi_P (x) [E|_P]` over `G_P`, using `Psi_P = sum_d ((e-1)/2 - d) theta^d`.
fn psi_tensor(theta: &RepClass, e: usize, fiber: &RepClass) -> Result<RepClass> {
    let g = theta.group();
    let half = rat(e as i64 - 1, 2);
    let mut acc = RepClass::zero(g);
    let mut pow = RepClass::trivial(g);
    for d in 0..e {
        let coeff = &half - int(d as i64);
        if !coeff.is_zero() {
            acc = acc.try_add(&pow.scale(&coeff))?;
        }
        pow = pow.tensor(theta)?;
    }
    acc.tensor(fiber)
}

/// `Gamma_P` for one point with stabilizer `stab`, inertia order `inertia`,
/// cotangent character `theta` and fiber class `fiber`.
pub fn gamma_point(stab: &Subgroup, inertia: usize, theta: &RepClass, fiber: &RepClass) -> Result<RepClass> {
    let e = stab.order() / inertia;
    let g = stab.parent();
    if e == 1 {
        return Ok(RepClass::zero(g));
    }
    let local = psi_tensor(theta, e, fiber)?;
    Ok(local.induce(stab)?.scale(&rat(inertia as i64, g.order() as i64)))
}

/// Sum of `Gamma` over one full orbit of points.
fn orbit_total(stab: &Subgroup, gamma: RepClass) -> RepClass {
    gamma.scale(&int(stab.index() as i64))
}

/// `Gamma_{C_i}` summed over the orbit of `C_i`.
pub fn gamma_component(curve: &GCurve, i: usize, sheaf: &ResolvedSheaf) -> Result<RepClass> {
    let c = &curve.components()[i];
    let g = curve.group();
    let rc = &sheaf.components[i];
    let inertia = &c.inertia;
    if inertia.order() == 1 {
        return Ok(RepClass::zero(g));
    }
    let reg = RepClass::regular(inertia.group()).scale(&rat(rc.euler, inertia.order() as i64));
    let local = rc.inertia_chi.try_sub(&reg)?;
    let one = local.induce(inertia)?.scale(&rat(inertia.order() as i64, g.order() as i64));
    Ok(orbit_total(&c.decomposition, one))
}

/// `Gamma_P` summed over a marked orbit.
pub fn gamma_marked(curve: &GCurve, i: usize, j: usize, sheaf: &ResolvedSheaf) -> Result<RepClass> {
    let c = &curve.components()[i];
    let m = &c.marked[j];
    let one = gamma_point(&m.stabilizer, c.inertia.order(), &m.theta, &sheaf.marked[i][j])?;
    Ok(orbit_total(&m.stabilizer, one))
}

/// `Gamma_P` summed over a node orbit by the general definition.
pub fn gamma_node_general(curve: &GCurve, k: usize, sheaf: &ResolvedSheaf) -> Result<RepClass> {
    let n = &curve.nodes()[k];
    let g = curve.group();
    let nf = &sheaf.nodes[k];
    let bs = n.branch_stabilizer.within(&n.stabilizer)?;
    let branch_fiber = nf.fiber.restrict(&bs)?;
    let mut branches = RepClass::zero(g);
    for (b, br) in n.branches.iter().enumerate() {
        let inertia = curve.branch_inertia(k, b).order();
        let one = gamma_point(&n.branch_stabilizer, inertia, &br.theta, &branch_fiber)?;
        branches = branches.try_add(&one)?;
    }
    if n.kind == NodeKind::S2 {
        // The second preimage is a translate of the first and contributes equally.
        branches = branches.scale(&int(2));
    }
    let dim = nf.e_tensor_s.degree();
    let gp = n.stabilizer.group();
    let corr = RepClass::regular(gp)
        .scale(&(dim / int(gp.order() as i64)))
        .try_sub(&nf.e_tensor_s)?
        .induce(&n.stabilizer)?
        .scale(&rat(gp.order() as i64, g.order() as i64));
    Ok(orbit_total(&n.stabilizer, branches.try_add(&corr)?))
}

/// The shortcut for smoothable nodes, when it applies.
///
/// The shortcut relies on the branch cotangent characters being faithful on
/// the branch stabilizer, so it is only offered when the branch inertia is
/// trivial and `(E (x) S)` is the default product.
pub fn gamma_node_smoothable(curve: &GCurve, k: usize, sheaf: &ResolvedSheaf) -> Result<Option<RepClass>> {
    let n = &curve.nodes()[k];
    let g = curve.group();
    if !curve.is_smoothable(k) || (0..n.branches.len()).any(|b| curve.branch_inertia(k, b).order() != 1) {
        return Ok(None);
    }
    let nf = &sheaf.nodes[k];
    let sign = curve.sign_character(k);
    if nf.e_tensor_s != nf.fiber.tensor(&sign)? {
        return Ok(None);
    }
    let out = match n.kind {
        NodeKind::S1 => RepClass::zero(g),
        NodeKind::S2 => {
            let gp = n.stabilizer.group();
            let one = nf
                .fiber
                .tensor(&RepClass::trivial(gp).try_sub(&sign)?)?
                .induce(&n.stabilizer)?
                .scale(&rat(gp.order() as i64, 2 * g.order() as i64));
            orbit_total(&n.stabilizer, one)
        }
    };
    Ok(Some(out))
}

fn check_degree_zero(locus: &Locus, gamma: &RepClass) -> Result<()> {
    if gamma.degree().is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityViolated(format!(
            "contribution {locus:?} has degree {}",
            gamma.degree()
        )))
    }
}

/// `chi_G(E)` with its breakdown, from already resolved sheaf data.
pub fn chi_g_resolved(curve: &GCurve, sheaf: &ResolvedSheaf) -> Result<ChiReport> {
    let g = curve.group();
    let regular_part = rat(sheaf.euler, g.order() as i64);
    let mut breakdown = Vec::new();
    for i in 0..curve.components().len() {
        breakdown.push((Locus::Component { component: i }, gamma_component(curve, i, sheaf)?));
        for j in 0..curve.components()[i].marked.len() {
            breakdown.push((Locus::Marked { component: i, marked: j }, gamma_marked(curve, i, j, sheaf)?));
        }
    }
    let mut nodes = Vec::new();
    for k in 0..curve.nodes().len() {
        let general = gamma_node_general(curve, k, sheaf)?;
        let fast = gamma_node_smoothable(curve, k, sheaf)?;
        let agree = fast.as_ref().map(|f| *f == general);
        if agree == Some(false) {
            return Err(Error::PathMismatch(k));
        }
        nodes.push(NodeEvaluation { node: k, smoothable: curve.is_smoothable(k), paths_agree: agree });
        breakdown.push((Locus::Node { node: k }, general));
    }
    let mut chi = RepClass::regular(g).scale(&regular_part);
    for (locus, gamma) in &breakdown {
        check_degree_zero(locus, gamma)?;
        chi = chi.try_add(gamma)?;
    }
    if chi.degree() != int(sheaf.euler) {
        return Err(Error::IdentityViolated(format!(
            "degree of chi_G is {} but chi(E) = {}",
            chi.degree(),
            sheaf.euler
        )));
    }
    Ok(ChiReport {
        chi_g: chi,
        regular_part,
        breakdown,
        euler: sheaf.euler,
        degree: sheaf.degree,
        rank: sheaf.rank,
        nodes,
    })
}

/// `chi_G(E) = (chi(E)/|G|)[k[G]] + sum_Z Gamma_G(E)_Z`.
pub fn chi_g(curve: &GCurve, spec: &SheafSpec) -> Result<ChiReport> {
    chi_g_resolved(curve, &spec.resolve(curve)?)
}

/// Equivariant degree with the Riemann-Roch identity asserted.
#[derive(Clone, Debug)]
pub struct DegReport {
    pub deg_g: RepClass,
    pub chi_e: RepClass,
    pub chi_o: RepClass,
    pub rank: u32,
}

/// `deg_G E = (deg E/|G|)[k[G]] + sum_Z (Gamma(E)_Z - r Gamma(O)_Z)`.
pub fn deg_g(curve: &GCurve, spec: &SheafSpec) -> Result<DegReport> {
    let g = curve.group();
    let e = chi_g(curve, spec)?;
    let o = chi_g(curve, &SheafSpec::structure(curve))?;
    let r = int(e.rank as i64);
    let mut deg = RepClass::regular(g).scale(&rat(e.degree, g.order() as i64));
    for ((le, ge), (lo, go)) in e.breakdown.iter().zip(&o.breakdown) {
        debug_assert_eq!(le, lo);
        deg = deg.try_add(&ge.try_sub(&go.scale(&r))?)?;
    }
    let rhs = o.chi_g.scale(&r).try_add(&deg)?;
    if rhs != e.chi_g {
        return Err(Error::IdentityViolated("equivariant Riemann-Roch fails".into()));
    }
    Ok(DegReport { deg_g: deg, chi_e: e.chi_g, chi_o: o.chi_g, rank: e.rank })
}

/// Permutation class on the connected components of `C` containing no point
/// of the listed marked orbits.
fn components_avoiding(curve: &GCurve, avoid: &[(usize, usize)]) -> Result<RepClass> {
    let graph = curve.expanded_graph();
    let (count, label) = graph.connected_components();
    let mut hit = vec![false; count];
    for &(i, _) in avoid {
        for (v, &(ci, _)) in graph.vertices.iter().enumerate() {
            if ci == i {
                hit[label[v]] = true;
            }
        }
    }
    let g = curve.group();
    let rep_vertex: Vec<usize> = (0..count)
        .map(|cc| label.iter().position(|&l| l == cc).expect("nonempty"))
        .collect();
    let values = (0..g.num_classes())
        .map(|c| {
            let x = g.class_rep(c);
            let fixed = (0..count)
                .filter(|&cc| !hit[cc] && label[graph.vertex_action[x][rep_vertex[cc]]] == cc)
                .count();
            crate::arith::Cyclotomic::from_int(fixed as i64, g.exponent())
        })
        .collect();
    RepClass::from_values(g, values)
}

/// How `[H^0(C, E)]` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H0Route {
    /// `E = omega_C(T)`: `H^1` is dual to functions vanishing on `T`.
    LogCanonical,
    /// `E (x) omega_C^-1` has positive degree on every component.
    AmpleByDegree,
    /// Vanishing of `H^1` declared by the sheaf data.
    Assumed,
}

/// `[H^0(C, E)]` when `H^1(C, E)` is known.
pub fn h0_class(curve: &GCurve, spec: &SheafSpec) -> Result<(RepClass, H0Route)> {
    let sheaf = spec.resolve(curve)?;
    let chi = chi_g_resolved(curve, &sheaf)?.chi_g;
    if let Some((1, use_t)) = sheaf.pluri_power {
        let t: Vec<(usize, usize)> = if use_t {
            curve
                .components()
                .iter()
                .enumerate()
                .flat_map(|(i, c)| c.marked.iter().enumerate().filter(|(_, m)| m.in_t).map(move |(j, _)| (i, j)))
                .collect()
        } else {
            Vec::new()
        };
        let h1 = components_avoiding(curve, &t)?;
        return Ok((chi.try_add(&h1)?, H0Route::LogCanonical));
    }
    if sheaf.rank == 1 && sheaf.ample_by_degree() {
        return Ok((chi, H0Route::AmpleByDegree));
    }
    if sheaf.assume_ample {
        return Ok((chi, H0Route::Assumed));
    }
    Err(Error::NotAmple(
        "E (x) omega^-1 is not positive on every component and vanishing was not declared".into(),
    ))
}

/// `[H^0(C, omega_C)]`.
pub fn h0_omega(curve: &GCurve) -> Result<RepClass> {
    Ok(h0_class(curve, &SheafSpec::omega(curve))?.0)
}

/// Multiplicity of the trivial representation.
pub fn invariant_part(class: &RepClass) -> Result<Rational> {
    class.inner(&RepClass::trivial(class.group()))
}

#[cfg(test)]
mod tests;
