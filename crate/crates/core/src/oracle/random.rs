//! Seeded generators of valid curve and sheaf data for property suites.
//!
//! The generators only produce data that passes [`GCurve::new`]: stabilizers
//! carry a linear character with kernel exactly the inertia, node branches
//! sit on translates compatible with their stabilizers, and the genus of
//! every component is solved from Riemann-Hurwitz.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::int;
use crate::curve::{
    trivial_theta, Branch, ComponentOrbit, GCurve, GenericSheaf, MarkedOrbit, NodeKind, NodeOrbit, Piece, SheafSpec,
};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, cyclic, dihedral, product, symmetric, PermGroup, Subgroup};
use crate::rep::RepClass;

/// Which kind of curve to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every stabilizer trivial.
    Free,
    /// No nodes; ramified marked orbits and occasional nontrivial inertia.
    Smooth,
    /// Nodes of both types over arbitrary stabilizers.
    Nodal,
    /// Rational components with cyclic decomposition groups, glued at fixed
    /// points and along free orbits.
    RationalNodal,
}

/// A group from the family's pool.
pub fn random_group<R: Rng>(rng: &mut R, family: Family) -> Result<Arc<PermGroup>> {
    let pick = match family {
        Family::Free => rng.gen_range(0..3),
        Family::RationalNodal => rng.gen_range(0..2),
        _ => rng.gen_range(0..4),
    };
    match pick {
        0 => cyclic(rng.gen_range(2..=6)),
        1 => symmetric(3),
        2 => dihedral(4),
        _ => {
            let c2 = cyclic(2)?;
            product(&c2, &c2)
        }
    }
}

/// Linear characters of `k` whose kernel is exactly `kernel`.
pub fn characters_with_kernel(k: &Subgroup, kernel: &Subgroup) -> Result<Vec<RepClass>> {
    if !kernel.is_subgroup_of(k) {
        return Ok(Vec::new());
    }
    let inner = kernel.within(k)?;
    let table = k.group().character_table()?;
    let mut out = Vec::new();
    for i in 0..table.len() {
        if table.degree(i) != 1 {
            continue;
        }
        let chi = RepClass::irreducible(k.group(), i)?;
        if chi.kernel()? == inner {
            out.push(chi);
        }
    }
    Ok(out)
}

fn elements_of_order_two(g: &PermGroup) -> Vec<usize> {
    (0..g.order()).filter(|&x| g.element_order(x) == 2).collect()
}

struct Draft {
    group: Arc<PermGroup>,
    subs: Vec<Subgroup>,
    comps: Vec<(Subgroup, Subgroup, u32, Vec<MarkedOrbit>)>,
    nodes: Vec<NodeOrbit>,
}

impl Draft {
    /// A branch on a translate of some component with stabilizer `k`.
    fn branch_at<R: Rng>(&self, rng: &mut R, k: &Subgroup, free_only: bool) -> Result<Option<Branch>> {
        let g = &self.group;
        for _ in 0..24 {
            let a = rng.gen_range(0..self.comps.len());
            let x = rng.gen_range(0..g.order());
            let (dec, ine, _, _) = &self.comps[a];
            if free_only && ine.order() != 1 {
                continue;
            }
            let dec = dec.conjugate_by(x)?;
            let ine = ine.conjugate_by(x)?;
            if !ine.is_subgroup_of(k) || !k.is_subgroup_of(&dec) {
                continue;
            }
            let chars = characters_with_kernel(k, &ine)?;
            if let Some(theta) = chars.choose(rng) {
                return Ok(Some(Branch { component: a, translate: x, theta: theta.clone() }));
            }
        }
        Ok(None)
    }

    fn add_s1<R: Rng>(&mut self, rng: &mut R, k: Subgroup) -> Result<()> {
        let free = k.order() == 1;
        let (Some(b0), Some(mut b1)) = (self.branch_at(rng, &k, free)?, self.branch_at(rng, &k, free)?) else {
            return Ok(());
        };
        // Bias towards smoothable nodes: inverse characters with equal inertia.
        if rng.gen_bool(0.5) && b0.theta.dual().kernel()? == b1.theta.kernel()? {
            b1.theta = b0.theta.dual();
        }
        self.nodes.push(NodeOrbit {
            kind: NodeKind::S1,
            stabilizer: k.clone(),
            branch_stabilizer: k,
            branches: vec![b0, b1],
        });
        Ok(())
    }

    fn add_s2<R: Rng>(&mut self, rng: &mut R, k2: Subgroup, k: Subgroup) -> Result<()> {
        if let Some(b) = self.branch_at(rng, &k, k.order() == 1)? {
            self.nodes.push(NodeOrbit { kind: NodeKind::S2, stabilizer: k2, branch_stabilizer: k, branches: vec![b] });
        }
        Ok(())
    }

    /// A random pair `k < k2` of index two, if the group has one.
    fn index_two_pair<R: Rng>(&self, rng: &mut R) -> Option<(Subgroup, Subgroup)> {
        let pairs: Vec<(usize, usize)> = (0..self.subs.len())
            .flat_map(|i| (0..self.subs.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.subs[j].order() * 2 == self.subs[i].order() && self.subs[j].is_subgroup_of(&self.subs[i]))
            .collect();
        pairs.choose(rng).map(|&(i, j)| (self.subs[i].clone(), self.subs[j].clone()))
    }

    /// Solve Riemann-Hurwitz for each component genus, if possible.
    fn finish(self) -> Result<Option<GCurve>> {
        let mut components = Vec::new();
        for (i, (dec, ine, h, marked)) in self.comps.iter().enumerate() {
            let gbar = (dec.order() / ine.order()) as i64;
            let mut ram = 0i64;
            for m in marked {
                let e = (m.stabilizer.order() / ine.order()) as i64;
                ram += gbar / e * (e - 1);
            }
            for n in &self.nodes {
                for b in &n.branches {
                    if b.component == i {
                        let e = (n.branch_stabilizer.order() / ine.order()) as i64;
                        ram += gbar / e * (e - 1);
                    }
                }
            }
            let two_g_minus_two = gbar * (2 * *h as i64 - 2) + ram;
            if two_g_minus_two % 2 != 0 || two_g_minus_two < -2 {
                return Ok(None);
            }
            components.push(ComponentOrbit {
                genus: (two_g_minus_two / 2 + 1) as u32,
                decomposition: dec.clone(),
                inertia: ine.clone(),
                marked: marked.clone(),
            });
        }
        match GCurve::new(self.group, components, self.nodes) {
            Ok(c) => Ok(Some(c)),
            Err(Error::RiemannHurwitz { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn random_general<R: Rng>(rng: &mut R, family: Family) -> Result<Option<GCurve>> {
    let group = random_group(rng, family)?;
    let subs = all_subgroups(&group)?;
    let trivial = Subgroup::trivial(&group);
    let mut draft = Draft { group: group.clone(), subs: subs.clone(), comps: Vec::new(), nodes: Vec::new() };
    let ncomp = match family {
        Family::Nodal => rng.gen_range(1..=3),
        _ => rng.gen_range(1..=2),
    };
    for i in 0..ncomp {
        let dec = subs.choose(rng).expect("nonempty").clone();
        let mut ine = trivial.clone();
        if family != Family::Free && i > 0 && rng.gen_bool(0.35) {
            let normal: Vec<&Subgroup> = subs
                .iter()
                .filter(|s| s.is_subgroup_of(&dec) && s.is_normal_in(&dec) && s.order() < dec.order())
                .collect();
            if let Some(s) = normal.choose(rng) {
                ine = (*s).clone();
            }
        }
        let h = rng.gen_range(0..=2u32);
        let mut marked = Vec::new();
        if family != Family::Free {
            let over: Vec<&Subgroup> = subs
                .iter()
                .filter(|k| ine.is_subgroup_of(k) && k.is_subgroup_of(&dec) && k.order() > ine.order())
                .collect();
            for _ in 0..rng.gen_range(0..=3) {
                let Some(k) = over.choose(rng) else { break };
                let chars = characters_with_kernel(k, &ine)?;
                if let Some(theta) = chars.choose(rng) {
                    marked.push(MarkedOrbit { stabilizer: (*k).clone(), theta: theta.clone(), in_t: rng.gen_bool(0.3) });
                }
            }
        }
        if rng.gen_bool(0.5) {
            // An unramified orbit, useful as a twisting divisor.
            marked.push(MarkedOrbit { theta: trivial_theta(&ine), stabilizer: ine.clone(), in_t: rng.gen_bool(0.3) });
        }
        draft.comps.push((dec, ine, h, marked));
    }
    let nnodes = match family {
        Family::Nodal => rng.gen_range(1..=3),
        Family::Free => rng.gen_range(0..=2),
        _ => 0,
    };
    let twos = elements_of_order_two(&group);
    for _ in 0..nnodes {
        if family == Family::Free {
            draft.add_s1(rng, trivial.clone())?;
            continue;
        }
        match rng.gen_range(0..4) {
            0 => draft.add_s1(rng, trivial.clone())?,
            1 => {
                if let Some(&s) = twos.choose(rng) {
                    let k2 = Subgroup::from_indices(&group, &[s])?;
                    draft.add_s2(rng, k2, trivial.clone())?;
                }
            }
            2 => {
                let k = subs.choose(rng).expect("nonempty").clone();
                draft.add_s1(rng, k)?;
            }
            _ => {
                if let Some((k2, k)) = draft.index_two_pair(rng) {
                    draft.add_s2(rng, k2, k)?;
                }
            }
        }
    }
    if family == Family::Nodal && draft.nodes.is_empty() {
        return Ok(None);
    }
    draft.finish()
}

fn random_rational<R: Rng>(rng: &mut R) -> Result<Option<GCurve>> {
    let group = random_group(rng, Family::RationalNodal)?;
    let subs = all_subgroups(&group)?;
    let trivial = Subgroup::trivial(&group);
    let cyclic_subs: Vec<Subgroup> = subs
        .iter()
        .filter(|s| (0..group.order()).any(|x| s.contains(x) && group.element_order(x) as usize == s.order()))
        .cloned()
        .collect();
    let mut draft = Draft { group: group.clone(), subs, comps: Vec::new(), nodes: Vec::new() };
    // Fixed points of a rotation of the line: (component, stabilizer, theta).
    let mut slots: Vec<(usize, Subgroup, RepClass)> = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        let dec = cyclic_subs.choose(rng).expect("nonempty").clone();
        if dec.order() > 1 {
            let chars = characters_with_kernel(&dec, &trivial)?;
            let chi = chars.choose(rng).expect("cyclic groups have faithful characters").clone();
            slots.push((i, dec.clone(), chi.dual()));
            slots.push((i, dec.clone(), chi));
        }
        draft.comps.push((dec, trivial.clone(), 0, Vec::new()));
    }
    slots.shuffle(rng);
    let twos = elements_of_order_two(&group);
    for _ in 0..rng.gen_range(1..=4) {
        match rng.gen_range(0..4) {
            0 if slots.len() >= 2 => {
                let (a, ka, ta) = slots.pop().expect("slot");
                let Some(pos) = slots.iter().position(|(_, k, _)| k.order() == ka.order()) else {
                    slots.push((a, ka, ta));
                    continue;
                };
                let (b, kb, tb) = slots.remove(pos);
                let Some(x) = (0..group.order()).find(|&x| kb.conjugate_by(x).map(|c| c == ka).unwrap_or(false)) else {
                    slots.push((a, ka, ta));
                    slots.push((b, kb, tb));
                    continue;
                };
                let map = ka.conjugation_map(&kb, x)?;
                let theta_b = tb.pullback(ka.group(), &map)?;
                draft.nodes.push(NodeOrbit {
                    kind: NodeKind::S1,
                    stabilizer: ka.clone(),
                    branch_stabilizer: ka,
                    branches: vec![
                        Branch { component: a, translate: 0, theta: ta },
                        Branch { component: b, translate: x, theta: theta_b },
                    ],
                });
            }
            1 if !slots.is_empty() => {
                let (a, k, theta) = slots.pop().expect("slot");
                let over: Vec<&Subgroup> =
                    draft.subs.iter().filter(|s| s.order() == 2 * k.order() && k.is_subgroup_of(s)).collect();
                match over.choose(rng) {
                    Some(k2) => draft.nodes.push(NodeOrbit {
                        kind: NodeKind::S2,
                        stabilizer: (*k2).clone(),
                        branch_stabilizer: k,
                        branches: vec![Branch { component: a, translate: 0, theta }],
                    }),
                    None => slots.push((a, k, theta)),
                }
            }
            2 if !twos.is_empty() => {
                let s = *twos.choose(rng).expect("nonempty");
                let k2 = Subgroup::from_indices(&group, &[s])?;
                draft.add_s2(rng, k2, trivial.clone())?;
            }
            _ => draft.add_s1(rng, trivial.clone())?,
        }
    }
    for (a, k, theta) in slots {
        draft.comps[a].3.push(MarkedOrbit { stabilizer: k, theta, in_t: rng.gen_bool(0.3) });
    }
    draft.finish()
}

/// A random valid curve of the given family.
pub fn random_curve<R: Rng>(rng: &mut R, family: Family) -> Result<GCurve> {
    for _ in 0..500 {
        let drawn = match family {
            Family::RationalNodal => random_rational(rng)?,
            _ => random_general(rng, family)?,
        };
        if let Some(c) = drawn {
            if family == Family::RationalNodal && c.components().iter().any(|x| x.genus != 0) {
                continue;
            }
            return Ok(c);
        }
    }
    Err(Error::UnsupportedShape(format!("could not draw a {family:?} curve")))
}

/// `omega_C(T)^m (x) O(sum q_j P_j)` with small random parameters.
pub fn random_pluri<R: Rng>(rng: &mut R, curve: &GCurve) -> SheafSpec {
    let twists = curve
        .components()
        .iter()
        .map(|c| c.marked.iter().map(|_| if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 }).collect())
        .collect();
    SheafSpec::Pluri { m: rng.gen_range(-3..=6), use_t: rng.gen_bool(0.5), twists }
}

/// A random genuine representation of `h` of degree `r`, optionally
/// restricted to characters trivial on `must_kill`.
fn random_fiber<R: Rng>(rng: &mut R, h: &Subgroup, r: u32, must_kill: &[Subgroup]) -> Result<RepClass> {
    let g = h.group();
    let table = g.character_table()?;
    let mut allowed = Vec::new();
    for i in 0..table.len() {
        let chi = RepClass::irreducible(g, i)?;
        let mut ok = true;
        for k in must_kill {
            let inner = k.within(h)?;
            let res = chi.restrict(&inner)?;
            if res != RepClass::trivial(inner.group()).scale(&chi.degree()) {
                ok = false;
            }
        }
        if ok {
            allowed.push((table.degree(i) as u32, chi));
        }
    }
    let mut acc = RepClass::zero(g);
    let mut left = r;
    while left > 0 {
        let fits: Vec<&(u32, RepClass)> = allowed.iter().filter(|(d, _)| *d <= left).collect();
        let (d, chi) = fits.choose(rng).expect("the trivial character always fits");
        acc = acc.try_add(chi)?;
        left -= d;
    }
    Ok(acc)
}

/// A random locally free sheaf with trivial inertia action on every
/// component except those whose inertia is only met by unramified orbits.
pub fn random_generic<R: Rng>(rng: &mut R, curve: &GCurve) -> Result<SheafSpec> {
    let r: u32 = rng.gen_range(1..=3);
    let mut pieces = Vec::new();
    let mut marked_fibers = Vec::new();
    for (i, c) in curve.components().iter().enumerate() {
        let on_node = curve.nodes().iter().any(|n| n.branches.iter().any(|b| b.component == i));
        let only_unramified = c.marked.iter().all(|m| m.stabilizer.order() == c.inertia.order());
        let ig = c.inertia.group();
        let iso = if c.inertia.order() > 1 && only_unramified && !on_node {
            random_fiber(rng, &Subgroup::whole(ig), r, &[])?
        } else {
            RepClass::trivial(ig).scale(&int(r as i64))
        };
        let mults = iso.multiplicities()?;
        let mut list = Vec::new();
        for (j, m) in mults.iter().enumerate() {
            let rank = m.to_integer().try_into().unwrap_or(0u32);
            if rank > 0 {
                list.push(Piece { irrep: j, rank, degree: rng.gen_range(-4..=6) });
            }
        }
        pieces.push(list);
        let mut fibers = Vec::new();
        for m in &c.marked {
            if m.stabilizer.order() == c.inertia.order() {
                let map: Vec<usize> = (0..m.stabilizer.order())
                    .map(|y| c.inertia.local_index(m.stabilizer.embed(y)).expect("same subgroup"))
                    .collect();
                fibers.push(iso.pullback(m.stabilizer.group(), &map)?);
            } else {
                fibers.push(random_fiber(rng, &m.stabilizer, r, std::slice::from_ref(&c.inertia))?);
            }
        }
        marked_fibers.push(fibers);
    }
    let mut node_fibers = Vec::new();
    let mut node_e_tensor_s = Vec::new();
    for (k, n) in curve.nodes().iter().enumerate() {
        let kill: Vec<Subgroup> = (0..n.branches.len()).map(|b| curve.branch_inertia(k, b).clone()).collect();
        let f = random_fiber(rng, &n.stabilizer, r, &kill)?;
        node_e_tensor_s.push(if rng.gen_bool(0.2) { Some(f.tensor(&curve.sign_character(k))?) } else { None });
        node_fibers.push(f);
    }
    Ok(SheafSpec::Generic(GenericSheaf {
        rank: r,
        pieces,
        marked_fibers,
        node_fibers,
        node_e_tensor_s,
        assume_ample: false,
    }))
}
