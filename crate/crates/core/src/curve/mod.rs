//! Orbit-level description of a nodal curve with a finite group action.
//!
//! A curve is given by one record per `G`-orbit of irreducible components,
//! marked smooth points and nodes. Each record carries a representative's
//! stabilizer data as concrete subgroups of `G`; the full curve is recovered
//! by translating representatives by coset representatives, which is what
//! [`GCurve::expanded_graph`] does.
//!
//! Conventions:
//! * a component orbit stores the genus of the normalised representative
//!   `C_i`, its decomposition group `G_i` and inertia group `I_i`;
//! * a marked orbit stores the stabilizer `G_P` of a point on the
//!   representative component and the cotangent character `theta_P` of `G_P`,
//!   which must have kernel exactly `I_i`;
//! * a node orbit stores `G_P` and the stabilizer of a preimage branch. A
//!   branch lies on `h C_a` for a translate `h`, so its inertia is
//!   `h I_a h^-1`. Type S1 nodes list both branches; type S2 nodes list one
//!   branch and the second is its image under any `sigma` in `G_P` outside the
//!   branch stabilizer.

mod sheaf;

pub use sheaf::{GenericSheaf, NodeFiber, Piece, ResolvedComponent, ResolvedSheaf, SheafSpec};

use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::rep::{linear_character, RepClass};

#[derive(Clone, Debug)]
pub struct MarkedOrbit {
    pub stabilizer: Subgroup,
    /// Cotangent character, a class function on `stabilizer.group()`.
    pub theta: RepClass,
    pub in_t: bool,
}

#[derive(Clone, Debug)]
pub struct ComponentOrbit {
    pub genus: u32,
    pub decomposition: Subgroup,
    pub inertia: Subgroup,
    pub marked: Vec<MarkedOrbit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    S1,
    S2,
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub component: usize,
    /// Parent element `h` with the branch lying on `h C_component`.
    pub translate: usize,
    /// Cotangent character on `branch_stabilizer.group()`.
    pub theta: RepClass,
}

#[derive(Clone, Debug)]
pub struct NodeOrbit {
    pub kind: NodeKind,
    pub stabilizer: Subgroup,
    pub branch_stabilizer: Subgroup,
    pub branches: Vec<Branch>,
}

/// Trivial character on a group, as a convenience for unramified points.
pub fn trivial_theta(h: &Subgroup) -> RepClass {
    RepClass::trivial(h.group())
}

/// Cotangent character from exponents on the stabilizer's own generators.
pub fn theta_from_exponents(stabilizer: &Subgroup, inertia_order: usize, exps: &[i64]) -> Result<RepClass> {
    let e = (stabilizer.order() / inertia_order.max(1)) as u32;
    let gens = stabilizer.group().generators().to_vec();
    linear_character(stabilizer.group(), &gens, exps, e.max(1))
}

/// A validated curve datum.
#[derive(Clone, Debug)]
pub struct GCurve {
    group: Arc<PermGroup>,
    components: Vec<ComponentOrbit>,
    nodes: Vec<NodeOrbit>,
    quotient_genus: Vec<u32>,
    branch_inertia: Vec<Vec<Subgroup>>,
    swap: Vec<Option<usize>>,
}

/// One vertex or edge of the expanded dual graph, plus the group action.
#[derive(Clone, Debug)]
pub struct ExpandedGraph {
    /// `(component orbit, coset representative)` per vertex.
    pub vertices: Vec<(usize, usize)>,
    /// `(node orbit, coset representative, tail, head)` per edge.
    pub edges: Vec<(usize, usize, usize, usize)>,
    /// `vertex_action[g][v]` is the image of vertex `v` under element `g`.
    pub vertex_action: Vec<Vec<usize>>,
    /// `edge_action[g][e] = (e', s)`: `g` maps edge `e` to `e'` with orientation sign `s`.
    pub edge_action: Vec<Vec<(usize, i8)>>,
}

impl ExpandedGraph {
    /// Connected component label per vertex.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(_, _, t, h) in &self.edges {
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            if a != b {
                parent[a] = b;
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[v] = label[r];
        }
        (count, out)
    }
}

fn coset_table(h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let g = h.parent();
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in h.embedding() {
            coset[g.mul(x, k)] = id;
        }
    }
    (coset, reps)
}

fn same_elements(kernel: &Subgroup, target: &Subgroup) -> bool {
    kernel.order() == target.order()
        && kernel.group().elements().iter().all(|p| target.contains_perm(p))
}

impl GCurve {
    pub fn new(
        group: Arc<PermGroup>,
        components: Vec<ComponentOrbit>,
        nodes: Vec<NodeOrbit>,
    ) -> Result<GCurve> {
        let bad = |s: String| Err(Error::InvalidCurve(s));
        if components.is_empty() {
            return bad("at least one component orbit is required".into());
        }
        let same_parent = |s: &Subgroup| **s.parent() == *group;
        for (i, c) in components.iter().enumerate() {
            if !same_parent(&c.decomposition) || !same_parent(&c.inertia) {
                return bad(format!("component {i}: subgroups must lie in the acting group"));
            }
            if !c.inertia.is_normal_in(&c.decomposition) {
                return bad(format!("component {i}: inertia is not normal in the decomposition group"));
            }
            for (j, m) in c.marked.iter().enumerate() {
                if !same_parent(&m.stabilizer) {
                    return bad(format!("marked {i}.{j}: stabilizer must lie in the acting group"));
                }
                if !c.inertia.is_subgroup_of(&m.stabilizer) || !m.stabilizer.is_subgroup_of(&c.decomposition) {
                    return bad(format!("marked {i}.{j}: need inertia <= stabilizer <= decomposition"));
                }
                check_theta(&m.theta, &m.stabilizer, &c.inertia)
                    .map_err(|e| Error::InvalidCurve(format!("marked {i}.{j}: {e}")))?;
            }
        }

        let mut branch_inertia = Vec::new();
        let mut swap = Vec::new();
        for (k, n) in nodes.iter().enumerate() {
            if !same_parent(&n.stabilizer) || !same_parent(&n.branch_stabilizer) {
                return bad(format!("node {k}: subgroups must lie in the acting group"));
            }
            if !n.branch_stabilizer.is_subgroup_of(&n.stabilizer) {
                return bad(format!("node {k}: branch stabilizer must lie in the node stabilizer"));
            }
            let want = match n.kind {
                NodeKind::S1 => {
                    if n.branch_stabilizer.order() != n.stabilizer.order() {
                        return bad(format!("node {k}: type S1 needs equal node and branch stabilizers"));
                    }
                    swap.push(None);
                    2
                }
                NodeKind::S2 => {
                    if n.branch_stabilizer.order() * 2 != n.stabilizer.order() {
                        return bad(format!("node {k}: type S2 needs a branch stabilizer of index 2"));
                    }
                    let sigma = n
                        .stabilizer
                        .embedding()
                        .iter()
                        .copied()
                        .find(|&x| !n.branch_stabilizer.contains(x))
                        .expect("index two");
                    swap.push(Some(sigma));
                    1
                }
            };
            if n.branches.len() != want {
                return bad(format!("node {k}: expected {want} branch records"));
            }
            let mut inert = Vec::new();
            for (b, br) in n.branches.iter().enumerate() {
                let Some(c) = components.get(br.component) else {
                    return bad(format!("node {k} branch {b}: unknown component {}", br.component));
                };
                if br.translate >= group.order() {
                    return bad(format!("node {k} branch {b}: translate out of range"));
                }
                let dec = c.decomposition.conjugate_by(br.translate)?;
                let ine = c.inertia.conjugate_by(br.translate)?;
                if !n.branch_stabilizer.is_subgroup_of(&dec) || !ine.is_subgroup_of(&n.branch_stabilizer) {
                    return bad(format!(
                        "node {k} branch {b}: need inertia <= branch stabilizer <= decomposition"
                    ));
                }
                check_theta(&br.theta, &n.branch_stabilizer, &ine)
                    .map_err(|e| Error::InvalidCurve(format!("node {k} branch {b}: {e}")))?;
                inert.push(ine);
            }
            branch_inertia.push(inert);
        }

        let mut curve = GCurve {
            group,
            components,
            nodes,
            quotient_genus: Vec::new(),
            branch_inertia,
            swap,
        };
        curve.quotient_genus = (0..curve.components.len())
            .map(|i| curve.riemann_hurwitz(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(curve)
    }

    /// Solve `2g - 2 = |Gbar|(2h - 2) + sum (|Gbar|/e)(e - 1)` for `h`.
    fn riemann_hurwitz(&self, i: usize) -> Result<u32> {
        let c = &self.components[i];
        let gbar = (c.decomposition.order() / c.inertia.order()) as i64;
        let mut ram = 0i64;
        for j in 0..c.marked.len() {
            let e = self.marked_e(i, j) as i64;
            ram += gbar / e * (e - 1);
        }
        for (k, n) in self.nodes.iter().enumerate() {
            for (b, br) in n.branches.iter().enumerate() {
                if br.component == i {
                    let e = self.branch_e(k, b) as i64;
                    ram += gbar / e * (e - 1);
                }
            }
        }
        let lhs = 2 * c.genus as i64 - 2 - ram;
        if lhs % (2 * gbar) != 0 || lhs / (2 * gbar) + 1 < 0 {
            return Err(Error::RiemannHurwitz {
                component: i,
                detail: format!(
                    "2g-2 = {} and ramification {} leave {} which is not 2|Gbar|(h-1) with |Gbar| = {}",
                    2 * c.genus as i64 - 2,
                    ram,
                    lhs,
                    gbar
                ),
            });
        }
        Ok((lhs / (2 * gbar) + 1) as u32)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn components(&self) -> &[ComponentOrbit] {
        &self.components
    }

    pub fn nodes(&self) -> &[NodeOrbit] {
        &self.nodes
    }

    pub fn is_smooth(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Genus of the quotient `C_i / Gbar_i`.
    pub fn quotient_genus(&self, i: usize) -> u32 {
        self.quotient_genus[i]
    }

    /// Ramification index `|G_P / I_i|` of a marked orbit.
    pub fn marked_e(&self, i: usize, j: usize) -> usize {
        let c = &self.components[i];
        c.marked[j].stabilizer.order() / c.inertia.order()
    }

    /// Ramification index of a node branch on the normalisation.
    pub fn branch_e(&self, k: usize, b: usize) -> usize {
        self.nodes[k].branch_stabilizer.order() / self.branch_inertia[k][b].order()
    }

    pub fn branch_inertia(&self, k: usize, b: usize) -> &Subgroup {
        &self.branch_inertia[k][b]
    }

    /// An element of `G_P` exchanging the branches of an S2 node.
    pub fn swap_element(&self, k: usize) -> Option<usize> {
        self.swap[k]
    }

    pub fn component_orbit_size(&self, i: usize) -> usize {
        self.group.order() / self.components[i].decomposition.order()
    }

    pub fn node_orbit_size(&self, k: usize) -> usize {
        self.group.order() / self.nodes[k].stabilizer.order()
    }

    /// Total number of nodes of the curve.
    pub fn num_nodes(&self) -> usize {
        (0..self.nodes.len()).map(|k| self.node_orbit_size(k)).sum()
    }

    /// Number of points of a marked orbit lying on the representative component.
    pub fn marked_points_on(&self, i: usize, j: usize) -> usize {
        let c = &self.components[i];
        c.decomposition.order() / c.marked[j].stabilizer.order()
    }

    /// Number of node preimages on the representative of component orbit `i`.
    pub fn node_preimages_on(&self, i: usize) -> usize {
        let gi = self.components[i].decomposition.order();
        self.nodes
            .iter()
            .flat_map(|n| n.branches.iter().map(move |b| (n, b)))
            .filter(|(_, b)| b.component == i)
            .map(|(n, _)| gi / n.branch_stabilizer.order())
            .sum()
    }

    /// Number of points of `T` on the representative of component orbit `i`.
    pub fn t_points_on(&self, i: usize) -> usize {
        (0..self.components[i].marked.len())
            .filter(|&j| self.components[i].marked[j].in_t)
            .map(|j| self.marked_points_on(i, j))
            .sum()
    }

    /// `[S_P]`: trivial for S1, the sign character of `G_P / G_P~` for S2.
    pub fn sign_character(&self, k: usize) -> RepClass {
        let n = &self.nodes[k];
        let g = n.stabilizer.group();
        match n.kind {
            NodeKind::S1 => RepClass::trivial(g),
            NodeKind::S2 => {
                let br = n.branch_stabilizer.within(&n.stabilizer).expect("branch stabilizer inside");
                let values = (0..g.num_classes())
                    .map(|c| {
                        let v = if br.contains(g.class_rep(c)) { 1 } else { -1 };
                        crate::arith::Cyclotomic::from_int(v, g.exponent())
                    })
                    .collect();
                RepClass::from_values(g, values).expect("class count")
            }
        }
    }

    /// The local smoothability condition for the action at a node orbit.
    pub fn is_smoothable(&self, k: usize) -> bool {
        let n = &self.nodes[k];
        let g = &self.group;
        match n.kind {
            NodeKind::S1 => {
                let prod = n.branches[0].theta.tensor(&n.branches[1].theta).expect("same group");
                prod == RepClass::trivial(n.branch_stabilizer.group())
            }
            NodeKind::S2 => {
                let sigma = self.swap[k].expect("S2 swap element");
                let theta = &n.branches[0].theta;
                let bs = &n.branch_stabilizer;
                let local = |x: usize| bs.local_index(x).expect("element of branch stabilizer");
                let one = crate::arith::Cyclotomic::one(1);
                let pairs_ok = bs.embedding().iter().all(|&t| {
                    let st = g.conjugate(t, sigma);
                    theta.value_at(local(t)) * theta.value_at(local(st)) == one
                });
                pairs_ok && *theta.value_at(local(g.mul(sigma, sigma))) == one
            }
        }
    }

    /// Kernel of the action: the intersection of all conjugates of all inertia groups.
    pub fn action_kernel(&self) -> Result<Subgroup> {
        let mut k = Subgroup::whole(&self.group);
        for c in &self.components {
            k = k.intersect(&c.inertia.core()?)?;
        }
        Ok(k)
    }

    pub fn is_faithful(&self) -> Result<bool> {
        Ok(self.action_kernel()?.order() == 1)
    }

    /// Every component and node of the curve with the induced action of `G`.
    pub fn expanded_graph(&self) -> ExpandedGraph {
        let g = &self.group;
        let n = g.order();
        let comp_cosets: Vec<(Vec<usize>, Vec<usize>)> =
            self.components.iter().map(|c| coset_table(&c.decomposition)).collect();
        let mut offset = Vec::new();
        let mut vertices = Vec::new();
        for (i, (_, reps)) in comp_cosets.iter().enumerate() {
            offset.push(vertices.len());
            vertices.extend(reps.iter().map(|&r| (i, r)));
        }
        let vertex_of = |i: usize, x: usize| offset[i] + comp_cosets[i].0[x];
        let node_cosets: Vec<(Vec<usize>, Vec<usize>)> =
            self.nodes.iter().map(|nd| coset_table(&nd.stabilizer)).collect();
        let mut eoffset = Vec::new();
        let mut edges = Vec::new();
        for (k, nd) in self.nodes.iter().enumerate() {
            eoffset.push(edges.len());
            for &r in &node_cosets[k].1 {
                let b0 = &nd.branches[0];
                let tail = vertex_of(b0.component, g.mul(r, b0.translate));
                let head = match nd.kind {
                    NodeKind::S1 => {
                        let b1 = &nd.branches[1];
                        vertex_of(b1.component, g.mul(r, b1.translate))
                    }
                    NodeKind::S2 => {
                        let s = self.swap[k].expect("swap");
                        vertex_of(b0.component, g.mul(g.mul(r, s), b0.translate))
                    }
                };
                edges.push((k, r, tail, head));
            }
        }
        let vertex_action = (0..n)
            .map(|x| {
                vertices
                    .iter()
                    .map(|&(i, r)| vertex_of(i, g.mul(x, r)))
                    .collect()
            })
            .collect();
        let edge_action = (0..n)
            .map(|x| {
                edges
                    .iter()
                    .map(|&(k, r, _, _)| {
                        let (coset, reps) = &node_cosets[k];
                        let y = g.mul(x, r);
                        let c = coset[y];
                        let s = g.mul(g.inv(reps[c]), y);
                        let sign = if self.nodes[k].branch_stabilizer.contains(s) { 1 } else { -1 };
                        (eoffset[k] + c, sign)
                    })
                    .collect()
            })
            .collect();
        ExpandedGraph { vertices, edges, vertex_action, edge_action }
    }

    pub fn is_connected(&self) -> bool {
        self.expanded_graph().connected_components().0 == 1
    }

    /// `[H^0(C, O_C)]`: the permutation representation on connected components.
    pub fn connected_components_class(&self) -> Result<RepClass> {
        let graph = self.expanded_graph();
        let (count, label) = graph.connected_components();
        let rep_vertex: Vec<usize> = (0..count)
            .map(|cc| label.iter().position(|&l| l == cc).expect("nonempty"))
            .collect();
        let g = &self.group;
        let values = (0..g.num_classes())
            .map(|c| {
                let x = g.class_rep(c);
                let fixed = (0..count)
                    .filter(|&cc| label[graph.vertex_action[x][rep_vertex[cc]]] == cc)
                    .count();
                crate::arith::Cyclotomic::from_int(fixed as i64, g.exponent())
            })
            .collect();
        RepClass::from_values(g, values)
    }

    /// Connected, and every rational component has three special points and
    /// every elliptic component one.
    pub fn check_stable(&self) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::NotStable("curve is not connected".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            let special = self.node_preimages_on(i);
            let need = match c.genus {
                0 => 3,
                1 => 1,
                _ => 0,
            };
            if special < need {
                return Err(Error::NotStable(format!(
                    "component orbit {i} has genus {} and {special} special points",
                    c.genus
                )));
            }
        }
        Ok(())
    }

    /// Orbit-level quotient data.
    pub fn quotient_summary(&self) -> QuotientSummary {
        let comps = self.components.len();
        // Components of D are glued by S1 node orbits; S2 images are smooth.
        let mut parent: Vec<usize> = (0..comps).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for n in &self.nodes {
            let a = find(&mut parent, n.branches[0].component);
            let b = find(&mut parent, n.branches[n.branches.len() - 1].component);
            parent[a] = b;
        }
        let connected = (0..comps).filter(|&x| find(&mut parent, x) == x).count();
        let s1 = self.nodes.iter().filter(|n| n.kind == NodeKind::S1).count();
        let s2 = self.nodes.len() - s1;
        let s3 = (0..self.nodes.len()).filter(|&k| self.is_smoothable(k)).count();
        let mut branch_e = Vec::new();
        let mut t_count = 0;
        for (i, c) in self.components.iter().enumerate() {
            for (j, m) in c.marked.iter().enumerate() {
                let e = self.marked_e(i, j);
                if e > 1 {
                    branch_e.push(e);
                }
                if m.in_t {
                    t_count += 1;
                }
            }
        }
        let genus_sum: i64 = self.quotient_genus.iter().map(|&h| h as i64).sum();
        let chi_o = comps as i64 - genus_sum - s1 as i64;
        QuotientSummary {
            component_genera: self.quotient_genus.clone(),
            connected_components: connected,
            arithmetic_genus: genus_sum + s1 as i64 - comps as i64 + connected as i64,
            chi_structure_sheaf: chi_o,
            nodes: self.nodes.len(),
            nodes_s1: s1,
            nodes_s2: s2,
            nodes_smoothable: s3,
            branch_orders: branch_e,
            t_points: t_count,
        }
    }

    /// Arithmetic genus of `C`.
    pub fn arithmetic_genus(&self) -> i64 {
        let g = self.group.order() as i64;
        let chi: i64 = self
            .components
            .iter()
            .map(|c| (g / c.decomposition.order() as i64) * (1 - c.genus as i64))
            .sum::<i64>()
            - self.num_nodes() as i64;
        1 - chi + (self.expanded_graph().connected_components().0 as i64 - 1)
    }

    /// The normalisation as a smooth curve: node preimages become marked orbits.
    pub fn normalization(&self) -> Result<GCurve> {
        let mut comps = self.components.clone();
        for c in comps.iter_mut() {
            for m in c.marked.iter_mut() {
                m.in_t = false;
            }
        }
        for n in &self.nodes {
            for b in &n.branches {
                let c = &self.components[b.component];
                // Move the branch back to the representative component.
                let h = b.translate;
                let stab = n.branch_stabilizer.conjugate_by(self.group.inv(h))?;
                let map = stab.conjugation_map(&n.branch_stabilizer, self.group.inv(h))?;
                let theta = b.theta.pullback(stab.group(), &map)?;
                debug_assert!(c.inertia.is_subgroup_of(&stab));
                comps[b.component].marked.push(MarkedOrbit { stabilizer: stab, theta, in_t: false });
            }
        }
        GCurve::new(self.group.clone(), comps, Vec::new())
    }
}

fn check_theta(theta: &RepClass, stabilizer: &Subgroup, inertia: &Subgroup) -> Result<()> {
    if **theta.group() != **stabilizer.group() {
        return Err(Error::InvalidCharacter("theta must be a class function on the stabilizer".into()));
    }
    if theta.degree() != Rational::one() || !theta.is_linear_character()? {
        return Err(Error::InvalidCharacter("theta is not a linear character".into()));
    }
    if !same_elements(&theta.kernel()?, inertia) {
        return Err(Error::InvalidCharacter(
            "theta must have kernel exactly the inertia group".into(),
        ));
    }
    Ok(())
}

/// Quotient curve `D = C/G` at orbit level.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub component_genera: Vec<u32>,
    pub connected_components: usize,
    /// Sum over connected pieces of their arithmetic genera.
    pub arithmetic_genus: i64,
    pub chi_structure_sheaf: i64,
    pub nodes: usize,
    pub nodes_s1: usize,
    pub nodes_s2: usize,
    pub nodes_smoothable: usize,
    pub branch_orders: Vec<usize>,
    pub t_points: usize,
}

