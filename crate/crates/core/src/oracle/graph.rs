//! Equivariant homology of a graph with a signed action, by explicit linear algebra.
//!
//! For a nodal curve with rational components, a section of the dualizing
//! sheaf is a choice of residues on oriented edges with zero sum at every
//! vertex, so `H^0(omega_C)` is the cycle space `ker(d: C_1 -> C_0)` with the
//! signed permutation action. Characters are traces on an explicit basis.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Cyclotomic, Rational};
use crate::curve::GCurve;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::rep::RepClass;

/// A finite graph with a group acting on vertices and on oriented edges.
#[derive(Clone, Debug)]
pub struct SignedGraph {
    pub group: Arc<PermGroup>,
    pub vertices: usize,
    /// `(tail, head)` per edge; loops allowed.
    pub edges: Vec<(usize, usize)>,
    /// `vertex_action[g][v]`.
    pub vertex_action: Vec<Vec<usize>>,
    /// `edge_action[g][e] = (e', s)` with `s = -1` when orientation flips.
    pub edge_action: Vec<Vec<(usize, i8)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleSpace {
    pub dim: usize,
    /// Free edge indices; the basis vector for `f` has coordinate 1 at `f`
    /// and 0 at every other free edge.
    pub free_edges: Vec<usize>,
}

impl SignedGraph {
    /// The expanded dual graph of a curve.
    pub fn from_curve(curve: &GCurve) -> SignedGraph {
        let eg = curve.expanded_graph();
        SignedGraph {
            group: curve.group().clone(),
            vertices: eg.vertices.len(),
            edges: eg.edges.iter().map(|&(_, _, t, h)| (t, h)).collect(),
            vertex_action: eg.vertex_action,
            edge_action: eg.edge_action,
        }
    }

    /// Check that the action is by graph automorphisms.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.vertex_action.len() != g.order() || self.edge_action.len() != g.order() {
            return Err(Error::InvalidCurve("action tables must list every group element".into()));
        }
        for x in 0..g.order() {
            for (e, &(t, h)) in self.edges.iter().enumerate() {
                let (f, s) = self.edge_action[x][e];
                let (ft, fh) = self.edges[f];
                let (it, ih) = (self.vertex_action[x][t], self.vertex_action[x][h]);
                let ok = if s > 0 { (it, ih) == (ft, fh) } else { (it, ih) == (fh, ft) };
                if !ok {
                    return Err(Error::InvalidCurve(format!("element {x} does not respect edge {e}")));
                }
            }
            for y in 0..g.order() {
                let xy = g.mul(x, y);
                for e in 0..self.edges.len() {
                    let (f1, s1) = self.edge_action[y][e];
                    let (f2, s2) = self.edge_action[x][f1];
                    if self.edge_action[xy][e] != (f2, s1 * s2) {
                        return Err(Error::InvalidCurve("edge action is not a homomorphism".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the underlying graph.
    pub fn components(&self) -> Vec<usize> {
        let mut label: Vec<usize> = (0..self.vertices).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(t, h) in &self.edges {
                let l = label[t].min(label[h]);
                if label[t] != l || label[h] != l {
                    label[t] = l;
                    label[h] = l;
                    changed = true;
                }
            }
        }
        label
    }

    /// Null space of the boundary map in reduced row echelon form.
    fn boundary_kernel(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let ne = self.edges.len();
        let mut rows: Vec<Vec<Rational>> = (0..self.vertices)
            .map(|v| {
                self.edges
                    .iter()
                    .map(|&(t, h)| {
                        let mut c = 0i64;
                        if h == v {
                            c += 1;
                        }
                        if t == v {
                            c -= 1;
                        }
                        Rational::from_integer(c.into())
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ne {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = Rational::one() / rows[r][col].clone();
            for x in rows[r].iter_mut() {
                *x *= inv.clone();
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for j in 0..ne {
                        let d = rows[r][j].clone() * f.clone();
                        rows[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..ne).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); ne];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -rows[i][f].clone();
                }
                v
            })
            .collect();
        (basis, free)
    }

    pub fn cycle_space(&self) -> CycleSpace {
        let (_, free) = self.boundary_kernel();
        CycleSpace { dim: free.len(), free_edges: free }
    }

    fn class_from_traces(&self, trace: impl Fn(usize) -> Rational) -> Result<RepClass> {
        let g = &self.group;
        let values = (0..g.num_classes())
            .map(|c| Cyclotomic::from_rational(trace(g.class_rep(c)), g.exponent()))
            .collect();
        RepClass::from_values(g, values)
    }

    /// `[H_1]`: the character of the signed action on the cycle space.
    pub fn h1_class(&self) -> Result<RepClass> {
        let (basis, free) = self.boundary_kernel();
        self.class_from_traces(|x| {
            let mut tr = Rational::zero();
            for (k, v) in basis.iter().enumerate() {
                // Coordinate of g.v along basis vector k is its entry at free[k].
                let mut image = Rational::zero();
                for (e, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (f, s) = self.edge_action[x][e];
                    if f == free[k] {
                        image += c.clone() * Rational::from_integer((s as i64).into());
                    }
                }
                tr += image;
            }
            tr
        })
    }

    /// `[H_0]`: the permutation character on connected components.
    pub fn h0_class(&self) -> Result<RepClass> {
        let label = self.components();
        let mut roots: Vec<usize> = label.clone();
        roots.sort_unstable();
        roots.dedup();
        self.class_from_traces(|x| {
            let fixed = roots.iter().filter(|&&r| label[self.vertex_action[x][r]] == r).count();
            Rational::from_integer((fixed as i64).into())
        })
    }

    /// `[C_0]` and `[C_1]` from fixed vertices and signed fixed edges.
    pub fn chain_classes(&self) -> Result<(RepClass, RepClass)> {
        let c0 = self.class_from_traces(|x| {
            let n = (0..self.vertices).filter(|&v| self.vertex_action[x][v] == v).count();
            Rational::from_integer((n as i64).into())
        })?;
        let c1 = self.class_from_traces(|x| {
            let s: i64 = (0..self.edges.len())
                .filter(|&e| self.edge_action[x][e].0 == e)
                .map(|e| self.edge_action[x][e].1 as i64)
                .sum();
            Rational::from_integer(s.into())
        })?;
        Ok((c0, c1))
    }
}

/// `([H_0], [H_1])` with the Euler characteristic identity asserted.
pub fn graph_homology_rep(graph: &SignedGraph) -> Result<(RepClass, RepClass)> {
    let h0 = graph.h0_class()?;
    let h1 = graph.h1_class()?;
    let (c0, c1) = graph.chain_classes()?;
    if h0.try_sub(&h1)? != c0.try_sub(&c1)? {
        return Err(Error::IdentityViolated("[H_0] - [H_1] differs from [C_0] - [C_1]".into()));
    }
    let mut roots = graph.components();
    roots.sort_unstable();
    roots.dedup();
    let dim = graph.cycle_space().dim;
    if dim + graph.vertices != graph.edges.len() + roots.len() {
        return Err(Error::IdentityViolated("rank-nullity fails for the boundary map".into()));
    }
    Ok((h0, h1))
}

/// `[H^0(C, omega_C)]` for a curve whose components are all rational, from
/// residues alone.
pub fn rational_nodal_h0(curve: &GCurve) -> Result<RepClass> {
    if curve.components().iter().any(|c| c.genus != 0) {
        return Err(Error::NotApplicable("every component must be rational".into()));
    }
    let graph = SignedGraph::from_curve(curve);
    graph.validate()?;
    graph.h1_class()
}
