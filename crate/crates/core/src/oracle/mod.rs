//! Independent computations used to validate the engine without reusing its formulas.
//!
//! * [`superelliptic`]: sections of pluricanonical bundles on cyclic covers
//!   of the line, counted from local valuations;
//! * [`graph`]: the cycle space of a signed graph, which is `H^0(omega_C)`
//!   for curves with rational components;
//! * [`random`]: seeded generators of valid data for property suites.

pub mod graph;
pub mod random;
pub mod superelliptic;

pub use graph::{graph_homology_rep, rational_nodal_h0, SignedGraph};
pub use superelliptic::{superelliptic_class, superelliptic_h0, SuperellipticDatum, SuperellipticH0};

use serde::Serialize;

use crate::curve::GCurve;
use crate::engine::{dual_graph_chi, h0_omega, topo_chi};
use crate::error::{Error, Result};
use crate::rep::{linear_character, RepClass};

/// `[H^1(C, C)] = [H^0(C, omega_C)]` for a curve with rational components,
/// compared across the engine, the dual graph, the topological formula and
/// the residue oracle.
#[derive(Clone, Debug, Serialize)]
pub struct HodgeReport {
    pub engine: String,
    pub dual_graph: String,
    pub topological: String,
    pub residues: String,
    pub self_dual: bool,
}

pub fn hodge_checks(curve: &GCurve) -> Result<HodgeReport> {
    let engine = h0_omega(curve)?;
    let graph = dual_graph_chi(curve)?.h0_omega_via_graph;
    let topo = topo_chi(curve)?.h1;
    let residues = rational_nodal_h0(curve)?;
    let self_dual = topo == topo.dual();
    if engine != residues || graph != residues || topo != residues || !self_dual {
        return Err(Error::IdentityViolated(format!(
            "H^0(omega) disagrees: engine {engine}, dual graph {graph}, topological {topo}, residues {residues}"
        )));
    }
    Ok(HodgeReport {
        engine: engine.to_string(),
        dual_graph: graph.to_string(),
        topological: topo.to_string(),
        residues: residues.to_string(),
        self_dual,
    })
}

/// The superelliptic model of component orbit `i` of a smooth curve: a
/// cyclic group acting on one component with every ramified point fixed.
/// Branch points are listed in marked order and the last one is placed at
/// infinity.
pub fn superelliptic_datum(curve: &GCurve, i: usize, m: i64) -> Result<SuperellipticDatum> {
    let g = curve.group();
    let n = g.order();
    let c = &curve.components()[i];
    let na = |s: &str| Err(Error::NotApplicable(format!("superelliptic model for component orbit {i}: {s}")));
    let Some(gen) = g.generators().first() else {
        return na("the group is trivial");
    };
    let gi = g.index_of(gen).expect("generator");
    if g.element_order(gi) as usize != n {
        return na("the first generator does not generate a cyclic group");
    }
    if c.decomposition.order() != n || c.inertia.order() != 1 {
        return na("the group must act faithfully on a single component");
    }
    let mut cot = Vec::new();
    for mk in &c.marked {
        match mk.stabilizer.order() {
            1 => continue,
            o if o == n => {}
            _ => return na("every ramified point must be fixed by the whole group"),
        }
        let found = (1..n as i64).find(|&e| {
            linear_character(mk.stabilizer.group(), std::slice::from_ref(gen), &[e], n as u32)
                .map(|chi| chi == mk.theta)
                .unwrap_or(false)
        });
        match found {
            Some(e) => cot.push(e),
            None => return na("cotangent character is not faithful"),
        }
    }
    if cot.len() < 2 {
        return na("need at least two branch points");
    }
    let ni = n as i64;
    let inv = |c: i64| (1..ni).find(|a| (a * c).rem_euclid(ni) == 1).expect("unit");
    let mut a: Vec<i64> = cot.iter().map(|&x| inv(x)).collect();
    let a_inf = a.pop().expect("nonempty");
    let datum = SuperellipticDatum { n: n as u32, exponents: a, m };
    if datum.exponent_at_infinity() != a_inf {
        return Err(Error::IdentityViolated(format!(
            "component orbit {i}: branch monodromies do not multiply to the identity"
        )));
    }
    if datum.genus() != c.genus as i64 {
        return Err(Error::IdentityViolated(format!(
            "component orbit {i}: model genus {} differs from declared genus {}",
            datum.genus(),
            c.genus
        )));
    }
    Ok(datum)
}

/// `[H^0(C~, omega)]` for the normalization, one component orbit at a time:
/// rational components contribute nothing, components with trivial action
/// contribute `g` copies of the permutation class, and cyclic covers of the
/// line go through the superelliptic count.
pub fn normalization_h0(curve: &GCurve) -> Result<RepClass> {
    let normal = curve.normalization()?;
    let g = normal.group();
    let mut acc = RepClass::zero(g);
    for (i, c) in normal.components().iter().enumerate() {
        if c.genus == 0 {
            continue;
        }
        if c.inertia.order() == c.decomposition.order() {
            let class = RepClass::permutation(&c.decomposition).scale(&crate::arith::int(c.genus as i64));
            acc = acc.try_add(&class)?;
            continue;
        }
        let datum = superelliptic_datum(&normal, i, 1)?;
        acc = acc.try_add(&superelliptic_class(g, &superelliptic_h0(&datum)?)?)?;
    }
    Ok(acc)
}

/// `[H^0(C, omega_C)]` from residues: differentials on the normalization plus
/// the cycle space of the dual graph.
pub fn residue_h0(curve: &GCurve) -> Result<RepClass> {
    let graph = SignedGraph::from_curve(curve);
    graph.validate()?;
    normalization_h0(curve)?.try_add(&graph.h1_class()?)
}
