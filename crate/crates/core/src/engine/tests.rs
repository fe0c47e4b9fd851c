use super::*;
use crate::curve::{theta_from_exponents, trivial_theta, Branch, ComponentOrbit, MarkedOrbit, NodeOrbit};
use crate::group::{cyclic, Subgroup};
use crate::rep::linear_character;

fn chi_r(g: &std::sync::Arc<crate::PermGroup>, r: i64) -> RepClass {
    linear_character(g, g.generators(), &[r], g.order() as u32).unwrap()
}

fn fixed_point(g: &std::sync::Arc<crate::PermGroup>, exp: i64) -> MarkedOrbit {
    let whole = Subgroup::whole(g);
    MarkedOrbit { theta: theta_from_exponents(&whole, 1, &[exp]).unwrap(), stabilizer: whole, in_t: false }
}

fn hyperelliptic(genus: u32) -> GCurve {
    let g = cyclic(2).unwrap();
    let marked = (0..2 * genus + 2).map(|_| fixed_point(&g, 1)).collect();
    let comp = ComponentOrbit {
        genus,
        decomposition: Subgroup::whole(&g),
        inertia: Subgroup::trivial(&g),
        marked,
    };
    GCurve::new(g, vec![comp], vec![]).unwrap()
}

fn p5(nodal: bool) -> GCurve {
    let g = cyclic(5).unwrap();
    let whole = Subgroup::whole(&g);
    let exps = [1, 1, 1, 3];
    let comp = |marked| ComponentOrbit {
        genus: 4,
        decomposition: whole.clone(),
        inertia: Subgroup::trivial(&g),
        marked,
    };
    if !nodal {
        let marked = exps.iter().map(|&e| fixed_point(&g, e)).collect();
        return GCurve::new(g.clone(), vec![comp(marked)], vec![]).unwrap();
    }
    let branch = |e| Branch { component: 0, translate: 0, theta: theta_from_exponents(&whole, 1, &[e]).unwrap() };
    let node = |a, b| NodeOrbit {
        kind: NodeKind::S1,
        stabilizer: whole.clone(),
        branch_stabilizer: whole.clone(),
        branches: vec![branch(a), branch(b)],
    };
    GCurve::new(g.clone(), vec![comp(vec![])], vec![node(exps[0], exps[1]), node(exps[2], exps[3])]).unwrap()
}

fn twist(curve: &GCurve, q: i64) -> SheafSpec {
    let mut twists: Vec<Vec<i64>> = curve.components().iter().map(|c| vec![0; c.marked.len()]).collect();
    twists[0][0] = q;
    SheafSpec::Pluri { m: 1, use_t: false, twists }
}

#[test]
fn weierstrass_point_gamma() {
    let g = cyclic(2).unwrap();
    let whole = Subgroup::whole(&g);
    let tau = chi_r(&g, 1);
    let gamma = gamma_point(&whole, 1, &tau, &tau).unwrap();
    let expect = tau.scale(&rat(1, 4)).try_sub(&RepClass::trivial(&g).scale(&rat(1, 4))).unwrap();
    assert_eq!(gamma, expect);
}

#[test]
fn hyperelliptic_closed_form() {
    for genus in 2..=4u32 {
        let curve = hyperelliptic(genus);
        let g = curve.group().clone();
        let tau = chi_r(&g, 1);
        for q in 0..=6i64 {
            let chi = chi_g(&curve, &twist(&curve, q)).unwrap().chi_g;
            let eps = if q % 2 == 0 { 1 } else { 0 };
            let expect = RepClass::regular(&g)
                .scale(&int((q - 1).div_euclid(2)))
                .try_add(&tau.scale(&int(genus as i64 + eps)))
                .unwrap();
            assert_eq!(chi, expect, "genus {genus}, q {q}");
        }
    }
}

#[test]
fn p5_eigenspaces() {
    let curve = p5(false);
    let g = curve.group().clone();
    let h0 = h0_omega(&curve).unwrap();
    let mults: Vec<Rational> = (0..5).map(|r| h0.inner(&chi_r(&g, r)).unwrap()).collect();
    assert_eq!(mults, vec![int(0), int(2), int(1), int(1), int(0)]);
}

#[test]
fn p5_nodal_adds_two_invariants() {
    let smooth = h0_omega(&p5(false)).unwrap();
    let curve = p5(true);
    let g = curve.group().clone();
    let nodal = h0_omega(&curve).unwrap();
    assert_eq!(nodal, smooth.try_add(&RepClass::trivial(&g).scale(&int(2))).unwrap());
    assert_eq!(invariant_dim(&curve, 1, false).unwrap().dimension, Some(int(2)));
    assert_eq!(invariant_dim(&curve, 2, false).unwrap().dimension, Some(int(3)));
    let def = def_dim(&curve).unwrap();
    assert_eq!(def.value, 1);
    assert_eq!(def.quotient_arithmetic_genus, 2);
}

#[test]
fn p5_nodal_topology() {
    let curve = p5(true);
    let g = curve.group().clone();
    let topo = topo_chi(&curve).unwrap();
    let expect = RepClass::regular(&g)
        .scale(&int(-2))
        .try_add(&RepClass::trivial(&g).scale(&int(2)))
        .unwrap();
    assert_eq!(topo.chi, expect);
    assert_eq!(topo.euler, -8);
    let graph = dual_graph_chi(&curve).unwrap();
    assert_eq!(graph.chi, RepClass::trivial(&g).scale(&int(-1)));
    assert_eq!(graph.h0_omega_via_graph, h0_omega(&curve).unwrap());
}

#[test]
fn hyperelliptic_topology() {
    let curve = hyperelliptic(2);
    let g = curve.group().clone();
    let topo = topo_chi(&curve).unwrap();
    let expect = RepClass::trivial(&g)
        .scale(&int(2))
        .try_sub(&chi_r(&g, 1).scale(&int(4)))
        .unwrap();
    assert_eq!(topo.chi, expect);
    assert_eq!(topo.h1, chi_r(&g, 1).scale(&int(4)));
}

#[test]
fn hyperelliptic_cubic_invariants() {
    let curve = hyperelliptic(2);
    let inv = invariant_dim(&curve, 3, false).unwrap();
    assert_eq!(inv.closed_form, int(1));
    assert_eq!(inv.dimension, Some(int(1)));
}

#[test]
fn riemann_roch_and_degree_zero() {
    for curve in [hyperelliptic(3), p5(false), p5(true)] {
        for m in -2..=3 {
            let spec = SheafSpec::pluri(&curve, m, false);
            let report = deg_g(&curve, &spec).unwrap();
            assert_eq!(report.chi_e.degree(), int(chi_g(&curve, &spec).unwrap().euler));
        }
    }
}

#[test]
fn free_orbit_node_is_zero() {
    let g = cyclic(3).unwrap();
    let comp = ComponentOrbit {
        genus: 1,
        decomposition: Subgroup::trivial(&g),
        inertia: Subgroup::trivial(&g),
        marked: vec![],
    };
    let t = Subgroup::trivial(&g);
    let node = NodeOrbit {
        kind: NodeKind::S1,
        stabilizer: t.clone(),
        branch_stabilizer: t.clone(),
        branches: vec![
            Branch { component: 0, translate: 0, theta: trivial_theta(&t) },
            Branch { component: 0, translate: 1, theta: trivial_theta(&t) },
        ],
    };
    let curve = GCurve::new(g.clone(), vec![comp], vec![node]).unwrap();
    let report = chi_g(&curve, &SheafSpec::pluri(&curve, 2, false)).unwrap();
    assert!(report.breakdown.iter().all(|(_, gamma)| gamma.is_zero()));
    assert_eq!(report.nodes[0].paths_agree, Some(true));
    assert_eq!(h0_omega(&curve).unwrap(), RepClass::regular(&g).try_add(&RepClass::trivial(&g)).unwrap());
}
