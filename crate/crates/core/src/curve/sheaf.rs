//! Locally free sheaves on a [`GCurve`], reduced to the fiber and Euler
//! characteristic data the formulas consume.

use num_traits::{ToPrimitive, Zero};

use super::GCurve;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::rep::RepClass;

/// An isotypic piece `V (x) E_V` of a sheaf restricted to a normalised
/// component, where `V` is an irreducible of the inertia group and `E_V` a
/// bundle with trivial inertia action.
#[derive(Clone, Debug)]
pub struct Piece {
    /// Index into the inertia group's character table.
    pub irrep: usize,
    pub rank: u32,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct GenericSheaf {
    pub rank: u32,
    /// One list per component orbit.
    pub pieces: Vec<Vec<Piece>>,
    /// `[E|_P]` over `G_P`, one per marked orbit of each component orbit.
    pub marked_fibers: Vec<Vec<RepClass>>,
    /// `[E|_P]` over `G_P`, one per node orbit.
    pub node_fibers: Vec<RepClass>,
    /// Optional replacement for `[(E (x) S)|_P]`; the default is `[E|_P] (x) [S|_P]`.
    pub node_e_tensor_s: Vec<Option<RepClass>>,
    /// Declare `H^1(C, E) = 0`, which the data alone cannot establish.
    pub assume_ample: bool,
}

#[derive(Clone, Debug)]
pub enum SheafSpec {
    /// `omega_C(T)^m (x) O(sum_j q_j P_j)` where `T` is the union of the
    /// marked orbits flagged `in_t` (when `use_t` holds) and `q_j` twists by
    /// whole marked orbits.
    Pluri { m: i64, use_t: bool, twists: Vec<Vec<i64>> },
    Generic(GenericSheaf),
}

impl SheafSpec {
    pub fn pluri(curve: &GCurve, m: i64, use_t: bool) -> SheafSpec {
        let twists = curve.components().iter().map(|c| vec![0; c.marked.len()]).collect();
        SheafSpec::Pluri { m, use_t, twists }
    }

    pub fn structure(curve: &GCurve) -> SheafSpec {
        Self::pluri(curve, 0, false)
    }

    pub fn omega(curve: &GCurve) -> SheafSpec {
        Self::pluri(curve, 1, false)
    }

    pub fn rank(&self) -> u32 {
        match self {
            SheafSpec::Pluri { .. } => 1,
            SheafSpec::Generic(g) => g.rank,
        }
    }

    /// Validate against the curve and compute the per-orbit data.
    pub fn resolve(&self, curve: &GCurve) -> Result<ResolvedSheaf> {
        match self {
            SheafSpec::Pluri { m, use_t, twists } => resolve_pluri(curve, *m, *use_t, twists),
            SheafSpec::Generic(g) => resolve_generic(curve, g),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedComponent {
    /// `chi_{I_i}(nu^* E|_{C_i})` over the inertia group.
    pub inertia_chi: RepClass,
    pub euler: i64,
    pub degree: i64,
    /// `deg (E (x) omega_C^-1)|_{C_i}` for rank one sheaves, `deg E - r deg omega_C` in general.
    pub ample_degree: i64,
}

#[derive(Clone, Debug)]
pub struct NodeFiber {
    pub fiber: RepClass,
    pub e_tensor_s: RepClass,
}

#[derive(Clone, Debug)]
pub struct ResolvedSheaf {
    pub rank: u32,
    pub components: Vec<ResolvedComponent>,
    pub marked: Vec<Vec<RepClass>>,
    pub nodes: Vec<NodeFiber>,
    /// `chi(C, E)`.
    pub euler: i64,
    /// `deg E` on `C`.
    pub degree: i64,
    /// Inertia acts trivially on every component.
    pub inertia_trivial_action: bool,
    pub assume_ample: bool,
    /// `Some(m)` for untwisted `omega_C(T)^m`.
    pub pluri_power: Option<(i64, bool)>,
}

impl ResolvedSheaf {
    /// Whether `A = E (x) omega_C^-1` has positive degree on every component.
    pub fn ample_by_degree(&self) -> bool {
        self.components.iter().all(|c| c.ample_degree > 0)
    }
}

fn omega_degree(curve: &GCurve, i: usize) -> i64 {
    2 * curve.components()[i].genus as i64 - 2 + curve.node_preimages_on(i) as i64
}

fn finish(
    curve: &GCurve,
    rank: u32,
    components: Vec<ResolvedComponent>,
    marked: Vec<Vec<RepClass>>,
    nodes: Vec<NodeFiber>,
    flags: (bool, bool, Option<(i64, bool)>),
) -> ResolvedSheaf {
    let weighted = |f: &dyn Fn(&ResolvedComponent) -> i64| -> i64 {
        components
            .iter()
            .enumerate()
            .map(|(i, c)| curve.component_orbit_size(i) as i64 * f(c))
            .sum()
    };
    let node_dim: i64 = nodes
        .iter()
        .enumerate()
        .map(|(k, n)| curve.node_orbit_size(k) as i64 * n.e_tensor_s.degree().to_integer().to_i64().unwrap_or(0))
        .sum();
    let euler = weighted(&|c| c.euler) - node_dim;
    let degree = weighted(&|c| c.degree);
    ResolvedSheaf {
        rank,
        euler,
        degree,
        components,
        marked,
        nodes,
        inertia_trivial_action: flags.0,
        assume_ample: flags.1,
        pluri_power: flags.2,
    }
}

fn resolve_pluri(curve: &GCurve, m: i64, use_t: bool, twists: &[Vec<i64>]) -> Result<ResolvedSheaf> {
    let comps = curve.components();
    if twists.len() != comps.len() || twists.iter().zip(comps).any(|(t, c)| t.len() != c.marked.len()) {
        return Err(Error::InvalidSheaf("twists must have one entry per marked orbit".into()));
    }
    let mut resolved = Vec::new();
    let mut marked = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let t_points = if use_t { curve.t_points_on(i) as i64 } else { 0 };
        let twist_deg: i64 = (0..c.marked.len())
            .map(|j| twists[i][j] * curve.marked_points_on(i, j) as i64)
            .sum();
        let omega = omega_degree(curve, i);
        let degree = m * (omega + t_points) + twist_deg;
        let euler = 1 - c.genus as i64 + degree;
        resolved.push(ResolvedComponent {
            inertia_chi: RepClass::trivial(c.inertia.group()).scale(&int(euler)),
            euler,
            degree,
            ample_degree: degree - omega,
        });
        let fibers = c
            .marked
            .iter()
            .enumerate()
            .map(|(j, mk)| {
                let q = twists[i][j];
                if use_t && mk.in_t {
                    mk.theta.power(-q)
                } else {
                    mk.theta.power(m - q)
                }
            })
            .collect();
        marked.push(fibers);
    }
    let nodes = (0..curve.nodes().len())
        .map(|k| {
            let s = curve.sign_character(k);
            NodeFiber { fiber: s.power(m.rem_euclid(2)), e_tensor_s: s.power((m + 1).rem_euclid(2)) }
        })
        .collect();
    let untwisted = twists.iter().flatten().all(|&q| q == 0);
    let power = untwisted.then_some((m, use_t));
    Ok(finish(curve, 1, resolved, marked, nodes, (true, false, power)))
}

fn resolve_generic(curve: &GCurve, spec: &GenericSheaf) -> Result<ResolvedSheaf> {
    let bad = |s: String| Err(Error::InvalidSheaf(s));
    let comps = curve.components();
    let r = spec.rank;
    if r == 0 {
        return bad("rank must be positive".into());
    }
    if spec.pieces.len() != comps.len() || spec.marked_fibers.len() != comps.len() {
        return bad("need piece and marked fiber lists for every component orbit".into());
    }
    if spec.node_fibers.len() != curve.nodes().len() || spec.node_e_tensor_s.len() != curve.nodes().len() {
        return bad("need a fiber for every node orbit".into());
    }
    let mut resolved = Vec::new();
    let mut isotypic = Vec::new();
    let mut trivial_action = true;
    for (i, c) in comps.iter().enumerate() {
        let ig = c.inertia.group();
        let table = ig.character_table()?;
        let mut chi = RepClass::zero(ig);
        let mut iso = RepClass::zero(ig);
        let (mut euler, mut degree, mut total) = (0i64, 0i64, 0u32);
        for p in &spec.pieces[i] {
            if p.irrep >= table.len() {
                return bad(format!("component {i}: inertia has no irreducible {}", p.irrep));
            }
            if p.irrep != 0 {
                trivial_action = false;
            }
            let v = RepClass::irreducible(ig, p.irrep)?;
            let dim = table.degree(p.irrep) as i64;
            let e = p.rank as i64 * (1 - c.genus as i64) + p.degree;
            chi = chi.try_add(&v.scale(&int(e)))?;
            iso = iso.try_add(&v.scale(&int(p.rank as i64)))?;
            euler += dim * e;
            degree += dim * p.degree;
            total += dim as u32 * p.rank;
        }
        if total != r {
            return bad(format!("component {i}: pieces have total rank {total}, expected {r}"));
        }
        resolved.push(ResolvedComponent {
            inertia_chi: chi,
            euler,
            degree,
            ample_degree: degree - r as i64 * omega_degree(curve, i),
        });
        isotypic.push(iso);
    }
    let rr = Rational::from_integer(r.into());
    let check_fiber = |what: String, fiber: &RepClass, stab: &crate::group::Subgroup| -> Result<()> {
        if **fiber.group() != **stab.group() {
            return Err(Error::InvalidSheaf(format!("{what}: fiber must be a class over the stabilizer")));
        }
        if fiber.degree() != rr {
            return Err(Error::InvalidSheaf(format!("{what}: fiber degree {} differs from rank {r}", fiber.degree())));
        }
        if !fiber.is_effective()? || !fiber.is_integral()? {
            return Err(Error::InvalidSheaf(format!("{what}: fiber is not a genuine representation")));
        }
        Ok(())
    };
    let mut marked = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        if spec.marked_fibers[i].len() != c.marked.len() {
            return bad(format!("component {i}: need one fiber per marked orbit"));
        }
        for (j, (f, mk)) in spec.marked_fibers[i].iter().zip(&c.marked).enumerate() {
            check_fiber(format!("marked {i}.{j}"), f, &mk.stabilizer)?;
            let inside = c.inertia.within(&mk.stabilizer)?;
            if f.restrict(&inside)? != isotypic[i] {
                return bad(format!("marked {i}.{j}: fiber disagrees with the inertia pieces"));
            }
        }
        marked.push(spec.marked_fibers[i].clone());
    }
    let mut nodes = Vec::new();
    for (k, n) in curve.nodes().iter().enumerate() {
        let f = &spec.node_fibers[k];
        check_fiber(format!("node {k}"), f, &n.stabilizer)?;
        let branch = f.restrict(&n.branch_stabilizer.within(&n.stabilizer)?)?;
        for (b, br) in n.branches.iter().enumerate() {
            let inert = curve.branch_inertia(k, b);
            let map = inert.conjugation_map(&comps[br.component].inertia, br.translate)?;
            let expected = isotypic[br.component].pullback(inert.group(), &map)?;
            if branch.restrict(&inert.within(&n.branch_stabilizer)?)? != expected {
                return bad(format!("node {k} branch {b}: fiber disagrees with the inertia pieces"));
            }
        }
        let ets = match &spec.node_e_tensor_s[k] {
            Some(x) => {
                if **x.group() != **n.stabilizer.group() {
                    return bad(format!("node {k}: (E (x) S) class must live over the node stabilizer"));
                }
                if x.degree().is_zero() || x.degree().to_i64().is_none() {
                    return bad(format!("node {k}: (E (x) S) class must have positive integral degree"));
                }
                x.clone()
            }
            None => f.tensor(&curve.sign_character(k))?,
        };
        nodes.push(NodeFiber { fiber: f.clone(), e_tensor_s: ets });
    }
    Ok(finish(curve, r, resolved, marked, nodes, (trivial_action, spec.assume_ample, None)))
}
