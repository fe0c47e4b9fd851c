//! The dual graph and the topological Euler characteristic.


use super::{chi_g, h0_omega};
use crate::arith::int;
use crate::curve::{GCurve, SheafSpec};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::rep::RepClass;

#[derive(Clone, Debug)]
pub struct DualGraphChi {
    /// `[C_0(Gamma) (x) k]`, the permutation class on components.
    pub c0: RepClass,
    /// `[C_1(Gamma) (x) k]`, the signed permutation class on nodes.
    pub c1: RepClass,
    /// `chi_G(Gamma, k) = [C_0] - [C_1]`.
    pub chi: RepClass,
    /// `[H^0(C~, omega_C~)]` for the normalization.
    pub h0_normalization: RepClass,
    /// `[H^0(C~, omega)] + [H^0(C, k)] - chi_G(Gamma, k)`.
    pub h0_omega_via_graph: RepClass,
}

/// Chain-level classes of the dual graph and the resulting `[H^0(C, omega_C)]`.
pub fn dual_graph_chi(curve: &GCurve) -> Result<DualGraphChi> {
    let g = curve.group();
    let mut c0 = RepClass::zero(g);
    for c in curve.components() {
        c0 = c0.try_add(&RepClass::permutation(&c.decomposition))?;
    }
    let mut c1 = RepClass::zero(g);
    for (k, n) in curve.nodes().iter().enumerate() {
        c1 = c1.try_add(&curve.sign_character(k).induce(&n.stabilizer)?)?;
    }
    let chi = c0.try_sub(&c1)?;
    let normal = curve.normalization()?;
    let h0_normalization = chi_g(&normal, &SheafSpec::omega(&normal))?.chi_g.try_add(&c0)?;
    let h0_omega_via_graph = h0_normalization
        .try_add(&curve.connected_components_class()?)?
        .try_sub(&chi)?;
    Ok(DualGraphChi { c0, c1, chi, h0_normalization, h0_omega_via_graph })
}

#[derive(Clone, Debug)]
pub struct TopoChi {
    /// `sum_i (-1)^i [H^i(C, Q)]`.
    pub chi: RepClass,
    /// `chi_top(C)` from the orbit data, `sum (2 - 2 g~) - #S`.
    pub euler: i64,
    /// `[H^1(C, Q)] = [H^0] + [H^2] - chi`.
    pub h1: RepClass,
}

/// `sum_j chi(Y_j) Ind_{H_j}^G [1]` over user supplied strata.
pub fn stratum_sum(strata: &[(Subgroup, i64)]) -> Result<RepClass> {
    let Some((first, _)) = strata.first() else {
        return Err(Error::InvalidCurve("stratum_sum needs at least one stratum".into()));
    };
    let mut acc = RepClass::zero(first.parent());
    for (h, chi) in strata {
        acc = acc.try_add(&RepClass::permutation(h).scale(&int(*chi)))?;
    }
    Ok(acc)
}

/// Topological Euler characteristic class of `C` over the complex numbers.
///
/// Strata: the open part of each quotient component with stabilizer `I_i`,
/// every orbit of points with stabilizer strictly above the inertia, and
/// every node orbit.
pub fn topo_chi(curve: &GCurve) -> Result<TopoChi> {
    let mut strata = Vec::new();
    let mut euler = 0i64;
    for (i, c) in curve.components().iter().enumerate() {
        let mut punctures = 0i64;
        for (j, m) in c.marked.iter().enumerate() {
            if curve.marked_e(i, j) > 1 {
                punctures += 1;
                strata.push((m.stabilizer.clone(), 1));
            }
        }
        punctures += curve
            .nodes()
            .iter()
            .flat_map(|n| n.branches.iter())
            .filter(|b| b.component == i)
            .count() as i64;
        let open = 2 - 2 * curve.quotient_genus(i) as i64 - punctures;
        strata.push((c.inertia.clone(), open));
        euler += curve.component_orbit_size(i) as i64 * (2 - 2 * c.genus as i64);
    }
    for n in curve.nodes() {
        strata.push((n.stabilizer.clone(), 1));
    }
    euler -= curve.num_nodes() as i64;
    let chi = stratum_sum(&strata)?;
    if chi.degree() != int(euler) {
        return Err(Error::IdentityViolated(format!(
            "topological class has degree {} but chi_top = {euler}",
            chi.degree()
        )));
    }
    let g = curve.group();
    let mut h2 = RepClass::zero(g);
    for c in curve.components() {
        h2 = h2.try_add(&RepClass::permutation(&c.decomposition))?;
    }
    let h1 = curve.connected_components_class()?.try_add(&h2)?.try_sub(&chi)?;
    Ok(TopoChi { chi, euler, h1 })
}

/// `[H^1(C, C)]` and `[H^0(C, omega_C)]` for a curve with rational components,
/// which must agree.
pub fn hodge_check(curve: &GCurve) -> Result<(RepClass, RepClass)> {
    if curve.components().iter().any(|c| c.genus != 0) {
        return Err(Error::NotApplicable("some component is not rational".into()));
    }
    Ok((topo_chi(curve)?.h1, h0_omega(curve)?))
}
