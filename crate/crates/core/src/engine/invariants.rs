//! Invariant pluricanonical sections and equivariant deformations.

use serde::Serialize;

use super::{chi_g, h0_class, invariant_part};
use crate::arith::{int, Rational};
use crate::curve::{GCurve, SheafSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct InvariantDim {
    pub m: i64,
    pub use_t: bool,
    /// `<[1_G], chi_G(omega_C(T)^m)>` from the full engine.
    #[serde(serialize_with = "crate::arith::serialize_rational")]
    pub euler_invariant: Rational,
    /// The same number from quotient data only.
    #[serde(serialize_with = "crate::arith::serialize_rational")]
    pub closed_form: Rational,
    /// `dim H^0(C, omega_C(T)^m)^G` when `H^1` is under control.
    #[serde(serialize_with = "crate::arith::serialize_opt_rational")]
    pub dimension: Option<Rational>,
}

fn require_faithful(curve: &GCurve) -> Result<()> {
    if curve.is_faithful()? {
        Ok(())
    } else {
        Err(Error::NotFaithful(format!(
            "the action has a kernel of order {}",
            curve.action_kernel()?.order()
        )))
    }
}

/// `chi(omega_D(Tbar)^m) + (m - eps_m) #S2bar + sum_Q floor(m (1 - 1/e_Q))`,
/// the sum running over branch orbits outside `Tbar`.
pub fn invariant_closed_form(curve: &GCurve, m: i64, use_t: bool) -> Rational {
    let q = curve.quotient_summary();
    let t_bar = if use_t { q.t_points as i64 } else { 0 };
    let chi_o = q.chi_structure_sheaf;
    let mut total = chi_o + m * (-2 * chi_o + t_bar);
    let eps = m.rem_euclid(2);
    total += (m - eps) * q.nodes_s2 as i64;
    for (i, c) in curve.components().iter().enumerate() {
        for (j, mk) in c.marked.iter().enumerate() {
            if use_t && mk.in_t {
                continue;
            }
            let e = curve.marked_e(i, j) as i64;
            total += (m * (e - 1)).div_euclid(e);
        }
    }
    int(total)
}

/// Invariant part of `chi_G(omega_C(T)^m)`, checked against the closed form.
pub fn invariant_dim(curve: &GCurve, m: i64, use_t: bool) -> Result<InvariantDim> {
    require_faithful(curve)?;
    let spec = SheafSpec::pluri(curve, m, use_t);
    let euler_invariant = invariant_part(&chi_g(curve, &spec)?.chi_g)?;
    let closed_form = invariant_closed_form(curve, m, use_t);
    if euler_invariant != closed_form {
        return Err(Error::IdentityViolated(format!(
            "invariant part {euler_invariant} differs from the closed form {closed_form} at m = {m}"
        )));
    }
    let dimension = match h0_class(curve, &spec) {
        Ok((h0, _)) => Some(invariant_part(&h0)?),
        Err(Error::NotAmple(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(InvariantDim { m, use_t, euler_invariant, closed_form, dimension })
}

#[derive(Clone, Debug, Serialize)]
pub struct DefDim {
    pub value: i64,
    pub quotient_arithmetic_genus: i64,
    pub branch_points: usize,
    pub nodes: usize,
    pub nodes_s2: usize,
    pub nodes_smoothable: usize,
    /// `dim H^0(C, omega_C^2)^G` from the engine, the first term of the count.
    #[serde(serialize_with = "crate::arith::serialize_rational")]
    pub quadratic_invariants: Rational,
}

/// `3(p_a(D) - 1) + #B + 2 #S2bar - #Sbar + #S3bar`.
pub fn def_dim(curve: &GCurve) -> Result<DefDim> {
    curve.check_stable()?;
    require_faithful(curve)?;
    let q = curve.quotient_summary();
    let b = q.branch_orders.len();
    let first = 3 * (q.arithmetic_genus - 1) + b as i64 + 2 * q.nodes_s2 as i64;
    let quad = invariant_dim(curve, 2, false)?;
    let engine = quad.dimension.clone().unwrap_or_else(|| quad.euler_invariant.clone());
    if engine != int(first) {
        return Err(Error::IdentityViolated(format!(
            "invariant quadratic differentials {engine} differ from {first}"
        )));
    }
    Ok(DefDim {
        value: first - q.nodes as i64 + q.nodes_smoothable as i64,
        quotient_arithmetic_genus: q.arithmetic_genus,
        branch_points: b,
        nodes: q.nodes,
        nodes_s2: q.nodes_s2,
        nodes_smoothable: q.nodes_smoothable,
        quadratic_invariants: engine,
    })
}
