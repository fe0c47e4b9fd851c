//! Lower bounds for `chi_G(omega_C (x) A)`, certified by effectivity checks.

use num_traits::Signed;
use serde::Serialize;

use super::{chi_g_resolved, h0_omega};
use crate::arith::{int, rat, Rational};
use crate::curve::{GCurve, SheafSpec};
use crate::error::Result;
use crate::rep::RepClass;

/// One lower bound `chi_G(E) >= b`, evaluated rather than assumed.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub name: String,
    pub applicable: bool,
    /// Why the bound does not apply.
    pub reason: Option<String>,
    /// `a` for bounds of the form `a [k[G]]`.
    #[serde(serialize_with = "crate::arith::serialize_opt_rational")]
    pub coefficient: Option<Rational>,
    pub holds: Option<bool>,
    /// Irreducibles (table indices) where the difference is negative, or
    /// with multiplicity zero for the regular-copy bound on `H^0(omega)`.
    pub witness: Vec<usize>,
}

impl Certificate {
    fn skipped(name: String, reason: &str) -> Certificate {
        Certificate {
            name,
            applicable: false,
            reason: Some(reason.into()),
            coefficient: None,
            holds: None,
            witness: Vec::new(),
        }
    }

    fn evaluated(name: String, coefficient: Option<Rational>, class: &RepClass, bound: &RepClass) -> Result<Certificate> {
        let diff = class.try_sub(bound)?.multiplicities()?;
        let witness: Vec<usize> = diff.iter().enumerate().filter(|(_, m)| m.is_negative()).map(|(i, _)| i).collect();
        Ok(Certificate {
            name,
            applicable: true,
            reason: None,
            coefficient,
            holds: Some(witness.is_empty()),
            witness,
        })
    }
}

/// Evaluate every bound that applies to `(C, E)`.
pub fn bound_certificates(curve: &GCurve, spec: &SheafSpec) -> Result<Vec<Certificate>> {
    let g = curve.group();
    let sheaf = spec.resolve(curve)?;
    let chi = chi_g_resolved(curve, &sheaf)?.chi_g;
    let r = sheaf.rank as i64;
    let inertia_trivial = curve.components().iter().all(|c| c.inertia.order() == 1);
    let ample = (sheaf.rank == 1 && sheaf.ample_by_degree()) || sheaf.assume_ample;
    let smooth_connected = curve.is_smooth() && curve.is_connected();
    let regular = RepClass::regular(g);
    let mut out = Vec::new();

    for (k, n) in curve.nodes().iter().enumerate() {
        let name = format!("node_fiber[{k}]");
        if !inertia_trivial {
            out.push(Certificate::skipped(name, "some component has nontrivial inertia"));
        } else if !ample {
            out.push(Certificate::skipped(name, "E (x) omega^-1 is not known to be ample"));
        } else {
            let bound = sheaf.nodes[k].fiber.induce(&n.stabilizer)?;
            out.push(Certificate::evaluated(name, None, &chi, &bound)?);
        }
    }

    for (i, c) in curve.components().iter().enumerate() {
        let name = format!("component[{i}]");
        let regular_name = format!("regular_copy[{i}]");
        let chi_omega_d = curve.quotient_genus(i) as i64 - 1;
        let deg_a = sheaf.components[i].ample_degree;
        let gi = c.decomposition.order() as i64;
        if !inertia_trivial {
            out.push(Certificate::skipped(name, "some component has nontrivial inertia"));
            out.push(Certificate::skipped(regular_name, "some component has nontrivial inertia"));
            continue;
        }
        if !(ample || smooth_connected) {
            out.push(Certificate::skipped(name, "E (x) omega^-1 is not known to be ample"));
            out.push(Certificate::skipped(regular_name, "E (x) omega^-1 is not known to be ample"));
            continue;
        }
        let a = int(r * chi_omega_d) + rat(deg_a, gi);
        out.push(Certificate::evaluated(name, Some(a.clone()), &chi, &regular.scale(&a))?);
        if deg_a >= gi * (1 - r * chi_omega_d) {
            out.push(Certificate::evaluated(regular_name, Some(int(1)), &chi, &regular)?);
        } else {
            out.push(Certificate::skipped(regular_name, "deg A on the component is below the threshold"));
        }
    }

    let q = curve.quotient_summary();
    let name = "h0_omega_contains_regular".to_string();
    if q.arithmetic_genus < 2 {
        out.push(Certificate::skipped(name, "the quotient has arithmetic genus below 2"));
    } else {
        let h0 = h0_omega(curve)?;
        let mut cert = Certificate::evaluated(name, Some(int(1)), &h0, &regular)?;
        cert.witness = h0
            .multiplicities()?
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_positive())
            .map(|(i, _)| i)
            .collect();
        out.push(cert);
    }
    Ok(out)
}
