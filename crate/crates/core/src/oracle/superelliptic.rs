//! Pluricanonical sections of `y^n = prod (x - x_i)^{a_i}` by divisor counting.
//!
//! Every section of `omega^m` is `h(x) y^-b (dx)^m` for a rational function `h`
//! and `0 <= b < n`; the generator `y -> zeta_n y` acts on it by `zeta_n^-b`.
//! The section is regular exactly when `h` lies in a Riemann-Roch space on
//! the line whose bounds come from local valuations at the branch points and
//! at infinity, so the eigenspace dimensions are counts of polynomials.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::rep::{linear_character, RepClass};

/// `y^n = prod_i (x - x_i)^{a_i}` with every `a_i` and `sum a_i` prime to `n`,
/// so all branch points, including the single point over infinity, are
/// totally ramified.
#[derive(Clone, Debug, Serialize)]
pub struct SuperellipticDatum {
    pub n: u32,
    /// Exponents at the finite branch points.
    pub exponents: Vec<i64>,
    pub m: i64,
}

/// One eigenspace of `H^0(omega^m)`.
#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace {
    /// Power `b` of `y^-b`; the eigencharacter is `zeta_n^-b`.
    pub b: u32,
    /// `h = x^j / prod (x - x_i)^{c_i}` for `0 <= j < dim`.
    pub pole_orders: Vec<i64>,
    pub dim: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperellipticH0 {
    pub genus: i64,
    pub eigenspaces: Vec<Eigenspace>,
    pub total: i64,
}

impl SuperellipticDatum {
    /// Branch exponents `a_i` for `d` simple branch points, as in the classical model.
    pub fn simple(n: u32, d: usize, m: i64) -> SuperellipticDatum {
        SuperellipticDatum { n, exponents: vec![1; d], m }
    }

    fn check(&self) -> Result<()> {
        let n = self.n as i64;
        if n < 2 || self.exponents.is_empty() {
            return Err(Error::UnsupportedShape("need n >= 2 and a finite branch point".into()));
        }
        if self.exponents.iter().any(|a| a.gcd(&n) != 1) {
            return Err(Error::UnsupportedShape("every exponent must be prime to n".into()));
        }
        if self.sum().gcd(&n) != 1 {
            return Err(Error::UnsupportedShape(
                "the exponent sum must be prime to n so that infinity is totally ramified".into(),
            ));
        }
        Ok(())
    }

    fn sum(&self) -> i64 {
        self.exponents.iter().sum()
    }

    /// Genus from the branching: every one of the `k + 1` branch points is total.
    pub fn genus(&self) -> i64 {
        let n = self.n as i64;
        let points = self.exponents.len() as i64 + 1;
        // 2g - 2 = -2n + points (n - 1)
        (-2 * n + points * (n - 1) + 2) / 2
    }

    /// Exponent at infinity, `-sum a_i mod n`.
    pub fn exponent_at_infinity(&self) -> i64 {
        (-self.sum()).rem_euclid(self.n as i64)
    }
}

/// Count sections of `omega^m` eigenspace by eigenspace.
pub fn superelliptic_h0(datum: &SuperellipticDatum) -> Result<SuperellipticH0> {
    datum.check()?;
    let n = datum.n as i64;
    let m = datum.m;
    let big_a = datum.sum();
    let mut eigenspaces = Vec::new();
    for b in 0..n {
        // At x_i: v(x - x_i) = n, v(y) = a_i, v(dx) = n - 1. The section
        // h y^-b dx^m is regular iff n ord(h) - b a_i + m (n - 1) >= 0.
        let pole_orders: Vec<i64> = datum
            .exponents
            .iter()
            .map(|&a| (m * (n - 1) - b * a).div_euclid(n))
            .collect();
        // At infinity: v(x) = -n, v(y) = -A, v(dx) = -n - 1. With
        // h = p / prod (x - x_i)^{c_i}, v(h) = -n (deg p - sum c_i), so
        // deg p <= sum c_i + floor((b A - m (n + 1)) / n).
        let top = pole_orders.iter().sum::<i64>() + (b * big_a - m * (n + 1)).div_euclid(n);
        let dim = (top + 1).max(0);
        eigenspaces.push(Eigenspace { b: b as u32, pole_orders, dim });
    }
    let total = eigenspaces.iter().map(|e| e.dim).sum();
    let genus = datum.genus();
    let expected = match m {
        0 => 1,
        1 => genus,
        _ if genus >= 2 => (2 * m - 1) * (genus - 1),
        _ => total,
    };
    if total != expected {
        return Err(Error::IdentityViolated(format!(
            "superelliptic sections total {total}, expected {expected} for genus {genus} and m = {m}"
        )));
    }
    Ok(SuperellipticH0 { genus, eigenspaces, total })
}

/// The eigenspace counts as a class over `group`, a cyclic group of order `n`
/// whose first generator acts by `y -> zeta_n y`.
pub fn superelliptic_class(group: &Arc<PermGroup>, h0: &SuperellipticH0) -> Result<RepClass> {
    let n = group.order() as u32;
    let gen = group.generators().first().cloned().into_iter().collect::<Vec<_>>();
    let mut acc = RepClass::zero(group);
    for e in &h0.eigenspaces {
        let chi = linear_character(group, &gen, &[-(e.b as i64)], n)?;
        acc = acc.try_add(&chi.scale(&crate::arith::int(e.dim)))?;
    }
    Ok(acc)
}

/// Cotangent exponents of the branch points in the orbit model, finite points
/// first and infinity last: `theta = zeta_n^c` with `c a = 1 mod n`.
pub fn cotangent_exponents(datum: &SuperellipticDatum) -> Result<Vec<i64>> {
    datum.check()?;
    let n = datum.n as i64;
    let inv = |a: i64| -> i64 { (1..n).find(|c| (c * a).rem_euclid(n) == 1).expect("unit mod n") };
    let mut out: Vec<i64> = datum.exponents.iter().map(|&a| inv(a.rem_euclid(n))).collect();
    out.push(inv(datum.exponent_at_infinity()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(d: &SuperellipticDatum) -> Vec<i64> {
        superelliptic_h0(d).unwrap().eigenspaces.iter().map(|e| e.dim).collect()
    }

    #[test]
    fn genus_two_hyperelliptic() {
        let d = SuperellipticDatum::simple(2, 5, 1);
        assert_eq!(d.genus(), 2);
        // dx/y and x dx/y, both in the y^-1 eigenspace.
        assert_eq!(dims(&d), vec![0, 2]);
    }

    #[test]
    fn trigonal_genus_three() {
        let d = SuperellipticDatum::simple(3, 4, 1);
        assert_eq!(d.genus(), 3);
        let v = dims(&d);
        assert_eq!(v[0], 0);
        assert_eq!(v.iter().sum::<i64>(), 3);
    }

    #[test]
    fn p5_model() {
        let d = SuperellipticDatum { n: 5, exponents: vec![1, 1, 1], m: 1 };
        assert_eq!(d.exponent_at_infinity(), 2);
        assert_eq!(cotangent_exponents(&d).unwrap(), vec![1, 1, 1, 3]);
        // b = 1..4 carries zeta^-b = chi_{5-b}: (chi_4, chi_3, chi_2, chi_1) = (0, 1, 1, 2).
        assert_eq!(dims(&d), vec![0, 0, 1, 1, 2]);
    }

    #[test]
    fn rejects_ramified_infinity_mismatch() {
        let d = SuperellipticDatum::simple(3, 3, 1);
        assert!(matches!(superelliptic_h0(&d), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn pluricanonical_totals() {
        for m in 2..=3 {
            let d = SuperellipticDatum::simple(5, 4, m);
            let h = superelliptic_h0(&d).unwrap();
            assert_eq!(h.total, (2 * m - 1) * (h.genus - 1));
        }
    }
}
