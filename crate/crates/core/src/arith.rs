//! Exact rationals and elements of cyclotomic fields.
//!
//! An element of `Q(zeta_N)` is stored in the power basis `1, z, ..., z^(phi(N)-1)`
//! modulo the cyclotomic polynomial `Phi_N`. Every constructor and operation
//! reduces its result, so equal elements of the same conductor have equal
//! coefficient vectors. Elements of different conductors are compared after
//! lifting both to the lcm conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Largest conductor the field arithmetic accepts.
pub const MAX_CONDUCTOR: u32 = 512;

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Scenario(format!("cannot parse rational {s:?}")))
}

/// Serialize a rational as the string `"p/q"` (or `"p"`).
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Serialize an optional rational as a string or `null`.
pub fn serialize_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// Convert a rational known to be integral.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn lcm(a: u32, b: u32) -> u64 {
    (a as u64).lcm(&(b as u64))
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Phi_n`, lowest degree first.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` and memoised, since the
/// polynomial is a pure function of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let out = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, out.clone());
    out
}

fn exact_div_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in div.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division by Phi_d was not exact");
    q
}

/// Reduce a polynomial in `z` (index = exponent) into canonical form for `Q(zeta_n)`.
fn reduce(n: u32, poly: Vec<(usize, Rational)>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut a = vec![Rational::zero(); n as usize];
    for (k, v) in poly {
        if !v.is_zero() {
            a[k % n as usize] += v;
        }
    }
    for k in (deg..n as usize).rev() {
        let c = std::mem::take(&mut a[k]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi.iter().take(deg).enumerate() {
            if pj != 0 {
                a[k - deg + j] -= &c * BigInt::from(pj);
            }
        }
    }
    a.truncate(deg);
    a
}

/// An element of `Q(zeta_N)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<Rational>,
}

impl Cyclotomic {
    fn check_conductor(n: u64) -> Result<u32> {
        if n == 0 || n > MAX_CONDUCTOR as u64 {
            return Err(Error::ConductorTooLarge(n, MAX_CONDUCTOR));
        }
        Ok(n as u32)
    }

    pub fn zero(n: u32) -> Self {
        Self::from_rational(Rational::zero(), n)
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(Rational::one(), n)
    }

    /// A rational embedded in `Q(zeta_n)`.
    pub fn from_rational(q: Rational, n: u32) -> Self {
        let n = Self::check_conductor(n as u64).expect("conductor out of range");
        let mut c = vec![Rational::zero(); totient(n) as usize];
        c[0] = q;
        Cyclotomic { n, c }
    }

    pub fn from_int(k: i64, n: u32) -> Self {
        Self::from_rational(int(k), n)
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self> {
        let n = Self::check_conductor(n as u64)?;
        let e = k.rem_euclid(n as i64) as usize;
        Ok(Cyclotomic {
            n,
            c: reduce(n, vec![(e, Rational::one())]),
        })
    }

    /// Build from arbitrary power-basis coefficients, reducing them.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let n = Self::check_conductor(n as u64)?;
        Ok(Cyclotomic {
            n,
            c: reduce(n, coeffs.into_iter().enumerate().collect()),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Canonical coefficients in the power basis.
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.c[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Embed into `Q(zeta_m)`; requires `n | m`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        let m = Self::check_conductor(m as u64)?;
        if m % self.n != 0 {
            return Err(Error::InvalidCharacter(format!(
                "cannot lift conductor {} to {}",
                self.n, m
            )));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.c[0].clone(), m));
        }
        let step = (m / self.n) as usize;
        let poly = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k * step, v.clone()))
            .collect();
        Ok(Cyclotomic { n: m, c: reduce(m, poly) })
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.n == other.n {
            return Ok((self.clone(), other.clone()));
        }
        let m = Self::check_conductor(lcm(self.n, other.n))?;
        Ok((self.lift(m)?, other.lift(m)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n == other.n {
            let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
            return Ok(Cyclotomic { n: self.n, c });
        }
        let (a, b) = self.common(other)?;
        a.try_add(&b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            let (a, b) = self.common(other)?;
            return a.try_mul(&b);
        }
        if other.is_rational() {
            return Ok(self.scale(&other.c[0]));
        }
        if self.is_rational() {
            return Ok(other.scale(&self.c[0]));
        }
        let mut prod = vec![Rational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Cyclotomic {
            n: self.n,
            c: reduce(self.n, prod.into_iter().enumerate().collect()),
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|a| a * q).collect(),
        }
    }

    /// The Galois automorphism `zeta -> zeta^j`, `gcd(j, n) = 1`.
    pub fn galois(&self, j: i64) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.n as i64;
        debug_assert_eq!(j.rem_euclid(n).gcd(&n), 1);
        let poly = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (((k as i64) * j).rem_euclid(n) as usize, v.clone()))
            .collect();
        Cyclotomic { n: self.n, c: reduce(self.n, poly) }
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// If `self = zeta_n^k` for some `k`, return the smallest such `k`.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.n).find(|&k| {
            Cyclotomic::root_of_unity(self.n, k as i64)
                .map(|z| z == *self)
                .unwrap_or(false)
        })
    }

    /// Lowest conductor in which the value lives.
    ///
    /// `Q(zeta_d)` is the fixed field of the automorphisms `zeta -> zeta^j`
    /// with `j = 1 mod d`, so the first divisor whose group fixes the value wins.
    pub fn minimal_conductor(&self) -> u32 {
        let n = self.n;
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| {
                (1..n)
                    .filter(|&j| j % d == 1 % d && (j as u64).gcd(&(n as u64)) == 1)
                    .all(|j| self.galois(j as i64) == *self)
            })
            .unwrap_or(n)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.c.iter().enumerate() {
            let x = rational_to_f64(c);
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        match self.common(other) {
            Ok((a, b)) => a.c == b.c,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

// Conductors stay within the cap whenever both operands come from the same
// group, so the operator forms treat overflow as a programming error.
binop!(Add, add, |a, b| a.try_add(b).expect("conductor overflow"));
binop!(Sub, sub, |a, b| a.try_add(&-b).expect("conductor overflow"));
binop!(Mul, mul, |a, b| a.try_mul(b).expect("conductor overflow"));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    /// Written as a sum of `c*z^k` with `z = E(n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "E({})", self.n)?
                    } else {
                        write!(f, "E({})^{k}", self.n)?
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.n,
            coeffs: self.c.iter().map(|q| q.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Cyclotomic::from_coeffs(r.conductor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn phi_small() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() as u32 - 1, totient(105));
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [3u32, 4, 5, 6, 12, 15] {
            let mut s = Cyclotomic::zero(n);
            for k in 0..n {
                s = s + z(n, k as i64);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn zeta3_relation() {
        let s = z(3, 0) + z(3, 1) + z(3, 2);
        assert_eq!(s.to_rational().unwrap(), int(0));
        assert_eq!(z(3, 1).conj(), z(3, 2));
    }

    #[test]
    fn lift_then_compare() {
        let a = z(3, 1);
        let b = z(6, 2);
        assert_eq!(a, b);
        assert_eq!(a.lift(6).unwrap(), b);
        let i = z(4, 1);
        assert_eq!((&i * &i).to_rational().unwrap(), int(-1));
        let mixed = &z(3, 1) * &z(4, 1);
        assert_eq!(mixed, z(12, 7));
    }

    #[test]
    fn not_rational_and_cap() {
        assert!(matches!(z(5, 1).to_rational(), Err(Error::NotRational(_))));
        assert!(matches!(
            Cyclotomic::root_of_unity(513, 1),
            Err(Error::ConductorTooLarge(513, _))
        ));
        assert!(z(256, 1).try_mul(&z(3, 1)).is_err());
    }

    #[test]
    fn norm_of_unit_root_sum() {
        // |1 + zeta_5|^2 = 2 + zeta_5 + zeta_5^-1 is real but irrational
        let a = z(5, 0) + z(5, 1);
        let nrm = &a * &a.conj();
        assert_eq!(nrm, nrm.conj());
        assert!(!nrm.is_rational());
    }

    #[test]
    fn minimal_conductor_detects_subfield() {
        assert_eq!(z(12, 4).minimal_conductor(), 3);
        assert_eq!(z(12, 6).minimal_conductor(), 1);
        assert_eq!(z(10, 2).minimal_conductor(), 5);
        assert_eq!((z(8, 1) + z(8, 7)).minimal_conductor(), 8);
    }

    #[test]
    fn json_roundtrip() {
        let a = z(7, 3).scale(&rat(-2, 3)) + Cyclotomic::from_rational(rat(1, 2), 7);
        let s = serde_json::to_string(&a).unwrap();
        let b: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(s.contains("\"conductor\":7"));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_rational(rat(-1, 2), 3).to_string(), "-1/2");
        assert_eq!(z(5, 1).to_string(), "E(5)");
    }
}
