//! Irreducible character tables.
//!
//! Abelian groups enumerate their dual group directly, dihedral groups use
//! the classical formulas, and everything else goes through Dixon's method:
//! the class-sum matrices are simultaneously diagonalised over a prime field
//! `F_p` with `p = 1 mod exponent`, and the eigenvalue multiplicities of each
//! `rho(g)` are read back as exact cyclotomic values. Every table is checked
//! for orthonormality before it is returned.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{cyclotomic_polynomial, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableMethod {
    Trivial,
    Abelian,
    Dihedral,
    Dixon,
}

impl fmt::Display for TableMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableMethod::Trivial => "trivial",
            TableMethod::Abelian => "abelian",
            TableMethod::Dihedral => "dihedral",
            TableMethod::Dixon => "dixon",
        };
        f.write_str(s)
    }
}

/// The irreducible characters of a group, one row per character.
///
/// Row 0 is the trivial character. Values are stored at the conductor equal
/// to the group exponent.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    rows: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    method: TableMethod,
    conductor: u32,
}

impl CharacterTable {
    pub fn compute(g: &PermGroup) -> Result<CharacterTable> {
        let (rows, method) = if g.order() == 1 {
            (vec![vec![Cyclotomic::one(1)]], TableMethod::Trivial)
        } else if g.is_abelian() {
            (abelian_rows(g)?, TableMethod::Abelian)
        } else if let Some((r, s)) = dihedral_structure(g) {
            (dihedral_rows(g, r, s)?, TableMethod::Dihedral)
        } else {
            (dixon_rows(g)?, TableMethod::Dixon)
        };
        Self::finish(g, rows, method)
    }

    /// Run Dixon's method regardless of the group's shape.
    pub fn compute_dixon(g: &PermGroup) -> Result<CharacterTable> {
        Self::finish(g, dixon_rows(g)?, TableMethod::Dixon)
    }

    fn finish(g: &PermGroup, rows: Vec<Vec<Cyclotomic>>, method: TableMethod) -> Result<Self> {
        let conductor = g.exponent();
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.lift(conductor)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let degrees = rows
            .iter()
            .map(|r| {
                r[0].to_rational()
                    .ok()
                    .and_then(|q| q.to_integer().to_u64())
                    .ok_or_else(|| Error::TableFailure("non-integral degree".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let t = CharacterTable { rows, degrees, method, conductor };
        t.validate(g)?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn method(&self) -> TableMethod {
        self.method
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Exact orthonormality in `Z[zeta_e]` plus the degree and count checks.
    fn validate(&self, g: &PermGroup) -> Result<()> {
        let r = g.num_classes();
        if self.rows.len() != r {
            return Err(Error::TableFailure(format!(
                "{} characters for {} classes",
                self.rows.len(),
                r
            )));
        }
        if self.rows[0].iter().any(|v| *v != Cyclotomic::one(1)) {
            return Err(Error::TableFailure("first row is not trivial".into()));
        }
        let sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != g.order() as u64 {
            return Err(Error::TableFailure(format!(
                "sum of squared degrees {sq} != {}",
                g.order()
            )));
        }
        if self.method == TableMethod::Abelian {
            // Homomorphism and distinctness were checked during enumeration,
            // and |G| distinct linear characters exhaust the dual group.
            return Ok(());
        }
        let e = self.conductor;
        let ints = self
            .rows
            .iter()
            .map(|row| row.iter().map(|v| IntCyc::from_cyc(v, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let conj: Vec<Vec<IntCyc>> = (0..r)
            .map(|a| (0..r).map(|c| ints[a][g.inverse_class(c)].clone()).collect())
            .collect();
        for a in 0..r {
            for b in a..r {
                let mut acc = IntCyc::zero(e);
                for c in 0..r {
                    acc.add_mul(&ints[a][c], &conj[b][c], g.class_size(c) as i64);
                }
                let want = if a == b { g.order() as i64 } else { 0 };
                if !acc.equals_int(want) {
                    return Err(Error::TableFailure(format!(
                        "characters {a} and {b} are not orthonormal"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Element of `Z[zeta_e]` with machine-integer power-basis coefficients.
#[derive(Clone, Debug)]
struct IntCyc {
    e: u32,
    c: Vec<i64>,
}

impl IntCyc {
    fn zero(e: u32) -> Self {
        IntCyc { e, c: vec![0; e as usize] }
    }

    fn from_cyc(v: &Cyclotomic, e: u32) -> Result<Self> {
        let v = v.lift(e)?;
        let mut c = vec![0i64; e as usize];
        for (k, q) in v.coeffs().iter().enumerate() {
            if !q.is_integer() {
                return Err(Error::TableFailure(format!("value {v} is not an algebraic integer")));
            }
            c[k] = q
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::TableFailure("coefficient overflow".into()))?;
        }
        Ok(IntCyc { e, c })
    }

    /// `self += w * a * b` with the product taken modulo `z^e - 1`.
    fn add_mul(&mut self, a: &IntCyc, b: &IntCyc, w: i64) {
        let e = self.e as usize;
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                if y != 0 {
                    self.c[(i + j) % e] += w * x * y;
                }
            }
        }
    }

    fn equals_int(&self, want: i64) -> bool {
        let phi = cyclotomic_polynomial(self.e);
        let deg = phi.len() - 1;
        let mut a = self.c.clone();
        for k in (deg..a.len()).rev() {
            let c = a[k];
            if c == 0 {
                continue;
            }
            a[k] = 0;
            for (j, &pj) in phi.iter().take(deg).enumerate() {
                a[k - deg + j] -= c * pj;
            }
        }
        a[0] == want && a[1..].iter().all(|&x| x == 0)
    }
}

fn abelian_rows(g: &PermGroup) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = g.order();
    let e = g.exponent() as i64;
    // chars[k][x] is the exponent a with chi_k(x) = zeta_e^a.
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0usize];
    let mut chars: Vec<Vec<i64>> = vec![vec![0; n]];
    for s in g.generators() {
        let s = g.index_of(s).expect("generator");
        if member[s] {
            continue;
        }
        let mut k = 1usize;
        let mut sk = s;
        while !member[sk] {
            sk = g.mul(sk, s);
            k += 1;
        }
        let step = e / k as i64;
        let mut next_elems = Vec::with_capacity(elems.len() * k);
        let mut power = 0usize;
        for _ in 0..k {
            for &h in &elems {
                next_elems.push(g.mul(h, power));
            }
            power = g.mul(power, s);
        }
        let mut next = Vec::with_capacity(chars.len() * k);
        for chi in &chars {
            let b = chi[sk];
            let a0 = (0..e)
                .find(|a| (a * k as i64 - b).rem_euclid(e) == 0)
                .ok_or_else(|| Error::TableFailure("character does not extend".into()))?;
            for c in 0..k as i64 {
                let a = a0 + c * step;
                let mut ext = chi.clone();
                let mut power = 0usize;
                for j in 0..k as i64 {
                    for &h in &elems {
                        ext[g.mul(h, power)] = (chi[h] + j * a).rem_euclid(e);
                    }
                    power = g.mul(power, s);
                }
                next.push(ext);
            }
        }
        for &x in &next_elems {
            member[x] = true;
        }
        elems = next_elems;
        chars = next;
    }
    if elems.len() != n || chars.len() != n {
        return Err(Error::TableFailure("dual group enumeration incomplete".into()));
    }
    let mut distinct = chars.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != n {
        return Err(Error::TableFailure("dual group enumeration repeated a character".into()));
    }
    for chi in &chars {
        for x in 0..n {
            for s in g.generators() {
                let s = g.index_of(s).expect("generator");
                if (chi[x] + chi[s] - chi[g.mul(x, s)]).rem_euclid(e) != 0 {
                    return Err(Error::TableFailure("dual enumeration is not a homomorphism".into()));
                }
            }
        }
    }
    chars
        .iter()
        .map(|chi| {
            (0..g.num_classes())
                .map(|c| Cyclotomic::root_of_unity(e as u32, chi[g.class_rep(c)]))
                .collect()
        })
        .collect()
}

/// Rotation and reflection witnessing `g = D_{2n}` with `n >= 3`.
pub(crate) fn dihedral_structure(g: &PermGroup) -> Option<(usize, usize)> {
    let order = g.order();
    if order < 6 || order % 2 == 1 {
        return None;
    }
    let n = order / 2;
    let r = (0..order).find(|&x| g.element_order(x) as usize == n)?;
    let rot: Vec<usize> = (0..n as i64).map(|k| g.pow(r, k)).collect();
    let r_inv = g.inv(r);
    let s = (0..order).find(|&x| {
        !rot.contains(&x) && g.element_order(x) == 2 && g.conjugate(r, x) == r_inv
    })?;
    Some((r, s))
}

fn dihedral_rows(g: &PermGroup, r: usize, s: usize) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = g.order() / 2;
    let e = g.exponent();
    let mut rot_exp = vec![None; g.order()];
    let mut x = 0;
    for k in 0..n {
        rot_exp[x] = Some(k as i64);
        x = g.mul(x, r);
    }
    // (is_reflection, k) with element = r^k or s r^k
    let shape: Vec<(bool, i64)> = (0..g.num_classes())
        .map(|c| {
            let y = g.class_rep(c);
            match rot_exp[y] {
                Some(k) => (false, k),
                None => (true, rot_exp[g.mul(g.inv(s), y)].expect("dihedral coset")),
            }
        })
        .collect();
    let lin = |f: &dyn Fn(bool, i64) -> i64| -> Vec<Cyclotomic> {
        shape.iter().map(|&(refl, k)| Cyclotomic::from_int(f(refl, k), e)).collect()
    };
    let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    let mut rows = vec![
        lin(&|_, _| 1),
        lin(&|refl, _| if refl { -1 } else { 1 }),
    ];
    if n.is_multiple_of(2) {
        rows.push(lin(&|_, k| sign(k)));
        rows.push(lin(&|refl, k| if refl { -sign(k) } else { sign(k) }));
    }
    for j in 1..(n as i64 + 1) / 2 {
        let row = shape
            .iter()
            .map(|&(refl, k)| {
                if refl {
                    Ok(Cyclotomic::zero(e))
                } else {
                    Ok(Cyclotomic::root_of_unity(n as u32, j * k)?
                        + Cyclotomic::root_of_unity(n as u32, -j * k)?)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Dixon's method

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p = 1 mod e` with `p > 2 sqrt(order)`.
pub(crate) fn dixon_prime(e: u64, order: u64) -> u64 {
    let mut p = e + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += e;
    }
    p
}

/// An element of exact multiplicative order `e` in `F_p`.
fn primitive_root_of_order(e: u64, p: u64) -> u64 {
    let qs = prime_factors(e);
    (2..p)
        .map(|a| mod_pow(a, (p - 1) / e, p))
        .find(|&z| qs.iter().all(|q| mod_pow(z, e / q, p) != 1))
        .expect("F_p contains e-th roots of unity")
}

type Mat = Vec<Vec<u64>>;

/// Row-reduce in place; returns pivot columns.
fn rref(rows: &mut Mat, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = mod_inv(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : a x = 0}`.
fn nullspace(a: &Mat, p: u64) -> Mat {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial via Hessenberg reduction, lowest degree first.
fn char_poly(a: &Mat, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = mod_inv(h[m][m - 1], p);
        for i in m + 1..n {
            let u = h[i][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = u * h[m][c] % p;
                h[i][c] = (h[i][c] + p - t) % p;
            }
            for row in h.iter_mut() {
                let t = u * row[i] % p;
                row[m] = (row[m] + t) % p;
            }
        }
    }
    // polys[k] is the characteristic polynomial of the leading k x k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        let prev = &polys[k - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - h[k - 1][k - 1] * c % p) % p;
        }
        let mut prod = 1u64;
        for i in 1..k {
            prod = prod * h[k - i][k - i - 1] % p;
            let coeff = h[k - i - 1][k - 1] * prod % p;
            if coeff == 0 {
                continue;
            }
            for (j, &c) in polys[k - i - 1].iter().enumerate() {
                next[j] = (next[j] + p - coeff * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Split an invariant subspace (rows in RREF) into eigenspaces of `m`.
fn split_space(space: &Mat, m: &Mat, p: u64) -> Result<Vec<Mat>> {
    let mut basis = space.clone();
    let pivots = rref(&mut basis, p);
    let dim = basis.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|w| {
            (0..m.len())
                .map(|j| m[j].iter().zip(w).fold(0, |acc, (a, b)| (acc + a * b) % p))
                .collect()
        })
        .collect();
    let a: Mat = (0..dim)
        .map(|s| (0..dim).map(|t| images[t][pivots[s]]).collect())
        .collect();
    let cp = char_poly(&a, p);
    let mut out = Vec::new();
    let mut total = 0;
    for lam in 0..p {
        if poly_eval(&cp, lam, p) != 0 {
            continue;
        }
        let mut shifted = a.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lam) % p;
        }
        let coords = nullspace(&shifted, p);
        total += coords.len();
        let vecs: Mat = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; m.len()];
                for (t, &ct) in c.iter().enumerate() {
                    if ct != 0 {
                        for (vi, bi) in v.iter_mut().zip(&basis[t]) {
                            *vi = (*vi + ct * bi) % p;
                        }
                    }
                }
                v
            })
            .collect();
        out.push(vecs);
    }
    if total != dim {
        return Err(Error::TableFailure(
            "class matrices are not simultaneously diagonalisable mod p".into(),
        ));
    }
    Ok(out)
}

fn dixon_rows(g: &PermGroup) -> Result<Vec<Vec<Cyclotomic>>> {
    let r = g.num_classes();
    let n = g.order();
    let e = g.exponent() as u64;
    let p = dixon_prime(e, n as u64);
    let z = primitive_root_of_order(e, p);

    // a[i][j][k] = #{x in K_i : x^-1 z_k in K_j}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let zk = g.class_rep(k);
        for x in 0..n {
            let i = g.class_of(x);
            let j = g.class_of(g.mul(g.inv(x), zk));
            a[i][j][k] += 1;
        }
    }
    let mats: Vec<Mat> = (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| a[i][j][k] % p).collect()).collect())
        .collect();

    let seed = 0x9e37_79b9u64;
    let combo: Mat = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| {
                    (0..r).fold(0u64, |acc, i| {
                        let c = (i as u64 * 2_654_435_761 + seed) % p;
                        (acc + c * mats[i][j][k]) % p
                    })
                })
                .collect()
        })
        .collect();

    let identity: Mat = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = split_space(&identity, &combo, p)?;
    for m in &mats {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split_space(&s, m, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::TableFailure("class matrices do not separate characters".into()));
    }

    let mut rows = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(Error::TableFailure("central character vanishes at identity".into()));
        }
        let inv0 = mod_inv(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
        let mut ssum = 0u64;
        for i in 0..r {
            let t = omega[i] * omega[g.inverse_class(i)] % p;
            ssum = (ssum + t * mod_inv(g.class_size(i) as u64 % p, p)) % p;
        }
        if ssum == 0 {
            return Err(Error::TableFailure("degenerate norm mod p".into()));
        }
        let d2 = (n as u64 % p) * mod_inv(ssum, p) % p;
        let d = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::TableFailure("no degree matches mod p".into()))?;
        let chi: Vec<u64> = (0..r)
            .map(|i| omega[i] * d % p * mod_inv(g.class_size(i) as u64 % p, p) % p)
            .collect();
        let row = (0..r)
            .map(|c| lift_value(g, &chi, c, d, z, e, p))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    canonical_order(&mut rows);
    Ok(rows)
}

/// Recover `chi(g_c)` from the eigenvalue multiplicities of `rho(g_c)`.
fn lift_value(
    g: &PermGroup,
    chi: &[u64],
    c: usize,
    d: u64,
    z: u64,
    e: u64,
    p: u64,
) -> Result<Cyclotomic> {
    let o = g.element_order(g.class_rep(c)) as u64;
    let zo = mod_pow(z, e / o, p);
    let inv_o = mod_inv(o % p, p);
    let powers: Vec<u64> = (0..o).map(|k| chi[g.power_class(c, k as i64)]).collect();
    let mut value = Cyclotomic::zero(e as u32);
    for j in 0..o {
        let mut m = 0u64;
        for (k, &v) in powers.iter().enumerate() {
            let w = mod_pow(zo, (o - (j * k as u64) % o) % o, p);
            m = (m + v * w) % p;
        }
        m = m * inv_o % p;
        if m > d {
            return Err(Error::TableFailure(format!(
                "eigenvalue multiplicity {m} exceeds degree {d}"
            )));
        }
        if m > 0 {
            let root = Cyclotomic::root_of_unity(e as u32, ((e / o) * j) as i64)?;
            value = value + root.scale(&BigInt::from(m).into());
        }
    }
    Ok(value)
}

/// Trivial first, then by degree, then by descending power-basis coefficients.
fn canonical_order(rows: &mut [Vec<Cyclotomic>]) {
    let is_trivial =
        |row: &Vec<Cyclotomic>| row.iter().all(|v| v.is_rational() && v.coeffs()[0].is_one());
    rows.sort_by(|a, b| {
        is_trivial(b).cmp(&is_trivial(a)).then_with(|| {
            let da = a[0].coeffs()[0].clone();
            let db = b[0].coeffs()[0].clone();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b) {
                    for (cx, cy) in x.coeffs().iter().zip(y.coeffs()) {
                        let o = cy.cmp(cx);
                        if o != std::cmp::Ordering::Equal {
                            return o;
                        }
                    }
                }
                std::cmp::Ordering::Equal
            })
        })
    });
}
