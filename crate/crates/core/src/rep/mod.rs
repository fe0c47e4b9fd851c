//! The rational representation ring `R_Q(G)` as class functions.
//!
//! A [`RepClass`] stores one cyclotomic value per conjugacy class. Virtual
//! representations with rational multiplicities are exactly the class
//! functions whose multiplicities against the irreducible characters are
//! rational, so sums, scalings, tensor products, restriction, induction and
//! inflation are all computed pointwise and multiplicities are recovered by
//! inner products only when asked for.

mod table;

pub use table::{CharacterTable, TableMethod};

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::arith::{int, rat, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup, Quotient, Subgroup};

/// A virtual representation with rational coefficients, as a class function.
#[derive(Clone, Debug)]
pub struct RepClass {
    group: Arc<PermGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for RepClass {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.values == other.values
    }
}

impl RepClass {
    pub fn from_values(group: &Arc<PermGroup>, values: Vec<Cyclotomic>) -> Result<RepClass> {
        if values.len() != group.num_classes() {
            return Err(Error::InvalidCharacter(format!(
                "{} values for {} classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(RepClass { group: group.clone(), values })
    }

    pub fn zero(group: &Arc<PermGroup>) -> RepClass {
        let e = group.exponent();
        RepClass {
            group: group.clone(),
            values: vec![Cyclotomic::zero(e); group.num_classes()],
        }
    }

    /// The trivial representation `[1_G]`.
    pub fn trivial(group: &Arc<PermGroup>) -> RepClass {
        let e = group.exponent();
        RepClass {
            group: group.clone(),
            values: vec![Cyclotomic::one(e); group.num_classes()],
        }
    }

    /// The regular representation `[k[G]]`.
    pub fn regular(group: &Arc<PermGroup>) -> RepClass {
        let mut out = Self::zero(group);
        out.values[0] = Cyclotomic::from_int(group.order() as i64, group.exponent());
        out
    }

    /// The `i`-th irreducible character in table order.
    pub fn irreducible(group: &Arc<PermGroup>, i: usize) -> Result<RepClass> {
        let t = group.character_table()?;
        if i >= t.len() {
            return Err(Error::InvalidCharacter(format!("no irreducible with index {i}")));
        }
        Ok(RepClass { group: group.clone(), values: t.row(i).to_vec() })
    }

    /// `sum_i m_i chi_i` over the irreducibles.
    pub fn from_multiplicities(group: &Arc<PermGroup>, mults: &[Rational]) -> Result<RepClass> {
        let t = group.character_table()?;
        if mults.len() != t.len() {
            return Err(Error::InvalidCharacter(format!(
                "{} multiplicities for {} irreducibles",
                mults.len(),
                t.len()
            )));
        }
        let mut out = Self::zero(group);
        for (m, row) in mults.iter().zip(t.rows()) {
            if m.is_zero() {
                continue;
            }
            for (v, x) in out.values.iter_mut().zip(row) {
                *v = &*v + &x.scale(m);
            }
        }
        Ok(out)
    }

    /// The permutation representation on the cosets of `h`, i.e. `Ind_H^G [1_H]`.
    pub fn permutation(h: &Subgroup) -> RepClass {
        RepClass::trivial(h.group())
            .induce(h)
            .expect("induction from a subgroup")
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at a group element given by index.
    pub fn value_at(&self, elem: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(elem)]
    }

    fn same_group(&self, other: &RepClass) -> Result<()> {
        if *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn try_add(&self, other: &RepClass) -> Result<RepClass> {
        self.same_group(other)?;
        Ok(RepClass {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &RepClass) -> Result<RepClass> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> RepClass {
        RepClass {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    /// `[V (x) W]`, the pointwise product of characters.
    pub fn tensor(&self, other: &RepClass) -> Result<RepClass> {
        self.same_group(other)?;
        Ok(RepClass {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `k`-th tensor power; negative powers are only meaningful for linear characters.
    pub fn power(&self, k: i64) -> RepClass {
        let base = if k < 0 { self.dual() } else { self.clone() };
        let mut out = RepClass::trivial(&self.group);
        for _ in 0..k.unsigned_abs() {
            out = out.tensor(&base).expect("same group");
        }
        out
    }

    /// The dual representation.
    pub fn dual(&self) -> RepClass {
        RepClass {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// `(1/|G|) sum_g a(g) conj(b(g))`.
    pub fn inner(&self, other: &RepClass) -> Result<Rational> {
        self.same_group(other)?;
        let g = &self.group;
        let mut acc = Cyclotomic::zero(g.exponent());
        for c in 0..g.num_classes() {
            let a = &self.values[c];
            let b = &other.values[c];
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = acc + (a * &b.conj()).scale(&int(g.class_size(c) as i64));
        }
        Ok(acc.to_rational()? / int(g.order() as i64))
    }

    /// Multiplicity of each irreducible, in table order.
    pub fn multiplicities(&self) -> Result<Vec<Rational>> {
        let t = self.group.character_table()?;
        t.rows()
            .iter()
            .map(|row| {
                let chi = RepClass { group: self.group.clone(), values: row.clone() };
                self.inner(&chi)
            })
            .collect()
    }

    pub fn degree(&self) -> Rational {
        self.values[0]
            .to_rational()
            .expect("the value at the identity of a rational class is rational")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// All multiplicities are non-negative.
    pub fn is_effective(&self) -> Result<bool> {
        Ok(self.multiplicities()?.iter().all(|m| !m.is_negative()))
    }

    /// All multiplicities are integers.
    pub fn is_integral(&self) -> Result<bool> {
        Ok(self.multiplicities()?.iter().all(|m| m.is_integer()))
    }

    /// Whether this is a single irreducible character of degree one.
    pub fn is_linear_character(&self) -> Result<bool> {
        if self.degree() != Rational::one() {
            return Ok(false);
        }
        let m = self.multiplicities()?;
        Ok(m.iter().filter(|x| x.is_one()).count() == 1 && m.iter().filter(|x| !x.is_zero()).count() == 1)
    }

    /// Elements where the value equals the degree; for a character this is its kernel.
    pub fn kernel(&self) -> Result<Subgroup> {
        let d = Cyclotomic::from_rational(self.degree(), 1);
        let idx: Vec<usize> = (0..self.group.order())
            .filter(|&x| *self.value_at(x) == d)
            .collect();
        Subgroup::from_indices(&self.group, &idx)
    }

    /// `Res^G_H` where `h.parent()` is this class's group.
    pub fn restrict(&self, h: &Subgroup) -> Result<RepClass> {
        if **h.parent() != *self.group {
            return Err(Error::GroupMismatch);
        }
        let hg = h.group();
        let values = (0..hg.num_classes())
            .map(|c| self.value_at(h.embed(hg.class_rep(c))).clone())
            .collect();
        Ok(RepClass { group: hg.clone(), values })
    }

    /// `Ind_H^G` where `h.group()` is this class's group.
    ///
    /// `Ind(chi)(g) = |G| / (|H| |K_g|) * sum_{h in H, h ~ g} chi(h)`.
    pub fn induce(&self, h: &Subgroup) -> Result<RepClass> {
        if **h.group() != *self.group {
            return Err(Error::GroupMismatch);
        }
        let g = h.parent();
        let e = g.exponent();
        let mut acc = vec![Cyclotomic::zero(e); g.num_classes()];
        for x in 0..h.order() {
            let v = self.value_at(x);
            if !v.is_zero() {
                let c = g.class_of(h.embed(x));
                acc[c] = &acc[c] + v;
            }
        }
        let values = acc
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.scale(&rat(g.order() as i64, (h.order() * g.class_size(c)) as i64)))
            .collect();
        Ok(RepClass { group: g.clone(), values })
    }

    /// Induce into any group containing this class's group as a set of permutations.
    pub fn induce_to(&self, g: &Arc<PermGroup>) -> Result<RepClass> {
        let h = Subgroup::from_group(g, self.group.clone())?;
        self.induce(&h)
    }

    /// Inflation along `G -> G/N` where `q.group()` is this class's group.
    pub fn inflate(&self, q: &Quotient) -> Result<RepClass> {
        if **q.group() != *self.group {
            return Err(Error::GroupMismatch);
        }
        let g = q.parent();
        let values = (0..g.num_classes())
            .map(|c| self.value_at(q.project(g.class_rep(c))).clone())
            .collect();
        Ok(RepClass { group: g.clone(), values })
    }

    /// Pull back along a homomorphism `a -> self.group` given on all elements of `a`.
    pub fn pullback(&self, a: &Arc<PermGroup>, hom: &[usize]) -> Result<RepClass> {
        if hom.len() != a.order() {
            return Err(Error::InvalidCharacter("homomorphism has the wrong length".into()));
        }
        let values = (0..a.num_classes())
            .map(|c| self.value_at(hom[a.class_rep(c)]).clone())
            .collect();
        Ok(RepClass { group: a.clone(), values })
    }

    /// Multiplicities rendered as `m*X_i` terms.
    pub fn describe(&self) -> String {
        match self.multiplicities() {
            Ok(m) => {
                let terms: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| {
                        if x.is_one() {
                            format!("X{i}")
                        } else {
                            format!("{x}*X{i}")
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ").replace("+ -", "- ")
                }
            }
            Err(e) => format!("<{e}>"),
        }
    }
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl std::ops::Add for &RepClass {
    type Output = RepClass;
    fn add(self, rhs: &RepClass) -> RepClass {
        self.try_add(rhs).expect("classes on different groups")
    }
}

impl std::ops::Sub for &RepClass {
    type Output = RepClass;
    fn sub(self, rhs: &RepClass) -> RepClass {
        self.try_sub(rhs).expect("classes on different groups")
    }
}

/// `sum_i (|G_i| / |G|) Ind_{G_i}^G [M_i]` over all members of the parts list.
pub fn orbit_assemble(parts: &[(Subgroup, RepClass)]) -> Result<RepClass> {
    let Some((first, _)) = parts.first() else {
        return Err(Error::InvalidCharacter("orbit_assemble needs at least one part".into()));
    };
    let g = first.parent().clone();
    let mut acc = RepClass::zero(&g);
    for (h, m) in parts {
        let ind = m.induce(h)?;
        acc = acc.try_add(&ind.scale(&rat(h.order() as i64, g.order() as i64)))?;
    }
    Ok(acc)
}

/// The linear character of `group` sending each listed generator to
/// `zeta_order^exp`. Fails if the assignment does not extend to a homomorphism
/// or the generators do not generate `group`.
pub fn linear_character(
    group: &Arc<PermGroup>,
    gens: &[Perm],
    exps: &[i64],
    order: u32,
) -> Result<RepClass> {
    let exps = linear_exponents(group, gens, exps, order)?;
    let values = (0..group.num_classes())
        .map(|c| {
            Cyclotomic::root_of_unity(order, exps[group.class_rep(c)] as i64)
                .and_then(|v| v.lift(lcm_conductor(group.exponent(), order)))
        })
        .collect::<Result<Vec<_>>>()?;
    RepClass::from_values(group, values)
}

fn lcm_conductor(a: u32, b: u32) -> u32 {
    crate::arith::lcm(a, b) as u32
}

/// Exponent of the linear character on every element, as in [`linear_character`].
pub fn linear_exponents(
    group: &Arc<PermGroup>,
    gens: &[Perm],
    exps: &[i64],
    order: u32,
) -> Result<Vec<u32>> {
    if gens.len() != exps.len() {
        return Err(Error::InvalidCharacter(format!(
            "{} exponents for {} generators",
            exps.len(),
            gens.len()
        )));
    }
    if order == 0 {
        return Err(Error::InvalidCharacter("character order 0".into()));
    }
    let gi = gens
        .iter()
        .map(|p| group.index_of(p).ok_or_else(|| Error::NotInParent(p.cycles())))
        .collect::<Result<Vec<_>>>()?;
    let o = order as i64;
    let mut exp = vec![None::<u32>; group.order()];
    exp[0] = Some(0);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        let ex = exp[x].unwrap() as i64;
        for (&s, &es) in gi.iter().zip(exps) {
            let y = group.mul(s, x);
            let ey = (ex + es).rem_euclid(o) as u32;
            match exp[y] {
                None => {
                    exp[y] = Some(ey);
                    queue.push(y);
                }
                Some(prev) if prev != ey => {
                    return Err(Error::InvalidCharacter(
                        "generator exponents do not define a homomorphism".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    exp.into_iter()
        .map(|e| e.ok_or_else(|| Error::InvalidCharacter("generators do not generate the group".into())))
        .collect()
}

/// `Psi = ((e-1)/2) [k[G]] - sum_{d=0}^{e-1} d theta^d` for a faithful linear
/// character `theta` of a cyclic group of order `e`.
pub fn psi_class(theta: &RepClass) -> Result<RepClass> {
    let g = theta.group();
    let e = g.order() as i64;
    if !theta.is_linear_character()? {
        return Err(Error::InvalidCharacter("theta is not a linear character".into()));
    }
    if theta.kernel()?.order() != 1 {
        return Err(Error::InvalidCharacter("theta is not faithful".into()));
    }
    let mut out = RepClass::regular(g).scale(&rat(e - 1, 2));
    let mut pow = RepClass::trivial(g);
    for d in 0..e {
        if d > 0 {
            out = &out - &pow.scale(&int(d));
        }
        pow = pow.tensor(theta)?;
    }
    Ok(out)
}
