//! Finite permutation groups, subgroups and quotients.
//!
//! A [`PermGroup`] enumerates all of its elements up front (at most
//! [`MAX_ORDER`]) and stores a full multiplication table, so every later
//! computation works on element indices. Elements are sorted
//! lexicographically by image list, which makes the identity element 0 and
//! gives every conjugacy class a canonical representative: its smallest
//! member.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rep::CharacterTable;

/// Largest group order the engine will enumerate.
pub const MAX_ORDER: usize = 512;

/// A permutation of `0..n`, stored as its image list.
///
/// The product `a * b` applies `b` first: `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u32]>);

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn compose(&self, rhs: &Perm) -> Result<Perm> {
        if self.degree() != rhs.degree() {
            return Err(Error::DegreeMismatch(self.degree(), rhs.degree()));
        }
        Ok(Perm(rhs.0.iter().map(|&i| self.0[i as usize]).collect()))
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm(out.into_boxed_slice())
    }

    /// Cycle notation, `()` for the identity.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&i.to_string());
                i = self.0[i] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

/// A finite group of permutations with all derived data precomputed.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    order_of: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
    exponent: u32,
    label: String,
    table: OnceLock<std::result::Result<Arc<CharacterTable>, Error>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({}, order {})", self.label, self.order())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elems == other.elems)
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Close `gens` under multiplication. An empty list gives the trivial
    /// group of the stated degree.
    pub fn generate(degree: usize, gens: Vec<Perm>) -> Result<Arc<PermGroup>> {
        Self::generate_labeled(degree, gens, None)
    }

    pub fn generate_labeled(
        degree: usize,
        gens: Vec<Perm>,
        label: Option<String>,
    ) -> Result<Arc<PermGroup>> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone(), ());
        queue.push_back(id);
        let mut elems = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = s.compose(&x)?;
                if !seen.contains_key(&y) {
                    if seen.len() >= MAX_ORDER {
                        return Err(Error::TooLarge(MAX_ORDER));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            elems.push(x);
        }
        elems.sort();
        let n = elems.len();
        let index: HashMap<Perm, usize> =
            elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = a.compose(b)?;
                mul[i * n + j] = index[&c] as u32;
            }
        }
        let inv: Vec<u32> = elems.iter().map(|a| index[&a.inverse()] as u32).collect();
        let mut order_of = vec![1u32; n];
        for i in 1..n {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + i] as usize;
                k += 1;
            }
            order_of[i] = k;
        }
        let exponent = order_of.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            let mut members = Vec::new();
            for x in 0..n {
                let c = mul[mul[x * n + g] as usize * n + inv[x] as usize] as usize;
                if class_of[c] == u32::MAX {
                    class_of[c] = cid;
                    members.push(c as u32);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        let label = label.unwrap_or_else(|| format!("group of order {n}"));
        Ok(Arc::new(PermGroup {
            degree,
            gens,
            elems,
            index,
            mul,
            inv,
            order_of,
            class_of,
            classes,
            exponent,
            label,
            table: OnceLock::new(),
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elems[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.order_of[a] as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `x g x^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.order_of[a]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Index of the class containing `g^k` for a representative `g` of class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.class_rep(c)))
    }

    /// Irreducible characters, computed on first use and then shared.
    pub fn character_table(&self) -> Result<Arc<CharacterTable>> {
        self.table
            .get_or_init(|| CharacterTable::compute(self).map(Arc::new))
            .clone()
    }

    /// Indices of the elements of the subgroup generated by the listed elements.
    pub fn closure_indices(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for &s in gens {
                let y = self.mul(s, x);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Cyclic group of order `n`, acting regularly on `0..n`.
pub fn cyclic(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 {
        return Err(Error::InvalidCurve("cyclic group of order 0".into()));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![Perm::new((0..n as u32).map(|i| (i + 1) % n as u32).collect())?]
    };
    PermGroup::generate_labeled(n, gens, Some(format!("C{n}")))
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon, `n >= 3`.
pub fn dihedral(n: usize) -> Result<Arc<PermGroup>> {
    if n < 3 {
        return Err(Error::UnsupportedShape(format!("dihedral group on {n} points")));
    }
    let m = n as u32;
    let rot = Perm::new((0..m).map(|i| (i + 1) % m).collect())?;
    let refl = Perm::new((0..m).map(|i| (m - i) % m).collect())?;
    PermGroup::generate_labeled(n, vec![rot, refl], Some(format!("D{}", 2 * n)))
}

/// Symmetric group on `n <= 6` points.
pub fn symmetric(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 || n > 6 {
        return Err(Error::UnsupportedShape(format!("symmetric group on {n} points")));
    }
    let m = n as u32;
    let gens = if n == 1 {
        vec![]
    } else {
        let mut t: Vec<u32> = (0..m).collect();
        t.swap(0, 1);
        vec![Perm::new(t)?, Perm::new((0..m).map(|i| (i + 1) % m).collect())?]
    };
    PermGroup::generate_labeled(n, gens, Some(format!("S{n}")))
}

/// Alternating group on `3 <= n <= 6` points.
pub fn alternating(n: usize) -> Result<Arc<PermGroup>> {
    if !(3..=6).contains(&n) {
        return Err(Error::UnsupportedShape(format!("alternating group on {n} points")));
    }
    let gens = (2..n as u32)
        .map(|k| {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t[0] = 1;
            t[1] = k;
            t[k as usize] = 0;
            Perm::new(t)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::generate_labeled(n, gens, Some(format!("A{n}")))
}

/// Direct product acting on disjoint supports.
pub fn product(a: &PermGroup, b: &PermGroup) -> Result<Arc<PermGroup>> {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut t: Vec<u32> = g.images().to_vec();
        t.extend(da as u32..(da + db) as u32);
        gens.push(Perm::new(t)?);
    }
    for g in b.generators() {
        let mut t: Vec<u32> = (0..da as u32).collect();
        t.extend(g.images().iter().map(|&i| i + da as u32));
        gens.push(Perm::new(t)?);
    }
    PermGroup::generate_labeled(da + db, gens, Some(format!("{}x{}", a.label(), b.label())))
}

/// The regular permutation representation of a group given by left multiplication.
pub fn regular(g: &PermGroup) -> Result<Arc<PermGroup>> {
    let n = g.order();
    let gens = g
        .generators()
        .iter()
        .map(|s| {
            let si = g.index_of(s).expect("generator in group");
            Perm::new((0..n).map(|x| g.mul(si, x) as u32).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::generate_labeled(n, gens, Some(format!("reg({})", g.label())))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> Result<Arc<PermGroup>> {
    // Elements 0..8 stand for 1, -1, i, -i, j, -j, k, -k.
    let table = |a: usize, b: usize| -> usize {
        let sign = (a % 2) ^ (b % 2);
        let (u, v) = (a / 2, b / 2);
        let (w, s) = match (u, v) {
            (0, x) => (x, 0),
            (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        };
        2 * w + (sign ^ s)
    };
    let left = |a: usize| Perm::new((0..8).map(|x| table(a, x) as u32).collect());
    PermGroup::generate_labeled(8, vec![left(2)?, left(4)?], Some("Q8".into()))
}

/// A subgroup of a fixed parent group, realised as a group in its own right.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<PermGroup>,
    group: Arc<PermGroup>,
    embed: Arc<Vec<usize>>,
    member: Arc<Vec<bool>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} in {:?})", self.order(), self.parent)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        *self.parent == *other.parent && self.member == other.member
    }
}

impl Subgroup {
    /// Subgroup of `parent` generated by explicit permutations.
    pub fn generated_by(parent: &Arc<PermGroup>, gens: Vec<Perm>) -> Result<Subgroup> {
        for g in &gens {
            if parent.index_of(g).is_none() {
                return Err(Error::NotInParent(g.cycles()));
            }
        }
        let group = PermGroup::generate(parent.degree(), gens)?;
        Self::from_group(parent, group)
    }

    /// Subgroup generated by parent elements given by index.
    pub fn from_indices(parent: &Arc<PermGroup>, idx: &[usize]) -> Result<Subgroup> {
        let gens = idx.iter().map(|&i| parent.element(i).clone()).collect();
        Self::generated_by(parent, gens)
    }

    /// Treat an existing group as a subgroup of `parent`.
    pub fn from_group(parent: &Arc<PermGroup>, group: Arc<PermGroup>) -> Result<Subgroup> {
        if group.degree() != parent.degree() {
            return Err(Error::NotSubgroup(format!(
                "degree {} vs {}",
                group.degree(),
                parent.degree()
            )));
        }
        let mut embed = Vec::with_capacity(group.order());
        let mut member = vec![false; parent.order()];
        for p in group.elements() {
            let i = parent
                .index_of(p)
                .ok_or_else(|| Error::NotSubgroup(p.cycles()))?;
            embed.push(i);
            member[i] = true;
        }
        Ok(Subgroup {
            parent: parent.clone(),
            group,
            embed: Arc::new(embed),
            member: Arc::new(member),
        })
    }

    pub fn whole(parent: &Arc<PermGroup>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            group: parent.clone(),
            embed: Arc::new((0..parent.order()).collect()),
            member: Arc::new(vec![true; parent.order()]),
        }
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> Subgroup {
        Self::from_indices(parent, &[]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Parent index of the `i`-th subgroup element.
    pub fn embed(&self, i: usize) -> usize {
        self.embed[i]
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    /// Whether a parent element (by index) belongs to the subgroup.
    pub fn contains(&self, parent_idx: usize) -> bool {
        self.member[parent_idx]
    }

    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.parent.index_of(p).is_some_and(|i| self.member[i])
    }

    /// Subgroup index of a parent element, if it belongs.
    pub fn local_index(&self, parent_idx: usize) -> Option<usize> {
        self.member[parent_idx].then(|| {
            self.group
                .index_of(self.parent.element(parent_idx))
                .expect("member lookup")
        })
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        *self.parent == *other.parent && self.embed.iter().all(|&i| other.member[i])
    }

    pub fn is_normal(&self) -> bool {
        let p = &self.parent;
        p.generators().iter().all(|g| {
            let gi = p.index_of(g).expect("generator");
            self.embed.iter().all(|&h| self.member[p.conjugate(h, gi)])
        })
    }

    /// Whether `self` is normal in `other` (both in the same parent).
    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other)
            && other.embed.iter().all(|&g| {
                self.embed
                    .iter()
                    .all(|&h| self.member[self.parent.conjugate(h, g)])
            })
    }

    /// `x H x^-1` for a parent element `x`.
    pub fn conjugate_by(&self, x: usize) -> Result<Subgroup> {
        let p = &self.parent;
        let idx: Vec<usize> = self
            .group
            .generators()
            .iter()
            .map(|g| p.conjugate(p.index_of(g).expect("generator"), x))
            .collect();
        Self::from_indices(p, &idx)
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if *self.parent != *other.parent {
            return Err(Error::GroupMismatch);
        }
        let idx: Vec<usize> = self
            .embed
            .iter()
            .copied()
            .filter(|&i| other.member[i])
            .collect();
        Self::from_indices(&self.parent, &idx)
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if *self.parent != *other.parent {
            return Err(Error::GroupMismatch);
        }
        let mut idx: Vec<usize> = self.embed.to_vec();
        idx.extend(other.embed.iter().copied());
        Self::from_indices(&self.parent, &idx)
    }

    /// Re-express `self` inside a larger subgroup `over` of the same parent.
    pub fn within(&self, over: &Subgroup) -> Result<Subgroup> {
        if !self.is_subgroup_of(over) {
            return Err(Error::NotSubgroup("not contained in the target subgroup".into()));
        }
        Subgroup::from_group(over.group(), self.group.clone())
    }

    /// For each element `y` of `self`, the index in `source` of `x^-1 y x`.
    pub fn conjugation_map(&self, source: &Subgroup, x: usize) -> Result<Vec<usize>> {
        let p = &self.parent;
        let xi = p.inv(x);
        self.embed
            .iter()
            .map(|&y| {
                source
                    .local_index(p.conjugate(y, xi))
                    .ok_or_else(|| Error::NotSubgroup("conjugate is not contained in the source".into()))
            })
            .collect()
    }

    /// Elements of the core `intersection of x H x^-1`.
    pub fn core(&self) -> Result<Subgroup> {
        let p = &self.parent;
        let idx: Vec<usize> = self
            .embed
            .iter()
            .copied()
            .filter(|&h| (0..p.order()).all(|x| self.member[p.conjugate(h, x)]))
            .collect();
        Self::from_indices(p, &idx)
    }
}

/// `G / N` realised as the action of `G` on the left cosets of `N`.
#[derive(Clone)]
pub struct Quotient {
    parent: Arc<PermGroup>,
    kernel: Subgroup,
    group: Arc<PermGroup>,
    proj: Arc<Vec<usize>>,
}

impl Quotient {
    pub fn new(kernel: &Subgroup) -> Result<Quotient> {
        if !kernel.is_normal() {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} in {}",
                kernel.order(),
                kernel.parent().label()
            )));
        }
        let g = kernel.parent().clone();
        let n = g.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &k in kernel.embedding() {
                coset[g.mul(x, k)] = id;
            }
        }
        let m = reps.len();
        let action = |x: usize| -> Result<Perm> {
            Perm::new(reps.iter().map(|&r| coset[g.mul(x, r)] as u32).collect())
        };
        let gens = g
            .generators()
            .iter()
            .map(|s| action(g.index_of(s).expect("generator")))
            .collect::<Result<Vec<_>>>()?;
        let group = PermGroup::generate_labeled(
            m,
            gens,
            Some(format!("{}/N{}", g.label(), kernel.order())),
        )?;
        let proj = (0..n)
            .map(|x| {
                let p = action(x)?;
                Ok(group.index_of(&p).expect("coset action lies in the quotient"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Quotient {
            parent: g,
            kernel: kernel.clone(),
            group,
            proj: Arc::new(proj),
        })
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// Image in the quotient of a parent element (by index).
    pub fn project(&self, x: usize) -> usize {
        self.proj[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.proj
    }
}

/// All subgroups of `g`, each listed once. Intended for small groups.
pub fn all_subgroups(g: &Arc<PermGroup>) -> Result<Vec<Subgroup>> {
    let mut found: Vec<Vec<bool>> = Vec::new();
    let mut out: Vec<Subgroup> = Vec::new();
    let mut frontier = vec![Subgroup::trivial(g)];
    let push = |s: Subgroup, found: &mut Vec<Vec<bool>>, out: &mut Vec<Subgroup>| -> bool {
        if found.iter().any(|m| **m == *s.member) {
            return false;
        }
        found.push(s.member.to_vec());
        out.push(s);
        true
    };
    push(frontier[0].clone(), &mut found, &mut out);
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.contains(x) {
                continue;
            }
            let mut idx = h.embedding().to_vec();
            idx.push(x);
            let s = Subgroup::from_indices(g, &idx)?;
            if push(s.clone(), &mut found, &mut out) {
                frontier.push(s);
            }
        }
    }
    out.sort_by_key(|s| (s.order(), s.embedding().to_vec()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_first_and_lex_order() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.element(0).is_identity());
        for w in s3.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(s3.num_classes(), 3);
        assert_eq!(s3.class_size(0), 1);
    }

    #[test]
    fn builtin_orders_and_classes() {
        let d4 = dihedral(4).unwrap();
        assert_eq!((d4.order(), d4.num_classes()), (8, 5));
        assert_eq!(symmetric(4).unwrap().num_classes(), 5);
        assert_eq!(symmetric(5).unwrap().num_classes(), 7);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().num_classes(), 5);
        let q = quaternion().unwrap();
        assert_eq!((q.order(), q.num_classes(), q.exponent()), (8, 5, 4));
        let c = cyclic(7).unwrap();
        assert!(c.is_abelian());
        assert_eq!(c.exponent(), 7);
        let p = product(&cyclic(2).unwrap(), &symmetric(3).unwrap()).unwrap();
        assert_eq!((p.order(), p.num_classes()), (12, 6));
    }

    #[test]
    fn class_reps_are_minimal() {
        let s4 = symmetric(4).unwrap();
        for (c, members) in s4.classes().iter().enumerate() {
            assert_eq!(s4.class_rep(c), members[0] as usize);
            assert!(members.iter().all(|&m| s4.class_of(m as usize) == c));
        }
    }

    #[test]
    fn too_large_is_rejected() {
        let s7 = Perm::new(vec![1, 2, 3, 4, 5, 6, 0]).unwrap();
        let t = Perm::new(vec![1, 0, 2, 3, 4, 5, 6]).unwrap();
        assert!(matches!(
            PermGroup::generate(7, vec![s7, t]),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn bad_permutations() {
        assert!(Perm::new(vec![0, 0]).is_err());
        let a = Perm::identity(2);
        let b = Perm::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch(2, 3))));
    }

    #[test]
    fn subgroup_membership_and_normality() {
        let s3 = symmetric(3).unwrap();
        let t = Perm::new(vec![1, 0, 2]).unwrap();
        let h = Subgroup::generated_by(&s3, vec![t]).unwrap();
        assert_eq!(h.order(), 2);
        assert!(!h.is_normal());
        assert!(matches!(Quotient::new(&h), Err(Error::NotNormal(_))));
        let r = Perm::new(vec![1, 2, 0]).unwrap();
        let a3 = Subgroup::generated_by(&s3, vec![r]).unwrap();
        assert!(a3.is_normal());
        let q = Quotient::new(&a3).unwrap();
        assert_eq!(q.group().order(), 2);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(
                    q.project(s3.mul(x, y)),
                    q.group().mul(q.project(x), q.project(y))
                );
            }
        }
        let c4 = cyclic(4).unwrap();
        assert!(matches!(
            Subgroup::generated_by(&c4, vec![Perm::new(vec![1, 0, 2, 3]).unwrap()]),
            Err(Error::NotInParent(_))
        ));
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let s3 = symmetric(3).unwrap();
        let subs = all_subgroups(&s3).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }
}
