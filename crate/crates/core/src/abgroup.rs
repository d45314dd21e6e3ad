//! Finite abelian groups `Z_{n1} x ... x Z_{nh}`.
//!
//! Elements are mixed-radix tuples. Every element also has an index in
//! `0..order`, row-major with the first factor most significant, so index
//! order is lexicographic order on coordinates. Maps between groups are
//! stored as index tables.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{factorize, gcd, mod_inv};

/// Groups up to this order get isomorphism witness tables.
pub const WITNESS_CAP: u64 = 1 << 20;
/// Automorphism enumeration limit for elementary abelian groups.
pub const AUT_CAP_ELEMENTARY: u64 = 10_000;
/// Automorphism enumeration limit for everything else.
pub const AUT_CAP_GENERAL: u64 = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("cyclic factor {0} is below 2")]
    BadFactor(u64),
    #[error("group order overflows")]
    Overflow,
    #[error("cannot parse group descriptor {0:?}")]
    Parse(String),
    #[error("element {got:?} does not fit {group}")]
    BadElement { group: String, got: Vec<u64> },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("group order {order} exceeds the limit {cap}")]
    CapExceeded { order: u64, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// `(3,1)`
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `Z4xZ5`; the trivial group prints as `Z1`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Parse(s.into());
        let mut factors = Vec::new();
        for part in s.trim().split(['x', 'X', '*', '×']) {
            let part = part.trim();
            let digits = part.strip_prefix('Z').or_else(|| part.strip_prefix('z')).ok_or_else(bad)?;
            let n: u64 = digits.parse().map_err(|_| bad())?;
            if n != 1 {
                factors.push(n);
            }
        }
        AbelianGroup::new(factors)
    }
}

impl AbelianGroup {
    /// Product of cyclic groups of the given orders (each at least 2; an
    /// empty list is the trivial group).
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        let mut order = 1u64;
        for &n in &factors {
            if n < 2 {
                return Err(GroupError::BadFactor(n));
            }
            order = order.checked_mul(n).ok_or(GroupError::Overflow)?;
        }
        if order > usize::MAX as u64 {
            return Err(GroupError::Overflow);
        }
        Ok(AbelianGroup { factors, order })
    }

    /// `Z_n`, or the trivial group for `n = 1`.
    pub fn cyclic(n: u64) -> Self {
        AbelianGroup::new(if n == 1 { vec![] } else { vec![n] }).expect("n >= 1")
    }

    /// `Z_p^m`.
    pub fn elementary(p: u64, m: u32) -> Self {
        AbelianGroup::new(vec![p; m as usize]).expect("p >= 2")
    }

    /// `self x other` with `self`'s factors first.
    pub fn product(&self, other: &AbelianGroup) -> Result<Self, GroupError> {
        AbelianGroup::new(self.factors.iter().chain(&other.factors).copied().collect())
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.order as usize
    }

    /// `(p, p^a)` for every primary cyclic component, sorted.
    pub fn primary_components(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self.factors.iter().flat_map(|&n| prime_power_parts(n)).map(|(p, pa, _)| (p, pa)).collect();
        out.sort_unstable();
        out
    }

    /// Invariant factors `d1 | d2 | ... | dk`, each above 1.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let comps = self.primary_components();
        let mut primes: Vec<u64> = comps.iter().map(|c| c.0).collect();
        primes.dedup();
        let width = primes.iter().map(|&p| comps.iter().filter(|c| c.0 == p).count()).max().unwrap_or(0);
        let mut out = vec![1u64; width];
        for &p in &primes {
            // powers of p in decreasing order fill from the largest factor down
            let mut powers: Vec<u64> = comps.iter().filter(|c| c.0 == p).map(|c| c.1).collect();
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, pa) in powers.into_iter().enumerate() {
                out[width - 1 - i] *= pa;
            }
        }
        out
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors().len() <= 1
    }

    /// `Some((p, m))` when the group is `Z_p^m`.
    pub fn is_elementary_abelian(&self) -> Option<(u64, u32)> {
        let inv = self.invariant_factors();
        let p = *inv.first()?;
        (inv.iter().all(|&d| d == p) && crate::arith::is_prime(p)).then_some((p, inv.len() as u32))
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors().last().copied().unwrap_or(1)
    }

    pub fn element(&self, coords: &[u64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.factors.len() || coords.iter().zip(&self.factors).any(|(c, n)| c >= n) {
            return Err(GroupError::BadElement { group: alloc::format!("{self}"), got: coords.to_vec() });
        }
        Ok(GroupElement { coords: coords.to_vec() })
    }

    /// Element from arbitrary integers, each reduced into its factor.
    pub fn element_mod(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.factors.len() {
            return Err(GroupError::BadElement { group: alloc::format!("{self}"), got: coords.iter().map(|&c| c as u64).collect() });
        }
        Ok(GroupElement { coords: coords.iter().zip(&self.factors).map(|(&c, &n)| c.rem_euclid(n as i64) as u64).collect() })
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.coords.len() == self.factors.len() && e.coords.iter().zip(&self.factors).all(|(c, n)| c < n)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.factors.len()] }
    }

    pub fn index_of(&self, e: &GroupElement) -> usize {
        debug_assert!(self.contains(e));
        e.coords.iter().zip(&self.factors).fold(0u64, |acc, (&c, &n)| acc * n + c) as usize
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        debug_assert!(idx < self.size());
        let mut coords = vec![0u64; self.factors.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(|i| self.element_at(i))
    }

    fn checked(&self, e: &GroupElement) -> Result<(), GroupError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.checked(a)?;
        self.checked(b)?;
        Ok(GroupElement { coords: a.coords.iter().zip(&b.coords).zip(&self.factors).map(|((x, y), n)| (x + y) % n).collect() })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.checked(a)?;
        Ok(GroupElement { coords: a.coords.iter().zip(&self.factors).map(|(x, n)| (n - x) % n).collect() })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(a, &self.neg(b)?)
    }

    /// `k * a`.
    pub fn scale(&self, a: &GroupElement, k: u64) -> GroupElement {
        GroupElement { coords: a.coords.iter().zip(&self.factors).map(|(&x, &n)| ((x as u128 * k as u128) % n as u128) as u64).collect() }
    }

    /// Index-level arithmetic for hot loops. Callers guarantee indices are
    /// in range.
    pub fn ops(&self) -> IndexOps {
        IndexOps::new(self)
    }
}

/// Index-level addition and subtraction for one group, with dense tables
/// when the group is small.
#[derive(Debug, Clone)]
pub struct IndexOps {
    factors: Vec<u64>,
    order: usize,
    table: Option<(Vec<u32>, Vec<u32>)>,
}

const DENSE_OPS_LIMIT: usize = 1024;

impl IndexOps {
    fn new(g: &AbelianGroup) -> Self {
        let mut ops = IndexOps { factors: g.factors.clone(), order: g.size(), table: None };
        if ops.order <= DENSE_OPS_LIMIT {
            let n = ops.order;
            let mut add = vec![0u32; n * n];
            let mut sub = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    add[a * n + b] = ops.combine(a, b, false) as u32;
                    sub[a * n + b] = ops.combine(a, b, true) as u32;
                }
            }
            ops.table = Some((add, sub));
        }
        ops
    }

    fn combine(&self, mut a: usize, mut b: usize, subtract: bool) -> usize {
        if self.factors.len() == 1 {
            let n = self.order;
            return if subtract { (a + n - b) % n } else { (a + b) % n };
        }
        let mut out = 0usize;
        let mut place = 1usize;
        for &n in self.factors.iter().rev() {
            let n = n as usize;
            let (x, y) = (a % n, b % n);
            let d = if subtract { (x + n - y) % n } else { (x + y) % n };
            out += d * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some((add, _)) => add[a * self.order + b] as usize,
            None => self.combine(a, b, false),
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some((_, sub)) => sub[a * self.order + b] as usize,
            None => self.combine(a, b, true),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Splits `n` into its prime-power parts `(p, p^a, a)`.
fn prime_power_parts(n: u64) -> Vec<(u64, u64, u32)> {
    factorize(n).expect("factor orders are small").into_iter().map(|(p, a)| (p, p.pow(a), a)).collect()
}

pub fn is_isomorphic(g: &AbelianGroup, h: &AbelianGroup) -> bool {
    g.invariant_factors() == h.invariant_factors()
}

/// A group isomorphism stored as an index table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    source: AbelianGroup,
    target: AbelianGroup,
    table: Vec<usize>,
}

impl Isomorphism {
    pub fn identity(g: &AbelianGroup) -> Self {
        Isomorphism { source: g.clone(), target: g.clone(), table: (0..g.size()).collect() }
    }

    /// Wraps a table after checking it is a bijective homomorphism.
    pub fn from_table(source: &AbelianGroup, target: &AbelianGroup, table: Vec<usize>) -> Option<Self> {
        let iso = Isomorphism { source: source.clone(), target: target.clone(), table };
        iso.is_valid().then_some(iso)
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, idx: usize) -> usize {
        self.table[idx]
    }

    pub fn apply_element(&self, e: &GroupElement) -> GroupElement {
        self.target.element_at(self.table[self.source.index_of(e)])
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut table = vec![0; self.table.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Isomorphism { source: self.target.clone(), target: self.source.clone(), table }
    }

    /// Exhaustive check: bijective and additive.
    pub fn is_valid(&self) -> bool {
        let n = self.source.size();
        if self.table.len() != n || self.target.size() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &j in &self.table {
            if j >= n || core::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        let (s, t) = (self.source.ops(), self.target.ops());
        (0..n).all(|a| (0..n).all(|b| self.table[s.add(a, b)] == t.add(self.table[a], self.table[b])))
    }
}

/// An explicit isomorphism `g -> h`, built by splitting every cyclic factor
/// into primary parts (CRT) and matching parts of equal prime-power order.
pub fn isomorphism(g: &AbelianGroup, h: &AbelianGroup) -> Result<Option<Isomorphism>, GroupError> {
    if !is_isomorphic(g, h) {
        return Ok(None);
    }
    if g.order > WITNESS_CAP {
        return Err(GroupError::CapExceeded { order: g.order, cap: WITNESS_CAP });
    }
    // (p, p^a, factor index) in canonical order
    let parts = |grp: &AbelianGroup| {
        let mut v: Vec<(u64, u64, usize)> =
            grp.factors.iter().enumerate().flat_map(|(i, &n)| prime_power_parts(n).into_iter().map(move |(p, pa, _)| (p, pa, i))).collect();
        v.sort_unstable();
        v
    };
    let gp = parts(g);
    let hp = parts(h);
    debug_assert!(gp.iter().zip(&hp).all(|(a, b)| a.0 == b.0 && a.1 == b.1));
    let mut table = Vec::with_capacity(g.size());
    for e in g.elements() {
        let mut coords = vec![0u64; h.factors.len()];
        // CRT: accumulate each residue into its target factor
        for (gpart, hpart) in gp.iter().zip(&hp) {
            let r = e.coords[gpart.2] % gpart.1;
            let n = h.factors[hpart.2];
            let m = n / hpart.1;
            let lift = (m as u128 * mod_inv(m % hpart.1, hpart.1).unwrap_or(0) as u128) % n as u128;
            coords[hpart.2] = ((coords[hpart.2] as u128 + r as u128 * lift) % n as u128) as u64;
        }
        table.push(h.index_of(&GroupElement { coords }));
    }
    Ok(Some(Isomorphism { source: g.clone(), target: h.clone(), table }))
}

/// Streams every automorphism of `g` as an index table, each exactly once.
pub fn automorphisms(g: &AbelianGroup) -> Result<Automorphisms, GroupError> {
    if g.factors.is_empty() {
        return Ok(Automorphisms { group: g.clone(), kind: Kind::Trivial(false) });
    }
    if let Some((p, m)) = g.is_elementary_abelian() {
        if g.order > AUT_CAP_ELEMENTARY {
            return Err(GroupError::CapExceeded { order: g.order, cap: AUT_CAP_ELEMENTARY });
        }
        let total = p.checked_pow(m * m).ok_or(GroupError::Overflow)?;
        return Ok(Automorphisms { group: g.clone(), kind: Kind::Matrices { p, m: m as usize, next: 0, total } });
    }
    if g.order > AUT_CAP_GENERAL {
        return Err(GroupError::CapExceeded { order: g.order, cap: AUT_CAP_GENERAL });
    }
    let candidates: Vec<Vec<usize>> =
        g.factors.iter().map(|&n| g.elements().filter(|e| g.scale(e, n) == g.zero()).map(|e| g.index_of(&e)).collect()).collect();
    let counter = vec![0; candidates.len()];
    Ok(Automorphisms { group: g.clone(), kind: Kind::Generators { candidates, counter, done: false } })
}

/// Collected automorphism tables of `a x b` for coprime `|a|`, `|b|`, as
/// pairs from `Aut(a) x Aut(b)`; otherwise by direct enumeration.
pub fn product_automorphisms(a: &AbelianGroup, b: &AbelianGroup) -> Result<Vec<Vec<usize>>, GroupError> {
    let ab = a.product(b)?;
    if gcd(a.order, b.order) != 1 {
        return Ok(automorphisms(&ab)?.collect());
    }
    let aa: Vec<Vec<usize>> = automorphisms(a)?.collect();
    let bb: Vec<Vec<usize>> = automorphisms(b)?.collect();
    let nb = b.size();
    let mut out = Vec::with_capacity(aa.len() * bb.len());
    for ta in &aa {
        for tb in &bb {
            out.push((0..ab.size()).map(|i| ta[i / nb] * nb + tb[i % nb]).collect());
        }
    }
    Ok(out)
}

pub struct Automorphisms {
    group: AbelianGroup,
    kind: Kind,
}

enum Kind {
    Trivial(bool),
    Matrices { p: u64, m: usize, next: u64, total: u64 },
    Generators { candidates: Vec<Vec<usize>>, counter: Vec<usize>, done: bool },
}

fn invertible_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> bool {
    let m = rows.len();
    for col in 0..m {
        let Some(piv) = (col..m).find(|&r| rows[r][col] != 0) else {
            return false;
        };
        rows.swap(col, piv);
        let inv = mod_inv(rows[col][col], p).expect("p prime");
        let pivot = rows[col].clone();
        for row in &mut rows[col + 1..] {
            let f = row[col] * inv % p;
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot).skip(col) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
    }
    true
}

impl Iterator for Automorphisms {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let g = &self.group;
        match &mut self.kind {
            Kind::Trivial(done) => {
                if *done {
                    return None;
                }
                *done = true;
                Some(vec![0])
            }
            Kind::Matrices { p, m, next, total } => {
                let (p, m) = (*p, *m);
                while *next < *total {
                    let mut code = *next;
                    *next += 1;
                    let mut rows = vec![vec![0u64; m]; m];
                    for r in rows.iter_mut().rev() {
                        for c in r.iter_mut().rev() {
                            *c = code % p;
                            code /= p;
                        }
                    }
                    if !invertible_mod_p(rows.clone(), p) {
                        continue;
                    }
                    // generator i maps to row i; v -> v * M
                    let table = g
                        .elements()
                        .map(|v| {
                            let img: Vec<u64> = (0..m).map(|c| (0..m).map(|i| v.coords[i] * rows[i][c]).sum::<u64>() % p).collect();
                            g.index_of(&GroupElement { coords: img })
                        })
                        .collect();
                    return Some(table);
                }
                None
            }
            Kind::Generators { candidates, counter, done } => {
                let ops = g.ops();
                while !*done {
                    let images: Vec<GroupElement> = counter.iter().zip(candidates.iter()).map(|(&c, cands)| g.element_at(cands[c])).collect();
                    // advance the odometer, last generator fastest
                    let mut i = counter.len();
                    loop {
                        if i == 0 {
                            *done = true;
                            break;
                        }
                        i -= 1;
                        counter[i] += 1;
                        if counter[i] < candidates[i].len() {
                            break;
                        }
                        counter[i] = 0;
                    }
                    let image_idx: Vec<usize> = images.iter().map(|e| g.index_of(e)).collect();
                    let mut table = Vec::with_capacity(g.size());
                    let mut seen = vec![false; g.size()];
                    let mut ok = true;
                    for v in g.elements() {
                        let mut acc = 0usize;
                        for (i, &c) in v.coords.iter().enumerate() {
                            for _ in 0..c {
                                acc = ops.add(acc, image_idx[i]);
                            }
                        }
                        if core::mem::replace(&mut seen[acc], true) {
                            ok = false;
                            break;
                        }
                        table.push(acc);
                    }
                    if ok {
                        return Some(table);
                    }
                }
                None
            }
        }
    }
}
