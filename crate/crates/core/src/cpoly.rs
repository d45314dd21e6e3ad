//! Costas polynomials and shifting Costas polynomials over GF(q), the
//! `L(x^s)` family, its exact count, and brute-force censuses.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::abgroup::{isomorphism, AbelianGroup};
use crate::arith::{gcd, is_prime, totient};
use crate::circmap::{additive_group, is_standard, GroupMap};
use crate::classic::{is_circular, welch_family, ClassicError, CostasSequence};
use crate::fqpoly::{compose_monomial, enumerate_linearized_permutations, interpolate_table, FqPolynomial, LinearizedPoly, PolyError};
use crate::gf::{FieldElement, FiniteField, GfError};
use crate::perm::{factorial, for_each_in_branch};

/// Default largest field for permutation censuses.
pub const CENSUS_CAP: u32 = 9;
/// Largest field reachable with the extended flag.
pub const CENSUS_CAP_EXTENDED: u32 = 11;
/// Default largest prime for the circular sequence census.
pub const CIRCULAR_CAP: u64 = 8;
pub const CIRCULAR_CAP_EXTENDED: u64 = 11;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CpolyError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Classic(#[from] ClassicError),
    #[error("domain {0} is not cyclic of order q - 1")]
    NotCyclic(alloc::string::String),
    #[error("codomain {0} is not the additive group of the field")]
    CodomainMismatch(alloc::string::String),
    #[error("map is not standard circular Costas")]
    NotStandard,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error("{what} {value} exceeds the limit {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("p^m - 1 is too large to factor")]
    TooLarge,
}

/// Value-table view of a polynomial function with the field's
/// multiplication at hand.
struct Table<'f> {
    field: &'f FiniteField,
    values: Vec<FieldElement>,
}

impl<'f> Table<'f> {
    fn new(field: &'f FiniteField, f: &FqPolynomial) -> Result<Self, PolyError> {
        Ok(Table { field, values: f.value_table(field)? })
    }

    #[inline]
    fn at(&self, x: FieldElement) -> FieldElement {
        self.values[x.code() as usize]
    }

    fn is_perm(&self) -> bool {
        crate::fqpoly::table_is_permutation(&self.values)
    }

    /// `x -> f(dx) - f(x)` is a permutation.
    fn difference_permutes(&self, d: FieldElement, seen: &mut [bool]) -> bool {
        seen.fill(false);
        self.field.elements().all(|x| {
            let v = self.field.sub(self.at(self.field.mul(d, x)), self.at(x));
            !core::mem::replace(&mut seen[v.code() as usize], true)
        })
    }

    fn is_costas(&self) -> bool {
        let f = self.field;
        if !self.at(f.zero()).is_zero() || !self.is_perm() {
            return false;
        }
        let mut seen = vec![false; f.q() as usize];
        f.elements().filter(|&d| d != f.one()).all(|d| self.difference_permutes(d, &mut seen))
    }

    /// Witness `a(d)` for each `d != 1`, or `None`. The witness must send
    /// `1` to `f(d) - f(1)`, so only one candidate per `d` needs checking.
    fn shifting_witnesses(&self) -> Option<Vec<(FieldElement, FieldElement)>> {
        let f = self.field;
        if !self.is_perm() {
            return None;
        }
        let mut inverse = vec![f.zero(); f.q() as usize];
        for x in f.elements() {
            inverse[self.at(x).code() as usize] = x;
        }
        let one = f.one();
        let mut out = Vec::with_capacity(f.q() as usize - 1);
        for d in f.elements().filter(|&d| d != one) {
            let a = inverse[f.sub(self.at(d), self.at(one)).code() as usize];
            if a.is_zero() {
                return None;
            }
            if !f.elements().all(|x| f.sub(self.at(f.mul(d, x)), self.at(x)) == self.at(f.mul(a, x))) {
                return None;
            }
            out.push((d, a));
        }
        Some(out)
    }
}

/// `f(0) = 0`, `f` permutes GF(q), and `x -> f(dx) - f(x)` permutes
/// GF(q) for every `d != 1`, `d = 0` included.
pub fn is_costas_polynomial(field: &FiniteField, f: &FqPolynomial) -> Result<bool, CpolyError> {
    Ok(Table::new(field, f)?.is_costas())
}

/// Pairs `(d, a)` with `f(dx) - f(x) = f(ax)` for every `d != 1`, when `f`
/// is a shifting Costas polynomial.
pub fn shifting_witnesses(field: &FiniteField, f: &FqPolynomial) -> Result<Option<Vec<(FieldElement, FieldElement)>>, CpolyError> {
    Ok(Table::new(field, f)?.shifting_witnesses())
}

pub fn is_shifting_costas(field: &FiniteField, f: &FqPolynomial) -> Result<bool, CpolyError> {
    Ok(shifting_witnesses(field, f)?.is_some())
}

/// The polynomial `g` with `g(0) = 0` and `g(beta^i) = f(i)`, for a
/// standard circular Costas map `f: Z_{q-1} -> (GF(q), +)`.
pub fn map_to_polynomial(field: &FiniteField, f: &GroupMap, beta: FieldElement) -> Result<FqPolynomial, CpolyError> {
    field.check(beta)?;
    let n = field.q() as u64 - 1;
    let cyclic = AbelianGroup::cyclic(n);
    let to_cyclic = isomorphism(f.domain(), &cyclic)
        .map_err(|_| CpolyError::NotCyclic(alloc::format!("{}", f.domain())))?
        .ok_or_else(|| CpolyError::NotCyclic(alloc::format!("{}", f.domain())))?;
    if *f.codomain() != additive_group(field) {
        return Err(CpolyError::CodomainMismatch(alloc::format!("{}", f.codomain())));
    }
    if field.order(beta)? as u64 != n {
        return Err(ClassicError::NotPrimitive { p: field.q() as u64, alpha: beta.code() as i64 }.into());
    }
    if !is_standard(f) || !crate::circmap::is_circular_costas(f).unwrap_or(false) {
        return Err(CpolyError::NotStandard);
    }
    let mut values = vec![field.zero(); field.q() as usize];
    for (x, &y) in f.images().iter().enumerate() {
        let i = to_cyclic.apply(x) as i64;
        values[field.pow(beta, i)?.code() as usize] = field.from_code(y as u32)?;
    }
    Ok(interpolate_table(field, &values))
}

/// Exponents `s` in `1..=q-1` with `gcd(s, q-1) = 1`.
pub fn welch_exponents(q: u32) -> Vec<u64> {
    let n = q as u64 - 1;
    (1..=n).filter(|&s| gcd(s, n) == 1).collect()
}

/// Every raw `(L, s, L(x^s))` before deduplication.
pub fn welch_raw_pairs(field: &FiniteField) -> Result<Vec<(LinearizedPoly, u64, FqPolynomial)>, CpolyError> {
    let ls = enumerate_linearized_permutations(field)?;
    let ss = welch_exponents(field.q());
    let mut out = Vec::with_capacity(ls.len() * ss.len());
    for l in ls {
        for &s in &ss {
            let f = compose_monomial(field, &l, s);
            out.push((l.clone(), s, f));
        }
    }
    Ok(out)
}

/// Distinct canonical `L(x^s)`, sorted.
pub fn enumerate_welch_polynomials(field: &FiniteField) -> Result<Vec<FqPolynomial>, CpolyError> {
    let set: BTreeSet<FqPolynomial> = welch_raw_pairs(field)?.into_iter().map(|(_, _, f)| f).collect();
    Ok(set.into_iter().collect())
}

fn check_prime(p: u64) -> Result<(), CpolyError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CpolyError::NotPrime(p))
    }
}

/// `(q, phi(q - 1))` for `q = p^m`.
fn order_and_phi(p: u64, m: u32) -> Result<(BigUint, BigUint), CpolyError> {
    check_prime(p)?;
    let q = p.checked_pow(m).ok_or(CpolyError::TooLarge)?;
    let phi = totient(q - 1).ok_or(CpolyError::TooLarge)?;
    Ok((BigUint::from(q), BigUint::from(phi)))
}

fn big_pow(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

/// `phi(q - 1) / m * prod_{k<m} (q - p^k)`.
pub fn count_welch_polynomials(p: u64, m: u32) -> Result<BigUint, CpolyError> {
    let (q, phi) = order_and_phi(p, m)?;
    let prod: BigUint = (0..m).map(|k| &q - big_pow(p, k)).product();
    Ok(phi * prod / BigUint::from(m))
}

/// `phi(p^2 - 1) / 2 * (p^2 - p)(p^2 - 1)`.
pub fn quadratic_field_bound(p: u64) -> Result<BigUint, CpolyError> {
    let (q, phi) = order_and_phi(p, 2)?;
    Ok(phi * (&q - BigUint::from(p)) * (&q - BigUint::one()) / BigUint::from(2u32))
}

/// `phi(q-1)/m * (phi(q-1) - 1)(q - 1)(p - 1)^(m-1) p^(m-1)` for `m >= 3`.
pub fn general_bound(p: u64, m: u32) -> Result<BigUint, CpolyError> {
    if m < 3 {
        return Err(CpolyError::DegreeTooSmall(m));
    }
    let (q, phi) = order_and_phi(p, m)?;
    let rest = (&phi - BigUint::one()) * (&q - BigUint::one()) * big_pow(p - 1, m - 1) * big_pow(p, m - 1);
    Ok(phi * rest / BigUint::from(m))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `R(p, m)` in closed form:
/// `p^((m-1)(m-2)/2) * prod_{k=1}^{m-1} (p^(m-k) - 1)/(p - 1) / (phi(q-1) - 1)`.
pub fn ratio_r(p: u64, m: u32) -> Result<BigRational, CpolyError> {
    if m < 3 {
        return Err(CpolyError::DegreeTooSmall(m));
    }
    let (_, phi) = order_and_phi(p, m)?;
    let mut num = big_pow(p, (m - 1) * (m - 2) / 2);
    for k in 1..m {
        num *= (big_pow(p, m - k) - BigUint::one()) / BigUint::from(p - 1);
    }
    Ok(ratio(num, phi - BigUint::one()))
}

/// `R(p, m)` as the plain quotient of the count by the second bound.
pub fn ratio_r_raw(p: u64, m: u32) -> Result<BigRational, CpolyError> {
    Ok(ratio(count_welch_polynomials(p, m)?, general_bound(p, m)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub p: u64,
    pub m: u32,
    pub r: BigRational,
}

/// `R(p, m)` for every prime `p` and degree `m` in the given ranges.
pub fn bounds_table(pmin: u64, pmax: u64, mmin: u32, mmax: u32) -> Result<Vec<BoundsRow>, CpolyError> {
    let mut out = Vec::new();
    for p in (pmin..=pmax).filter(|&p| is_prime(p)) {
        for m in mmin.max(3)..=mmax {
            out.push(BoundsRow { p, m, r: ratio_r(p, m)? });
        }
    }
    Ok(out)
}

/// Which predicate a permutation census applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusKind {
    Shifting,
    Costas,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CensusPart {
    pub candidates: u64,
    pub found: Vec<FqPolynomial>,
}

pub fn census_guard(field: &FiniteField, extended: bool) -> Result<(), CpolyError> {
    let cap = if extended { CENSUS_CAP_EXTENDED } else { CENSUS_CAP };
    if field.q() > cap {
        return Err(CpolyError::CapExceeded { what: "field order", value: field.q() as u64, cap: cap as u64 });
    }
    Ok(())
}

/// Number of branches in a permutation census over `field`.
pub fn census_branches(field: &FiniteField) -> usize {
    field.q() as usize - 1
}

/// Permutations of GF(q) fixing 0 whose polynomial passes `kind`, sorted.
pub fn census(field: &FiniteField, kind: CensusKind, extended: bool) -> Result<CensusPart, CpolyError> {
    census_guard(field, extended)?;
    let mut out = CensusPart::default();
    for b in 0..census_branches(field) {
        let part = census_branch(field, kind, b)?;
        out.candidates += part.candidates;
        out.found.extend(part.found);
    }
    out.found.sort();
    Ok(out)
}

/// One branch of [`census`]: permutations sending `1` to the nonzero
/// element of rank `branch`.
pub fn census_branch(field: &FiniteField, kind: CensusKind, branch: usize) -> Result<CensusPart, CpolyError> {
    census_guard(field, true)?;
    let nonzero: Vec<FieldElement> = field.nonzero_elements().collect();
    let mut out = CensusPart::default();
    if branch >= nonzero.len() {
        return Ok(out);
    }
    // value slots in the order the nonzero elements are listed
    let slots: Vec<usize> = nonzero.iter().map(|x| x.code() as usize).collect();
    let mut table = Table { field, values: vec![field.zero(); field.q() as usize] };
    let mut seen = vec![false; field.q() as usize];
    for_each_in_branch(&nonzero, branch, |perm| {
        out.candidates += 1;
        for (&slot, &v) in slots.iter().zip(perm) {
            table.values[slot] = v;
        }
        let keep = match kind {
            CensusKind::Shifting => table.shifting_witnesses().is_some(),
            CensusKind::Costas => {
                let f = table.field;
                f.elements().filter(|&d| d != f.one()).all(|d| table.difference_permutes(d, &mut seen))
            }
        };
        if keep {
            out.found.push(interpolate_table(field, &table.values));
        }
    });
    Ok(out)
}

/// Shifting Costas polynomials of GF(q) by brute force.
pub fn census_shifting(field: &FiniteField, extended: bool) -> Result<Vec<FqPolynomial>, CpolyError> {
    Ok(census(field, CensusKind::Shifting, extended)?.found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularCensus {
    pub candidates: u64,
    pub found: Vec<CostasSequence>,
    pub welch: Vec<CostasSequence>,
}

impl CircularCensus {
    pub fn matches_welch(&self) -> bool {
        self.found == self.welch
    }
}

pub fn circular_guard(p: u64, extended: bool) -> Result<(), CpolyError> {
    check_prime(p)?;
    let cap = if extended { CIRCULAR_CAP_EXTENDED } else { CIRCULAR_CAP };
    if p > cap {
        return Err(CpolyError::CapExceeded { what: "prime", value: p, cap });
    }
    Ok(())
}

/// Circular Costas sequences of length `p - 1` by brute force, next to the
/// Welch family of `p`.
pub fn census_circular_prime(p: u64, extended: bool) -> Result<CircularCensus, CpolyError> {
    circular_guard(p, extended)?;
    let mut candidates = 0;
    let mut found = Vec::new();
    for b in 0..(p as usize - 1) {
        let (c, f) = circular_branch(p, b)?;
        candidates += c;
        found.extend(f);
    }
    found.sort();
    Ok(CircularCensus { candidates, found, welch: welch_family(p)? })
}

/// Sequences starting with `branch + 1`, and how many were examined.
pub fn circular_branch(p: u64, branch: usize) -> Result<(u64, Vec<CostasSequence>), CpolyError> {
    circular_guard(p, true)?;
    let values: Vec<u32> = (1..p as u32).collect();
    let mut count = 0;
    let mut found = Vec::new();
    if branch < values.len() {
        for_each_in_branch(&values, branch, |perm| {
            count += 1;
            let seq = CostasSequence::new(perm.to_vec()).expect("a permutation of 1..p-1");
            if is_circular(&seq) {
                found.push(seq);
            }
        });
    }
    Ok((count, found))
}

/// `(q - 1)!`, the size of a permutation census, if it fits.
pub fn census_size(q: u32) -> Option<u64> {
    factorial(q as u64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub q: u32,
    pub shifting: usize,
    pub shifting_costas: usize,
    /// `(s, checks passed, checks run)` for the `f(x^s)` law.
    pub composition: Vec<(u64, usize, usize)>,
    pub welch: usize,
    pub welch_costas: usize,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.shifting_costas == self.shifting && self.welch_costas == self.welch && self.composition.iter().all(|&(_, ok, n)| ok == n)
    }
}

/// Exhaustive checks at one field: every shifting polynomial is Costas;
/// `f(x^s)` is shifting exactly when `gcd(s, q-1) = 1`, for `s` in
/// `1..=q-2`; every `L(x^s)` is Costas.
pub fn lemma_checks(field: &FiniteField) -> Result<LemmaReport, CpolyError> {
    census_guard(field, false)?;
    let shifting = census_shifting(field, false)?;
    let welch = enumerate_welch_polynomials(field)?;
    let q = field.q();
    let mut report = LemmaReport { q, shifting: shifting.len(), welch: welch.len(), ..Default::default() };
    for f in &shifting {
        if is_costas_polynomial(field, f)? {
            report.shifting_costas += 1;
        }
    }
    for s in 1..(q as u64).saturating_sub(1) {
        let expect = gcd(s, q as u64 - 1) == 1;
        let mut ok = 0;
        for f in &shifting {
            if is_shifting_costas(field, &f.compose_power(field, s))? == expect {
                ok += 1;
            }
        }
        report.composition.push((s, ok, shifting.len()));
    }
    for f in &welch {
        if is_costas_polynomial(field, f)? {
            report.welch_costas += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circmap::welch_map_with;

    fn gf(p: u64, m: u32) -> FiniteField {
        FiniteField::new(p, m).unwrap()
    }

    fn mono(field: &FiniteField, c: i64, e: u64) -> FqPolynomial {
        FqPolynomial::monomial(field, field.from_int(c), e)
    }

    #[test]
    fn costas_polynomial_examples() {
        let f5 = gf(5, 1);
        assert!(is_costas_polynomial(&f5, &mono(&f5, 1, 1)).unwrap());
        assert!(is_costas_polynomial(&f5, &mono(&f5, 1, 3)).unwrap());
        assert!(!is_costas_polynomial(&f5, &mono(&f5, 1, 2)).unwrap());
    }

    #[test]
    fn shifting_examples() {
        for (p, m) in [(5, 1), (2, 2), (7, 1), (3, 2)] {
            let f = gf(p, m);
            let w = shifting_witnesses(&f, &FqPolynomial::x(&f)).unwrap().unwrap();
            assert!(w.iter().all(|&(d, a)| a == f.sub(d, f.one())));
        }
        let f5 = gf(5, 1);
        assert!(is_shifting_costas(&f5, &mono(&f5, 2, 3)).unwrap());
        assert!(!is_shifting_costas(&f5, &mono(&f5, 1, 2)).unwrap());
    }

    #[test]
    fn map_to_polynomial_examples() {
        let f5 = gf(5, 1);
        let id = LinearizedPoly::identity(&f5);
        let two = f5.from_int(2);
        let w0 = welch_map_with(&f5, two, &id, 0).unwrap();
        assert_eq!(map_to_polynomial(&f5, &w0, two).unwrap(), FqPolynomial::x(&f5));
        let w1 = welch_map_with(&f5, two, &id, 1).unwrap();
        assert_eq!(map_to_polynomial(&f5, &w1, two).unwrap(), mono(&f5, 2, 1));
        let f4 = gf(2, 2);
        let w = welch_map_with(&f4, f4.primitive_element(), &LinearizedPoly::identity(&f4), 0).unwrap();
        assert_eq!(map_to_polynomial(&f4, &w, f4.primitive_element()).unwrap(), FqPolynomial::x(&f4));
        assert!(matches!(map_to_polynomial(&f5, &w0.translated(1), two), Err(CpolyError::NotStandard)));
    }

    #[test]
    fn welch_enumeration_examples() {
        assert_eq!(enumerate_welch_polynomials(&gf(2, 2)).unwrap().len(), 6);
        let f5 = gf(5, 1);
        let expect: BTreeSet<FqPolynomial> = (1..5).flat_map(|c| [1, 3].map(|s| mono(&f5, c, s))).collect();
        let got: BTreeSet<FqPolynomial> = enumerate_welch_polynomials(&f5).unwrap().into_iter().collect();
        assert_eq!(got, expect);
        assert_eq!(enumerate_welch_polynomials(&gf(2, 3)).unwrap().len(), 336);
    }

    #[test]
    fn formula_values() {
        let u = |n: u64| BigUint::from(n);
        assert_eq!(count_welch_polynomials(2, 2).unwrap(), u(6));
        assert_eq!(count_welch_polynomials(5, 2).unwrap(), u(1920));
        assert_eq!(count_welch_polynomials(3, 1).unwrap(), u(2));
        assert_eq!(quadratic_field_bound(2).unwrap(), u(6));
        assert_eq!(quadratic_field_bound(3).unwrap(), u(96));
        assert_eq!(general_bound(2, 3).unwrap(), u(280));
        assert_eq!(general_bound(2, 2).unwrap_err(), CpolyError::DegreeTooSmall(2));
        assert_eq!(count_welch_polynomials(4, 1).unwrap_err(), CpolyError::NotPrime(4));
    }

    #[test]
    fn ratio_values() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(ratio_r(2, 3).unwrap(), r(6, 5));
        assert_eq!(ratio_r(3, 3).unwrap(), r(12, 11));
        assert_eq!(ratio_r(5, 3).unwrap(), r(30, 59));
        for (p, m) in [(2, 3), (3, 3), (5, 3), (2, 4), (3, 5)] {
            assert_eq!(ratio_r(p, m).unwrap(), ratio_r_raw(p, m).unwrap());
        }
    }

    #[test]
    fn shifting_census_small() {
        let f5 = gf(5, 1);
        let c = census(&f5, CensusKind::Shifting, false).unwrap();
        assert_eq!(c.candidates, 24);
        assert_eq!(c.found, enumerate_welch_polynomials(&f5).unwrap());
        let f4 = gf(2, 2);
        assert_eq!(census_shifting(&f4, false).unwrap(), enumerate_welch_polynomials(&f4).unwrap());
        assert!(census_shifting(&gf(11, 1), false).is_err());
    }

    #[test]
    fn circular_census_small() {
        let c = census_circular_prime(5, false).unwrap();
        assert_eq!(c.found.len(), 8);
        assert!(c.matches_welch());
        let c3 = census_circular_prime(3, false).unwrap();
        let terms: Vec<&[u32]> = c3.found.iter().map(|s| s.terms()).collect();
        assert_eq!(terms, vec![&[1, 2][..], &[2, 1][..]]);
        assert!(census_circular_prime(11, false).is_err());
    }

    #[test]
    fn lemma_reports() {
        let r5 = lemma_checks(&gf(5, 1)).unwrap();
        assert_eq!((r5.shifting, r5.shifting_costas, r5.welch, r5.welch_costas), (8, 8, 8, 8));
        assert_eq!(r5.composition.iter().map(|c| c.0).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(r5.all_pass());
        let r4 = lemma_checks(&gf(2, 2)).unwrap();
        assert_eq!((r4.shifting, r4.welch), (6, 6));
        assert_eq!(r4.composition.iter().map(|c| c.0).collect::<Vec<_>>(), vec![1, 2]);
        assert!(r4.all_pass());
    }
}
