//! Polynomials over GF(q) in canonical form modulo `x^q - x`.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{FieldElement, FiniteField, GfError};

/// Default cap on the `q^m` coefficient tuples scanned when enumerating
/// linearized permutation polynomials.
pub const LINEARIZED_CANDIDATE_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("abscissa {0} appears more than once")]
    DuplicateAbscissa(u32),
    #[error("interpolation needs exactly {expected} points, got {got}")]
    PointCount { expected: u32, got: usize },
    #[error("enumeration would scan {candidates} candidates, above the cap {cap}")]
    CapExceeded { candidates: u64, cap: u64 },
}

/// A polynomial of degree at most `q - 1`, ascending coefficients with
/// trailing zeros trimmed. Canonical forms are equal iff they define the
/// same function on GF(q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqPolynomial {
    coeffs: Vec<FieldElement>,
}

/// Folds an exponent into `[0, q-1]` without touching the constant term.
#[inline]
pub fn fold_exponent(e: u64, q: u32) -> u64 {
    let q = q as u64;
    if e >= q {
        (e - 1) % (q - 1) + 1
    } else {
        e
    }
}

impl FqPolynomial {
    /// Canonical reduction of a raw coefficient vector (index = exponent).
    pub fn reduce(field: &FiniteField, raw: &[FieldElement]) -> Result<Self, PolyError> {
        Self::from_terms(field, raw.iter().enumerate().map(|(e, &c)| (e as u64, c)))
    }

    /// Canonical reduction of `sum c * x^e` over the given terms; colliding
    /// exponents are summed.
    pub fn from_terms(field: &FiniteField, terms: impl IntoIterator<Item = (u64, FieldElement)>) -> Result<Self, PolyError> {
        let mut coeffs = vec![field.zero(); field.q() as usize];
        for (e, c) in terms {
            field.check(c)?;
            let slot = &mut coeffs[fold_exponent(e, field.q()) as usize];
            *slot = field.add(*slot, c);
        }
        Ok(Self::trimmed(coeffs))
    }

    fn trimmed(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        FqPolynomial { coeffs: Vec::new() }
    }

    pub fn x(field: &FiniteField) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &FiniteField, c: FieldElement, e: u64) -> Self {
        Self::from_terms(field, [(e, c)]).expect("coefficient from this field")
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, FieldElement)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn check_field(&self, field: &FiniteField) -> Result<(), PolyError> {
        for &c in &self.coeffs {
            field.check(c)?;
        }
        Ok(())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, field: &FiniteField, x: FieldElement) -> Result<FieldElement, PolyError> {
        self.check_field(field)?;
        field.check(x)?;
        Ok(self.eval_unchecked(field, x))
    }

    #[inline]
    fn eval_unchecked(&self, field: &FiniteField, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Values at every element, indexed by element code.
    pub fn value_table(&self, field: &FiniteField) -> Result<Vec<FieldElement>, PolyError> {
        self.check_field(field)?;
        Ok(field.elements().map(|x| self.eval_unchecked(field, x)).collect())
    }

    /// True iff the polynomial function is a bijection of GF(q).
    pub fn is_permutation(&self, field: &FiniteField) -> Result<bool, PolyError> {
        Ok(table_is_permutation(&self.value_table(field)?))
    }

    /// Canonical form of `f(x^s)`.
    pub fn compose_power(&self, field: &FiniteField, s: u64) -> FqPolynomial {
        let q = field.q();
        let terms: Vec<_> = self.terms().map(|(e, c)| (fold_exponent(e as u64, q) * s, c)).collect();
        Self::from_terms(field, terms).expect("coefficients already checked")
    }
}

/// True iff a value table (indexed by code) hits every element exactly once.
pub fn table_is_permutation(values: &[FieldElement]) -> bool {
    let mut seen = vec![false; values.len()];
    for v in values {
        let c = v.code() as usize;
        if c >= seen.len() || seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// How [`interpolate`] treats an incomplete point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Exactly `q` points are required.
    #[default]
    Exact,
    /// Missing abscissae are filled with the value zero.
    Total,
}

/// The unique canonical polynomial through the given points.
pub fn interpolate(field: &FiniteField, points: &[(FieldElement, FieldElement)], mode: Interpolation) -> Result<FqPolynomial, PolyError> {
    let q = field.q();
    if mode == Interpolation::Exact && points.len() != q as usize {
        return Err(PolyError::PointCount { expected: q, got: points.len() });
    }
    let mut values = vec![field.zero(); q as usize];
    let mut seen = vec![false; q as usize];
    for &(x, y) in points {
        field.check(x)?;
        field.check(y)?;
        let c = x.code() as usize;
        if seen[c] {
            return Err(PolyError::DuplicateAbscissa(x.code()));
        }
        seen[c] = true;
        values[c] = y;
    }
    Ok(interpolate_table(field, &values))
}

/// Interpolates a full value table (indexed by code).
///
/// Uses `c_0 = g(0)` and `c_n = -sum_a g(a) a^(q-1-n)` for `1 <= n <= q-1`,
/// with `0^0 = 1`.
pub fn interpolate_table(field: &FiniteField, values: &[FieldElement]) -> FqPolynomial {
    let q = field.q() as usize;
    assert_eq!(values.len(), q, "value table must cover the field");
    let mut coeffs = vec![field.zero(); q];
    coeffs[0] = values[0];
    let nonzero: Vec<(u32, FieldElement)> = field
        .nonzero_elements()
        .filter_map(|a| {
            let v = values[a.code() as usize];
            (!v.is_zero()).then(|| (field.dlog(a).expect("nonzero"), v))
        })
        .collect();
    let n1 = (q - 1) as u64;
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let e = (q - 1 - n) as u64;
        let mut acc = if n == q - 1 { values[0] } else { field.zero() };
        for &(log_a, v) in &nonzero {
            let a_pow = field.alpha_pow(((log_a as u64 * e) % n1) as i64);
            acc = field.add(acc, field.mul(v, a_pow));
        }
        *slot = field.neg(acc);
    }
    FqPolynomial::trimmed(coeffs)
}

/// `L(x) = sum_j c_j x^(p^j)` for `j < m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearizedPoly {
    lcoeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(field: &FiniteField, lcoeffs: Vec<FieldElement>) -> Result<Self, PolyError> {
        if lcoeffs.len() != field.m() as usize {
            return Err(GfError::BadCoordinates {
                expected: field.m(),
                p: field.p(),
                got: lcoeffs.iter().map(|c| c.code()).collect(),
            }
            .into());
        }
        for &c in &lcoeffs {
            field.check(c)?;
        }
        Ok(LinearizedPoly { lcoeffs })
    }

    /// `L(x) = x`.
    pub fn identity(field: &FiniteField) -> Self {
        let mut lcoeffs = vec![field.zero(); field.m() as usize];
        lcoeffs[0] = field.one();
        LinearizedPoly { lcoeffs }
    }

    pub fn lcoeffs(&self) -> &[FieldElement] {
        &self.lcoeffs
    }

    #[inline]
    pub fn evaluate(&self, field: &FiniteField, x: FieldElement) -> FieldElement {
        self.lcoeffs
            .iter()
            .enumerate()
            .fold(field.zero(), |acc, (j, &c)| if c.is_zero() { acc } else { field.add(acc, field.mul(c, field.frobenius(x, j as u32))) })
    }

    pub fn is_permutation(&self, field: &FiniteField) -> bool {
        let mut seen = vec![false; field.q() as usize];
        field.elements().all(|x| {
            let y = self.evaluate(field, x).code() as usize;
            !core::mem::replace(&mut seen[y], true)
        })
    }

    pub fn to_polynomial(&self, field: &FiniteField) -> FqPolynomial {
        let p = field.p() as u64;
        FqPolynomial::from_terms(field, self.lcoeffs.iter().enumerate().map(|(j, &c)| (p.pow(j as u32), c))).expect("checked at construction")
    }
}

/// Canonical form of `L(x^s)`.
pub fn compose_monomial(field: &FiniteField, l: &LinearizedPoly, s: u64) -> FqPolynomial {
    let p = field.p() as u64;
    FqPolynomial::from_terms(field, l.lcoeffs.iter().enumerate().map(|(j, &c)| (s * p.pow(j as u32), c))).expect("checked at construction")
}

/// Lazily yields every linearized permutation polynomial of the field,
/// in lexicographic order of `(c_0, ..., c_{m-1})` by element code.
pub fn linearized_permutations(field: &FiniteField, cap: u64) -> Result<LinearizedPermutations<'_>, PolyError> {
    let q = field.q() as u64;
    let candidates = q.checked_pow(field.m()).unwrap_or(u64::MAX);
    if candidates > cap {
        return Err(PolyError::CapExceeded { candidates, cap });
    }
    Ok(LinearizedPermutations { field, next: 0, end: candidates })
}

/// Collects [`linearized_permutations`] under the default cap.
pub fn enumerate_linearized_permutations(field: &FiniteField) -> Result<Vec<LinearizedPoly>, PolyError> {
    Ok(linearized_permutations(field, LINEARIZED_CANDIDATE_CAP)?.collect())
}

pub struct LinearizedPermutations<'f> {
    field: &'f FiniteField,
    next: u64,
    end: u64,
}

impl Iterator for LinearizedPermutations<'_> {
    type Item = LinearizedPoly;

    fn next(&mut self) -> Option<LinearizedPoly> {
        let q = self.field.q() as u64;
        let m = self.field.m() as usize;
        while self.next < self.end {
            let mut idx = self.next;
            self.next += 1;
            let mut lcoeffs = vec![self.field.zero(); m];
            for slot in lcoeffs.iter_mut().rev() {
                *slot = self.field.from_code((idx % q) as u32).expect("code below q");
                idx /= q;
            }
            let l = LinearizedPoly { lcoeffs };
            if l.is_permutation(self.field) {
                return Some(l);
            }
        }
        None
    }
}

/// `prod_{k<m} (p^m - p^k)`, the number of linearized permutation
/// polynomials of GF(p^m).
pub fn linearized_permutation_count(p: u64, m: u32) -> num_bigint::BigUint {
    let q = num_bigint::BigUint::from(p).pow(m);
    (0..m).map(|k| &q - num_bigint::BigUint::from(p).pow(k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> FiniteField {
        FiniteField::new(p, m).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let f4 = gf(2, 2);
        let x4 = FqPolynomial::monomial(&f4, f4.one(), 4);
        assert_eq!(x4, FqPolynomial::x(&f4));
        let f5 = gf(5, 1);
        assert_eq!(FqPolynomial::monomial(&f5, f5.one(), 7), FqPolynomial::monomial(&f5, f5.one(), 3));
        assert!(FqPolynomial::reduce(&f5, &[f5.zero(); 6]).unwrap().is_zero());
        // constant term is never folded
        let c = FqPolynomial::reduce(&f5, &[f5.one()]).unwrap();
        assert_eq!(c.degree(), Some(0));
    }

    #[test]
    fn evaluate_examples() {
        let f5 = gf(5, 1);
        let x3 = FqPolynomial::monomial(&f5, f5.one(), 3);
        assert_eq!(x3.evaluate(&f5, f5.from_int(2)).unwrap(), f5.from_int(3));
        let f4 = gf(2, 2);
        let a = f4.primitive_element();
        let ax2 = FqPolynomial::monomial(&f4, a, 2);
        assert_eq!(ax2.evaluate(&f4, a).unwrap(), f4.one());
        let f7 = gf(7, 1);
        assert!(ax2.evaluate(&f7, f7.one()).is_err());
    }

    #[test]
    fn interpolate_examples() {
        let f5 = gf(5, 1);
        let ident: Vec<_> = f5.elements().map(|x| (x, x)).collect();
        assert_eq!(interpolate(&f5, &ident, Interpolation::Exact).unwrap(), FqPolynomial::x(&f5));
        let zero: Vec<_> = f5.elements().map(|x| (x, f5.zero())).collect();
        assert!(interpolate(&f5, &zero, Interpolation::Exact).unwrap().is_zero());
        let pts: Vec<_> = [(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)].iter().map(|&(a, b)| (f5.from_int(a), f5.from_int(b))).collect();
        assert_eq!(interpolate(&f5, &pts, Interpolation::Exact).unwrap(), FqPolynomial::monomial(&f5, f5.from_int(2), 1));
    }

    #[test]
    fn interpolate_errors_and_total_mode() {
        let f5 = gf(5, 1);
        let dup = [(f5.one(), f5.one()), (f5.one(), f5.zero())];
        assert_eq!(interpolate(&f5, &dup, Interpolation::Total).unwrap_err(), PolyError::DuplicateAbscissa(1));
        let partial = [(f5.one(), f5.one())];
        assert_eq!(interpolate(&f5, &partial, Interpolation::Exact).unwrap_err(), PolyError::PointCount { expected: 5, got: 1 });
        let f = interpolate(&f5, &partial, Interpolation::Total).unwrap();
        let t = f.value_table(&f5).unwrap();
        assert_eq!(t[1], f5.one());
        assert!(t.iter().enumerate().all(|(i, v)| i == 1 || v.is_zero()));
    }

    #[test]
    fn permutation_examples() {
        let f5 = gf(5, 1);
        assert!(FqPolynomial::x(&f5).is_permutation(&f5).unwrap());
        assert!(!FqPolynomial::monomial(&f5, f5.one(), 2).is_permutation(&f5).unwrap());
        let f4 = gf(2, 2);
        assert!(FqPolynomial::monomial(&f4, f4.one(), 2).is_permutation(&f4).unwrap());
    }

    #[test]
    fn linearized_counts() {
        assert_eq!(enumerate_linearized_permutations(&gf(2, 2)).unwrap().len(), 6);
        let f5 = gf(5, 1);
        let ls = enumerate_linearized_permutations(&f5).unwrap();
        let scalars: Vec<_> = ls.iter().map(|l| l.lcoeffs()[0]).collect();
        assert_eq!(scalars, (1..5).map(|k| f5.from_int(k)).collect::<Vec<_>>());
        assert_eq!(enumerate_linearized_permutations(&gf(2, 3)).unwrap().len(), 168);
        assert!(matches!(linearized_permutations(&gf(2, 5), 1000), Err(PolyError::CapExceeded { .. })));
    }

    #[test]
    fn compose_monomial_examples() {
        let f5 = gf(5, 1);
        assert_eq!(compose_monomial(&f5, &LinearizedPoly::identity(&f5), 1), FqPolynomial::x(&f5));
        let l2 = LinearizedPoly::new(&f5, vec![f5.from_int(2)]).unwrap();
        assert_eq!(compose_monomial(&f5, &l2, 3), FqPolynomial::monomial(&f5, f5.from_int(2), 3));
        let f4 = gf(2, 2);
        let sq = LinearizedPoly::new(&f4, vec![f4.zero(), f4.one()]).unwrap();
        assert_eq!(compose_monomial(&f4, &sq, 3), FqPolynomial::monomial(&f4, f4.one(), 3));
    }
}
