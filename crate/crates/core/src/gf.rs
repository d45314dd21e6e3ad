//! Exact arithmetic in GF(p^m).
//!
//! A field is realized as `Z_p[x] / (modulus)`. Elements are stored as a
//! single integer code whose base-`p` digits are the coordinates
//! `(c0, c1, ..., c_{m-1})` of `c0 + c1*x + ... + c_{m-1}*x^{m-1}`, with `c0`
//! the most significant digit. Ordering codes therefore orders coordinate
//! vectors lexicographically, low degree first.
//!
//! All multiplicative operations go through exp/log tables against the
//! field's primitive element, built once at construction.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factorize, is_prime};

/// Fields above this order are rejected: exp/log tables are built eagerly.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields at or below this order also get a dense addition table.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the table limit {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, m: u32 },
    #[error("modulus must be monic of degree {0} with coefficients below p")]
    BadModulus(u32),
    #[error("modulus is reducible")]
    Reducible,
    #[error("expected {expected} coordinates in [0, {p}), got {got:?}")]
    BadCoordinates { expected: u32, p: u32, got: Vec<u32> },
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("discrete logarithm of zero is undefined")]
    ZeroLog,
}

/// An element of some [`FiniteField`]. Only meaningful together with the
/// field that produced it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement {
    tag: u32,
    code: u32,
}

impl FieldElement {
    /// Integer code of the element; `0` is the zero element and codes are
    /// ordered lexicographically by coordinates.
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    tag: u32,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({self})")
    }
}

/// Field descriptor `p^m/c0,c1,...,cm` (modulus coefficients ascending).
impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}/", self.p, self.m)?;
        write_list(f, &self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

fn write_list(f: &mut impl fmt::Write, xs: &[u32]) -> fmt::Result {
    for (i, c) in xs.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

// Dense polynomial helpers over Z_p, coefficient vectors ascending.

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = crate::arith::mod_inv(b[db] as u64, p as u64).expect("nonzero leading coefficient") as u32;
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (factor as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(m, 0);
    r
}

fn powmod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, modulus, p);
        }
        b = mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Exhaustive divisor test: no monic factor of degree 1..=deg/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return true;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits_le(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Little-endian base-p digits of `v`, `len` of them.
fn digits_le(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn fingerprint(p: u32, modulus: &[u32]) -> u32 {
    // FNV-1a
    let mut h: u32 = 0x811c_9dc5;
    for w in core::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u32;
            h = h.wrapping_mul(0x0100_0193);
        }
    }
    h
}

impl FiniteField {
    /// Field of order `p^m` with the lexicographically smallest monic
    /// irreducible modulus (lower coefficients compared from `c0` up).
    /// For `m = 1` the modulus is `x`.
    pub fn new(p: u64, m: u32) -> Result<Self, GfError> {
        Self::check_size(p, m)?;
        let pp = p as u32;
        if m == 1 {
            return Self::build(pp, 1, vec![0, 1]);
        }
        let count = (p).pow(m);
        for lex in 0..count {
            // `lex` enumerates (c0, ..., c_{m-1}) with c0 most significant.
            let mut modulus = digits_le(lex, pp, m as usize);
            modulus.reverse();
            modulus.push(1);
            if modulus[0] != 0 && is_irreducible(&modulus, pp) {
                return Self::build(pp, m, modulus);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Field with a caller-chosen modulus (ascending coefficients, monic,
    /// length `m + 1`).
    pub fn with_modulus(p: u64, m: u32, modulus: &[u32]) -> Result<Self, GfError> {
        Self::check_size(p, m)?;
        let pp = p as u32;
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= pp) {
            return Err(GfError::BadModulus(m));
        }
        if !is_irreducible(modulus, pp) {
            return Err(GfError::Reducible);
        }
        Self::build(pp, m, modulus.to_vec())
    }

    fn check_size(p: u64, m: u32) -> Result<(), GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
            _ => Err(GfError::TooLarge { p, m }),
        }
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, GfError> {
        let q = p.pow(m);
        let n = (q - 1) as u64;
        let to_code = |coords: &[u32]| coords.iter().fold(0u32, |acc, &c| acc * p + c);
        let from_code = |code: u32| {
            let mut v = digits_le(code as u64, p, m as usize);
            v.reverse();
            v
        };
        let prime_divisors: Vec<u64> = factorize(n).unwrap_or_default().into_iter().map(|(r, _)| r).collect();
        let mut primitive = None;
        for code in 1..q {
            let g = from_code(code);
            let is_one = |v: &[u32]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
            if is_one(&powmod(&g, n, &modulus, p)) && prime_divisors.iter().all(|&r| !is_one(&powmod(&g, n / r, &modulus, p))) {
                primitive = Some(g);
                break;
            }
        }
        let primitive = primitive.expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for i in 0..n as u32 {
            let c = to_code(&cur);
            exp.push(c);
            log[c as usize] = i;
            cur = mulmod(&cur, &primitive, &modulus, p);
        }
        let neg: Vec<u32> = (0..q).map(|c| to_code(&from_code(c).iter().map(|&d| (p - d) % p).collect::<Vec<_>>())).collect();
        let mut field = FiniteField {
            p,
            m,
            q,
            tag: fingerprint(p, &modulus),
            modulus,
            primitive: to_code(&primitive),
            exp,
            log,
            neg,
            add: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = Some(table);
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, ascending degree, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn wrap(&self, code: u32) -> FieldElement {
        FieldElement { tag: self.tag, code }
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.tag == self.tag && x.code < self.q
    }

    pub fn check(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(self.exp[0])
    }

    /// The integer `k` mapped into the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        let r = k.rem_euclid(self.p as i64) as u32;
        self.wrap(r * self.p.pow(self.m - 1))
    }

    pub fn from_code(&self, code: u32) -> Result<FieldElement, GfError> {
        if code < self.q {
            Ok(self.wrap(code))
        } else {
            Err(GfError::BadCoordinates { expected: self.m, p: self.p, got: self.digits(code) })
        }
    }

    /// Element from its coordinates `(c0, ..., c_{m-1})`.
    pub fn element(&self, coords: &[u32]) -> Result<FieldElement, GfError> {
        if coords.len() != self.m as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(GfError::BadCoordinates { expected: self.m, p: self.p, got: coords.to_vec() });
        }
        Ok(self.wrap(coords.iter().fold(0, |acc, &c| acc * self.p + c)))
    }

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut v = vec![0u32; self.m as usize];
        for slot in v.iter_mut().rev() {
            *slot = code % self.p;
            code /= self.p;
        }
        v
    }

    /// Coordinates `(c0, ..., c_{m-1})` of `x` in the power basis.
    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        debug_assert!(self.contains(x));
        self.digits(x.code)
    }

    /// Text form `c0,c1,...,c{m-1}`.
    pub fn format(&self, x: FieldElement) -> String {
        let mut s = String::new();
        let _ = write_list(&mut s, &self.coords(x));
        s
    }

    /// All elements in code order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|c| self.wrap(c))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(|c| self.wrap(c))
    }

    /// Smallest element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        self.wrap(self.primitive)
    }

    /// Every primitive element, in code order.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        let n = self.q - 1;
        let mut out: Vec<FieldElement> = (0..n)
            .filter(|&i| crate::arith::gcd(i as u64, n as u64) == 1)
            .map(|i| self.wrap(self.exp[i as usize]))
            .collect();
        out.sort();
        out
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let code = match &self.add {
            Some(t) => t[(a.code * self.q + b.code) as usize],
            None => self.add_digits(a.code, b.code),
        };
        self.wrap(code)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a));
        self.wrap(self.neg[a.code as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.code == 0 || b.code == 0 {
            return self.zero();
        }
        let n = self.q - 1;
        let s = self.log[a.code as usize] + self.log[b.code as usize];
        self.wrap(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if a.code == 0 {
            return Err(GfError::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.code as usize];
        Ok(self.wrap(self.exp[((n - l) % n) as usize]))
    }

    /// `a^e` for any integer `e`; the exponent is reduced mod `q - 1` for a
    /// nonzero base. `0^0 = 1`, and a negative power of zero is an error.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if a.code == 0 {
            return match e {
                0 => Ok(self.one()),
                e if e > 0 => Ok(self.zero()),
                _ => Err(GfError::ZeroInverse),
            };
        }
        Ok(self.pow_nonzero(a, e))
    }

    #[inline]
    fn pow_nonzero(&self, a: FieldElement, e: i64) -> FieldElement {
        let n = (self.q - 1) as i64;
        let l = self.log[a.code as usize] as i64;
        let k = (l * e.rem_euclid(n)) % n;
        self.wrap(self.exp[k as usize])
    }

    /// `a^e` for `e >= 0` without error handling (`0^0 = 1`).
    #[inline]
    pub fn pow_u(&self, a: FieldElement, e: u64) -> FieldElement {
        debug_assert!(self.contains(a));
        if a.code == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let n = (self.q - 1) as u64;
        let k = (self.log[a.code as usize] as u64 * (e % n)) % n;
        self.wrap(self.exp[k as usize])
    }

    /// `alpha^i` for the field's primitive element.
    #[inline]
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        let n = (self.q - 1) as i64;
        self.wrap(self.exp[i.rem_euclid(n) as usize])
    }

    /// Exponent `i` in `[0, q-1)` with `alpha^i = x`.
    pub fn dlog(&self, x: FieldElement) -> Result<u32, GfError> {
        self.check(x)?;
        if x.code == 0 {
            return Err(GfError::ZeroLog);
        }
        Ok(self.log[x.code as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElement) -> Result<u32, GfError> {
        let l = self.dlog(x)?;
        let n = self.q - 1;
        Ok(n / crate::arith::gcd(l as u64, n as u64) as u32)
    }

    /// `x^(p^j)`.
    #[inline]
    pub fn frobenius(&self, x: FieldElement, j: u32) -> FieldElement {
        self.pow_u(x, (self.p as u64).pow(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(FiniteField::new(2, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(FiniteField::new(2, 21), Err(GfError::TooLarge { .. })));
    }

    #[test]
    fn smallest_irreducible_quadratic_over_z2() {
        // Only x^2+x+1 has no root among {0,1}.
        let roots = |c0: u32, c1: u32| (0..2u32).any(|x| (c0 + c1 * x + x * x).is_multiple_of(2));
        let irreducible: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().filter(|&(a, b)| !roots(a, b)).collect();
        assert_eq!(irreducible, vec![(1, 1)]);
    }

    #[test]
    fn supplied_modulus_is_checked() {
        assert_eq!(FiniteField::with_modulus(2, 2, &[1, 0, 1]).unwrap_err(), GfError::Reducible);
        assert_eq!(FiniteField::with_modulus(2, 2, &[1, 1]).unwrap_err(), GfError::BadModulus(2));
        let f9 = FiniteField::with_modulus(3, 2, &[2, 2, 1]).unwrap();
        assert_eq!(f9.q(), 9);
        assert_ne!(f9, FiniteField::new(3, 2).unwrap());
    }

    #[test]
    fn primitive_element_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.coords(f5.primitive_element()), vec![2]);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.coords(f4.primitive_element()), vec![0, 1]);
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.primitive_element(), f2.one());
    }

    #[test]
    fn arithmetic_examples() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let a = f4.element(&[0, 1]).unwrap();
        assert_eq!(f4.coords(f4.mul(a, a)), vec![1, 1]);
        let f5 = FiniteField::new(5, 1).unwrap();
        let two = f5.from_int(2);
        assert_eq!(f5.pow(two, 3).unwrap(), f5.from_int(3));
        assert_eq!(f5.pow(two, -1).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(f5.zero()).unwrap_err(), GfError::ZeroInverse);
        assert_eq!(f5.pow(f5.zero(), -2).unwrap_err(), GfError::ZeroInverse);
        assert_eq!(f5.pow(f5.zero(), 0).unwrap(), f5.one());
        for x in f5.elements() {
            assert_eq!(f5.mul(x, f5.one()), x);
        }
    }

    #[test]
    fn dlog_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.dlog(f5.one()).unwrap(), 0);
        assert_eq!(f5.dlog(f5.from_int(3)).unwrap(), 3);
        assert_eq!(f5.dlog(f5.zero()).unwrap_err(), GfError::ZeroLog);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.dlog(f4.element(&[1, 1]).unwrap()).unwrap(), 2);
    }

    #[test]
    fn mismatched_fields_are_detected() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f5.dlog(f7.one()).unwrap_err(), GfError::FieldMismatch);
        assert!(!f5.contains(f7.one()));
    }

    #[test]
    fn element_text_form() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let x = f9.element(&[2, 1]).unwrap();
        assert_eq!(f9.format(x), "2,1");
        assert_eq!(alloc::format!("{f9}"), "3^2/1,0,1");
        assert_eq!(alloc::format!("{}", FiniteField::new(2, 2).unwrap()), "2^2/1,1,1");
    }
}
