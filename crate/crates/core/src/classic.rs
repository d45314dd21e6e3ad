//! Two-dimensional Costas sequences.
//!
//! A sequence is stored with 0-based positions and 1-based values, so
//! `a_0, ..., a_{n-1}` is a permutation of `1..=n`. Circular checks reduce
//! values modulo `n + 1` with representatives `0..=n`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{is_prime, order_mod_prime};

/// Orders above this need an explicit opt-in for [`enumerate_costas`].
pub const DEFAULT_CENSUS_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicError {
    #[error("terms are not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("{0} is not a prime of at least 3")]
    BadPrime(u64),
    #[error("{alpha} is not a primitive root mod {p}")]
    NotPrimitive { p: u64, alpha: i64 },
    #[error("order {n} exceeds the census limit {limit}")]
    CapExceeded { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CostasSequence {
    terms: Vec<u32>,
}

impl CostasSequence {
    /// Wraps `terms` after checking it is a permutation of `1..=n`. The
    /// Costas property itself is checked by [`is_costas`].
    pub fn new(terms: Vec<u32>) -> Result<Self, ClassicError> {
        let n = terms.len();
        let mut seen = vec![false; n + 1];
        for &t in &terms {
            let t = t as usize;
            if t == 0 || t > n || seen[t] {
                return Err(ClassicError::NotPermutation(n));
            }
            seen[t] = true;
        }
        Ok(CostasSequence { terms })
    }

    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Cyclic rotation starting at position `r`.
    pub fn rotated(&self, r: usize) -> CostasSequence {
        let mut terms = self.terms.clone();
        if !terms.is_empty() {
            terms.rotate_left(r % self.terms.len());
        }
        CostasSequence { terms }
    }

    /// Text grid: column `i` holds a one in row `a_i`, rows drawn from `n`
    /// at the top down to `1`.
    pub fn render_grid(&self) -> String {
        let n = self.len();
        let mut out = String::new();
        for row in (1..=n as u32).rev() {
            for (i, &t) in self.terms.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push(if t == row { '1' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

/// `2,4,3,1`
impl fmt::Display for CostasSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Row `k - 1` holds `a_{i+k} - a_i` for `i = 0..n-k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTriangle {
    pub rows: Vec<Vec<i64>>,
}

pub fn difference_triangle(seq: &CostasSequence) -> DifferenceTriangle {
    let a = &seq.terms;
    let n = a.len();
    let rows = (1..n).map(|k| (0..n - k).map(|i| a[i + k] as i64 - a[i] as i64).collect()).collect();
    DifferenceTriangle { rows }
}

/// Distinct difference property: no row of the triangle repeats a value.
pub fn is_costas(seq: &CostasSequence) -> bool {
    let n = seq.len();
    let mut seen = vec![usize::MAX; 2 * n + 1];
    for (k, row) in difference_triangle(seq).rows.iter().enumerate() {
        for &d in row {
            let slot = &mut seen[(d + n as i64) as usize];
            if *slot == k {
                return false;
            }
            *slot = k;
        }
    }
    true
}

/// `alpha^(i+c) mod p` for `i = 0..p-2`.
pub fn welch_sequence(p: u64, alpha: i64, c: i64) -> Result<CostasSequence, ClassicError> {
    if p < 3 || !is_prime(p) {
        return Err(ClassicError::BadPrime(p));
    }
    let a = alpha.rem_euclid(p as i64) as u64;
    if order_mod_prime(a, p) != Some(p - 1) {
        return Err(ClassicError::NotPrimitive { p, alpha });
    }
    let n = p - 1;
    let start = c.rem_euclid(n as i64) as u64;
    let terms = (0..n).map(|i| crate::arith::mod_pow(a, (i + start) % n, p) as u32).collect();
    CostasSequence::new(terms)
}

/// Every Welch sequence of length `p - 1`: all primitive roots, all shifts.
/// Sorted, without duplicates.
pub fn welch_family(p: u64) -> Result<Vec<CostasSequence>, ClassicError> {
    if p < 3 || !is_prime(p) {
        return Err(ClassicError::BadPrime(p));
    }
    let mut out = BTreeSet::new();
    for alpha in 1..p {
        if order_mod_prime(alpha, p) == Some(p - 1) {
            for c in 0..(p - 1) as i64 {
                out.insert(welch_sequence(p, alpha as i64, c)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Every cyclic rotation is Costas.
pub fn is_singly_periodic(seq: &CostasSequence) -> bool {
    (0..seq.len().max(1)).all(|r| is_costas(&seq.rotated(r)))
}

fn circular_differences(seq: &CostasSequence, k: usize) -> impl Iterator<Item = u32> + '_ {
    let a = &seq.terms;
    let n = a.len();
    let modulus = n as i64 + 1;
    (0..n).map(move |i| (a[(i + k) % n] as i64 - a[i] as i64).rem_euclid(modulus) as u32)
}

/// Costas, and for each `k` the circular differences are distinct mod `n + 1`.
pub fn is_circular(seq: &CostasSequence) -> bool {
    if !is_costas(seq) {
        return false;
    }
    let n = seq.len();
    let mut seen = vec![usize::MAX; n + 1];
    for k in 1..n {
        for d in circular_differences(seq, k) {
            if seen[d as usize] == k {
                return false;
            }
            seen[d as usize] = k;
        }
    }
    true
}

/// Costas, and for each `k` the circular differences mod `n + 1` form a
/// cyclic rotation of the sequence itself.
pub fn has_shifting_property(seq: &CostasSequence) -> bool {
    if !is_costas(seq) {
        return false;
    }
    let n = seq.len();
    let a = &seq.terms;
    (1..n).all(|k| {
        let diffs: Vec<u32> = circular_differences(seq, k).collect();
        (0..n).any(|r| (0..n).all(|i| diffs[i] == a[(i + r) % n]))
    })
}

/// All Costas sequences of order `n` in lexicographic order.
///
/// Orders above `limit` are refused; pass [`DEFAULT_CENSUS_ORDER`] unless a
/// larger census was asked for explicitly.
pub fn enumerate_costas(n: usize, limit: usize) -> Result<Vec<CostasSequence>, ClassicError> {
    if n > limit {
        return Err(ClassicError::CapExceeded { n, limit });
    }
    if n == 0 {
        return Ok(vec![CostasSequence { terms: Vec::new() }]);
    }
    Ok((1..=n as u32).flat_map(|first| costas_branch(n, first)).collect())
}

/// Costas sequences of order `n` starting with `first`, lexicographic.
pub fn costas_branch(n: usize, first: u32) -> Vec<CostasSequence> {
    let mut search = Backtrack {
        n,
        terms: Vec::with_capacity(n),
        used: vec![false; n + 1],
        // used_diff[k][d + n]
        used_diff: vec![vec![false; 2 * n + 1]; n],
        out: Vec::new(),
    };
    if first >= 1 && first as usize <= n {
        search.place(first);
        search.extend();
    }
    search.out
}

struct Backtrack {
    n: usize,
    terms: Vec<u32>,
    used: Vec<bool>,
    used_diff: Vec<Vec<bool>>,
    out: Vec<CostasSequence>,
}

impl Backtrack {
    fn fits(&self, v: u32) -> bool {
        if self.used[v as usize] {
            return false;
        }
        let j = self.terms.len();
        self.terms.iter().enumerate().all(|(i, &t)| !self.used_diff[j - i][(v as i64 - t as i64 + self.n as i64) as usize])
    }

    fn mark(&mut self, v: u32, on: bool) {
        let j = self.terms.len();
        for i in 0..j {
            let d = (v as i64 - self.terms[i] as i64 + self.n as i64) as usize;
            self.used_diff[j - i][d] = on;
        }
        self.used[v as usize] = on;
    }

    fn place(&mut self, v: u32) {
        self.mark(v, true);
        self.terms.push(v);
    }

    fn unplace(&mut self) {
        let v = self.terms.pop().expect("nonempty");
        self.mark(v, false);
    }

    fn extend(&mut self) {
        if self.terms.len() == self.n {
            self.out.push(CostasSequence { terms: self.terms.clone() });
            return;
        }
        for v in 1..=self.n as u32 {
            if self.fits(v) {
                self.place(v);
                self.extend();
                self.unplace();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(xs: &[u32]) -> CostasSequence {
        CostasSequence::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(difference_triangle(&seq(&[2, 4, 3, 1])).rows, vec![vec![2, -1, -2], vec![1, -3], vec![-1]]);
        assert!(difference_triangle(&seq(&[1])).rows.is_empty());
        assert_eq!(difference_triangle(&seq(&[1, 2, 3])).rows, vec![vec![1, 1], vec![2]]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert_eq!(CostasSequence::new(vec![1, 1]).unwrap_err(), ClassicError::NotPermutation(2));
        assert_eq!(CostasSequence::new(vec![0, 1]).unwrap_err(), ClassicError::NotPermutation(2));
        assert_eq!(CostasSequence::new(vec![1, 3]).unwrap_err(), ClassicError::NotPermutation(2));
    }

    #[test]
    fn costas_examples() {
        assert!(is_costas(&seq(&[2, 4, 3, 1])));
        assert!(!is_costas(&seq(&[1, 2, 3])));
        assert!(is_costas(&seq(&[1])));
    }

    #[test]
    fn welch_examples() {
        assert_eq!(welch_sequence(5, 2, 1).unwrap(), seq(&[2, 4, 3, 1]));
        assert_eq!(welch_sequence(5, 2, 0).unwrap(), seq(&[1, 2, 4, 3]));
        assert_eq!(welch_sequence(3, 2, 0).unwrap(), seq(&[1, 2]));
        assert_eq!(welch_sequence(5, 4, 0).unwrap_err(), ClassicError::NotPrimitive { p: 5, alpha: 4 });
        assert_eq!(welch_sequence(9, 2, 0).unwrap_err(), ClassicError::BadPrime(9));
        assert_eq!(welch_sequence(5, 2, -3).unwrap(), welch_sequence(5, 2, 1).unwrap());
    }

    #[test]
    fn periodicity_examples() {
        assert!(is_singly_periodic(&seq(&[2, 4, 3, 1])));
        assert!(!is_singly_periodic(&seq(&[1, 2, 3, 4])));
        assert!(is_singly_periodic(&seq(&[2, 1])));
        assert!(is_circular(&seq(&[2, 4, 3, 1])));
        assert!(is_circular(&seq(&[1, 2])));
        assert!(!is_circular(&seq(&[1, 2, 3])));
        assert!(has_shifting_property(&seq(&[2, 4, 3, 1])));
        assert!(has_shifting_property(&seq(&[2, 1])));
        assert!(!has_shifting_property(&seq(&[1, 2, 3, 4])));
    }

    #[test]
    fn census_small_orders() {
        assert_eq!(enumerate_costas(1, 8).unwrap(), vec![seq(&[1])]);
        assert_eq!(enumerate_costas(2, 8).unwrap(), vec![seq(&[1, 2]), seq(&[2, 1])]);
        assert_eq!(enumerate_costas(4, 8).unwrap().len(), 12);
        assert_eq!(enumerate_costas(9, 8).unwrap_err(), ClassicError::CapExceeded { n: 9, limit: 8 });
    }

    #[test]
    fn grid_orientation() {
        assert_eq!(seq(&[2, 4, 3, 1]).render_grid(), ". 1 . .\n. . 1 .\n1 . . .\n. . . 1\n");
    }
}
