//! Direct product difference sets in `A x B` with `|A| = n - 1`, `|B| = n`.
//!
//! `D` is one when every element outside `(A x {0}) u ({0} x B)` is the
//! difference of exactly one ordered pair of distinct elements of `D`, and
//! no element of that union other than zero is a difference at all.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::abgroup::{product_automorphisms, AbelianGroup, GroupElement, GroupError};
use crate::circmap::{GroupMap, MapError};

/// Search limit on the number of candidate subsets.
pub const SEARCH_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DpdsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("need |A| = n - 1 and |B| = n with n >= 3, got |A| = {a}, |B| = {b}")]
    Size { a: u64, b: u64 },
    #[error("pair ({0}, {1}) lies outside the group")]
    OutOfRange(usize, usize),
    #[error("{0} appears as a first coordinate more than once")]
    DuplicateFirst(String),
    #[error("{0} has no pair")]
    MissingFirst(String),
    #[error("map is not injective")]
    NotInjective,
    #[error("cannot split {0} as A x B with |B| = |A| + 1")]
    NoSplit(String),
    #[error("{candidates} candidates exceed the limit {cap}")]
    CapExceeded { candidates: u64, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductDifferenceSet {
    group_a: AbelianGroup,
    group_b: AbelianGroup,
    /// Index pairs, kept sorted.
    elements: Vec<(usize, usize)>,
}

/// One line of a difference table: `minuend - subtrahend = difference`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceRow {
    pub minuend: GroupElement,
    pub subtrahend: GroupElement,
    pub difference: GroupElement,
}

fn check_orders(a: &AbelianGroup, b: &AbelianGroup) -> Result<(), DpdsError> {
    if a.order() + 1 != b.order() || b.order() < 3 {
        return Err(DpdsError::Size { a: a.order(), b: b.order() });
    }
    Ok(())
}

impl ProductDifferenceSet {
    pub fn new(group_a: AbelianGroup, group_b: AbelianGroup, mut elements: Vec<(usize, usize)>) -> Result<Self, DpdsError> {
        if let Some(&(x, y)) = elements.iter().find(|(x, y)| *x >= group_a.size() || *y >= group_b.size()) {
            return Err(DpdsError::OutOfRange(x, y));
        }
        elements.sort_unstable();
        Ok(ProductDifferenceSet { group_a, group_b, elements })
    }

    /// Builds a set from coordinate tuples over `A x B` (A's coordinates first).
    pub fn from_coords(group_a: AbelianGroup, group_b: AbelianGroup, points: &[Vec<u64>]) -> Result<Self, DpdsError> {
        let h = group_a.factors().len();
        let mut elements = Vec::with_capacity(points.len());
        for pt in points {
            if pt.len() != h + group_b.factors().len() {
                return Err(GroupError::BadElement { group: alloc::format!("{}x{}", group_a, group_b), got: pt.clone() }.into());
            }
            let x = group_a.element(&pt[..h])?;
            let y = group_b.element(&pt[h..])?;
            elements.push((group_a.index_of(&x), group_b.index_of(&y)));
        }
        ProductDifferenceSet::new(group_a, group_b, elements)
    }

    /// Splits a product group `A x B` at the factor boundary where
    /// `|B| = |A| + 1`.
    pub fn split_group(g: &AbelianGroup) -> Result<(AbelianGroup, AbelianGroup), DpdsError> {
        let f = g.factors();
        for h in 0..=f.len() {
            let a: u64 = f[..h].iter().product();
            let b: u64 = f[h..].iter().product();
            if a + 1 == b {
                return Ok((AbelianGroup::new(f[..h].to_vec())?, AbelianGroup::new(f[h..].to_vec())?));
            }
        }
        Err(DpdsError::NoSplit(alloc::format!("{g}")))
    }

    pub fn group_a(&self) -> &AbelianGroup {
        &self.group_a
    }

    pub fn group_b(&self) -> &AbelianGroup {
        &self.group_b
    }

    /// `A x B` as one group.
    pub fn ambient(&self) -> AbelianGroup {
        self.group_a.product(&self.group_b).expect("orders already fit")
    }

    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    /// Elements as flat coordinate tuples, A's coordinates first.
    pub fn coords(&self) -> Vec<Vec<u64>> {
        self.elements
            .iter()
            .map(|&(x, y)| {
                let mut v = self.group_a.element_at(x).coords().to_vec();
                v.extend_from_slice(self.group_b.element_at(y).coords());
                v
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn element(&self, (x, y): (usize, usize)) -> GroupElement {
        let mut c = self.group_a.element_at(x).coords().to_vec();
        c.extend_from_slice(self.group_b.element_at(y).coords());
        self.ambient().element(&c).expect("indices in range")
    }

    /// All differences of ordered pairs of distinct elements, grouped by
    /// minuend in element order.
    pub fn difference_table(&self) -> Vec<DifferenceRow> {
        let (ao, bo) = (self.group_a.ops(), self.group_b.ops());
        let mut rows = Vec::new();
        for &p in &self.elements {
            for &q in &self.elements {
                if p != q {
                    let d = (ao.sub(p.0, q.0), bo.sub(p.1, q.1));
                    rows.push(DifferenceRow { minuend: self.element(p), subtrahend: self.element(q), difference: self.element(d) });
                }
            }
        }
        rows
    }
}

pub fn is_dpds(d: &ProductDifferenceSet) -> Result<bool, DpdsError> {
    check_orders(&d.group_a, &d.group_b)?;
    let n = d.group_b.size();
    if d.elements.len() != n - 1 {
        return Ok(false);
    }
    Ok(differences_exact(&d.elements, &d.group_a.ops(), &d.group_b.ops(), &mut vec![false; (n - 1) * n]))
}

/// Every off-axis difference at most once and no axis difference; with
/// `n - 1` elements that makes each off-axis difference hit exactly once.
fn differences_exact(els: &[(usize, usize)], ao: &crate::abgroup::IndexOps, bo: &crate::abgroup::IndexOps, seen: &mut [bool]) -> bool {
    let nb = bo.order();
    seen.fill(false);
    for (i, p) in els.iter().enumerate() {
        for (j, q) in els.iter().enumerate() {
            if i == j {
                continue;
            }
            let (x, y) = (ao.sub(p.0, q.0), bo.sub(p.1, q.1));
            if x == 0 || y == 0 || core::mem::replace(&mut seen[x * nb + y], true) {
                return false;
            }
        }
    }
    true
}

/// The graph `{(i, f(i))}` of an injective map.
pub fn from_map(f: &GroupMap) -> Result<ProductDifferenceSet, DpdsError> {
    if !f.is_injective() {
        return Err(DpdsError::NotInjective);
    }
    ProductDifferenceSet::new(f.domain().clone(), f.codomain().clone(), f.images().iter().copied().enumerate().collect())
}

/// The associated function `A -> B`; first coordinates must cover `A`
/// exactly once.
pub fn to_map(d: &ProductDifferenceSet) -> Result<GroupMap, DpdsError> {
    let mut images = vec![usize::MAX; d.group_a.size()];
    for &(x, y) in &d.elements {
        if images[x] != usize::MAX {
            return Err(DpdsError::DuplicateFirst(alloc::format!("{}", d.group_a.element_at(x))));
        }
        images[x] = y;
    }
    if let Some(x) = images.iter().position(|&y| y == usize::MAX) {
        return Err(DpdsError::MissingFirst(alloc::format!("{}", d.group_a.element_at(x))));
    }
    Ok(GroupMap::new(d.group_a.clone(), d.group_b.clone(), images)?)
}

/// An automorphism of `A x B` (index table over the ambient group) and a
/// translation carrying one set onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpdsWitness {
    pub automorphism: Vec<usize>,
    pub translation: (usize, usize),
}

/// Searches `psi` in `Aut(A x B)` and `(a, b)` with `D2 = (a, b) + psi(D1)`.
pub fn dpds_equivalent(d1: &ProductDifferenceSet, d2: &ProductDifferenceSet) -> Result<Option<DpdsWitness>, DpdsError> {
    if d1.group_a != d2.group_a || d1.group_b != d2.group_b {
        return Err(GroupError::GroupMismatch.into());
    }
    if d1.len() != d2.len() {
        return Ok(None);
    }
    let Some(&anchor) = d2.elements.first() else {
        return Ok(Some(DpdsWitness { automorphism: (0..d1.ambient().size()).collect(), translation: (0, 0) }));
    };
    let nb = d1.group_b.size();
    let (ao, bo) = (d1.group_a.ops(), d1.group_b.ops());
    for psi in product_automorphisms(&d1.group_a, &d1.group_b)? {
        let image: Vec<(usize, usize)> = d1
            .elements
            .iter()
            .map(|&(x, y)| {
                let z = psi[x * nb + y];
                (z / nb, z % nb)
            })
            .collect();
        // the translation must move some image point onto d2's first element
        for &s in &image {
            let t = (ao.sub(anchor.0, s.0), bo.sub(anchor.1, s.1));
            let mut moved: Vec<(usize, usize)> = image.iter().map(|&(x, y)| (ao.add(x, t.0), bo.add(y, t.1))).collect();
            moved.sort_unstable();
            if moved == d2.elements {
                return Ok(Some(DpdsWitness { automorphism: psi, translation: t }));
            }
        }
    }
    Ok(None)
}

/// Which subsets a search visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Every `(n-1)`-subset of `A x B`.
    #[default]
    Full,
    /// Only subsets containing `(0, 0)`. Every set has an element `(0, b)`,
    /// so a translation brings any set into this family.
    Normalized,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    pub candidates: u64,
    pub found: Vec<ProductDifferenceSet>,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128).min(u64::MAX as u128) as u64
}

/// Number of subsets the search examines, and the number of branches.
pub fn search_size(a: &AbelianGroup, b: &AbelianGroup, mode: SearchMode) -> Result<(u64, usize), DpdsError> {
    check_orders(a, b)?;
    let total = a.order() * b.order();
    let k = a.order();
    Ok(match mode {
        SearchMode::Full => (binomial(total, k), total as usize),
        SearchMode::Normalized => (binomial(total - 1, k - 1), total as usize),
    })
}

/// Exhaustive search for sets of order `|B|` in `A x B`.
pub fn search_dpds(a: &AbelianGroup, b: &AbelianGroup, mode: SearchMode) -> Result<SearchOutcome, DpdsError> {
    let (candidates, branches) = search_size(a, b, mode)?;
    if candidates > SEARCH_CAP {
        return Err(DpdsError::CapExceeded { candidates, cap: SEARCH_CAP });
    }
    let mut out = SearchOutcome::default();
    for br in 0..branches {
        let part = search_branch(a, b, mode, br)?;
        out.candidates += part.candidates;
        out.found.extend(part.found);
    }
    Ok(out)
}

/// One slice of [`search_dpds`]: subsets whose smallest element (after
/// `(0,0)` in normalized mode) has ambient index `branch`. Branches are
/// disjoint and their union is the whole search.
pub fn search_branch(a: &AbelianGroup, b: &AbelianGroup, mode: SearchMode, branch: usize) -> Result<SearchOutcome, DpdsError> {
    check_orders(a, b)?;
    let nb = b.size();
    let total = a.size() * nb;
    let k = a.size();
    let (ao, bo) = (a.ops(), b.ops());
    let mut out = SearchOutcome::default();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    match mode {
        SearchMode::Full => chosen.push(branch),
        SearchMode::Normalized => {
            if branch == 0 {
                return Ok(out);
            }
            chosen.extend([0, branch]);
        }
    }
    if branch >= total || chosen.len() > k {
        return Ok(out);
    }
    let mut seen = vec![false; total];
    let mut els = Vec::with_capacity(k);
    combinations(branch + 1, total, k, &mut chosen, &mut |set| {
        out.candidates += 1;
        els.clear();
        els.extend(set.iter().map(|&z| (z / nb, z % nb)));
        if differences_exact(&els, &ao, &bo, &mut seen) {
            out.found.push(ProductDifferenceSet::new(a.clone(), b.clone(), els.clone()).expect("indices in range"));
        }
    });
    Ok(out)
}

fn combinations(from: usize, total: usize, k: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    let need = k - chosen.len();
    for z in from..total {
        if total - z < need {
            break;
        }
        chosen.push(z);
        combinations(z + 1, total, k, chosen, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    fn example() -> ProductDifferenceSet {
        ProductDifferenceSet::from_coords(grp("Z4"), grp("Z5"), &[vec![0, 2], vec![1, 4], vec![2, 3], vec![3, 1]]).unwrap()
    }

    #[test]
    fn worked_example() {
        let d = example();
        assert!(is_dpds(&d).unwrap());
        let table = d.difference_table();
        assert_eq!(table.len(), 12);
        let first = &table[0];
        assert_eq!(alloc::format!("{}-{}={}", first.minuend, first.subtrahend, first.difference), "(0,2)-(1,4)=(3,3)");
    }

    #[test]
    fn negative_examples() {
        let short = ProductDifferenceSet::from_coords(grp("Z4"), grp("Z5"), &[vec![0, 2], vec![1, 4], vec![2, 3]]).unwrap();
        assert!(!is_dpds(&short).unwrap());
        let diag = ProductDifferenceSet::from_coords(grp("Z4"), grp("Z5"), &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        assert!(!is_dpds(&diag).unwrap());
        let tiny = ProductDifferenceSet::new(grp("Z1"), grp("Z2"), vec![]).unwrap();
        assert!(matches!(is_dpds(&tiny), Err(DpdsError::Size { .. })));
    }

    #[test]
    fn map_round_trip() {
        let d = example();
        let f = to_map(&d).unwrap();
        assert_eq!(f.images(), &[2, 4, 3, 1]);
        assert_eq!(from_map(&f).unwrap(), d);
        let dup = ProductDifferenceSet::from_coords(grp("Z4"), grp("Z5"), &[vec![0, 2], vec![0, 4], vec![2, 3], vec![3, 1]]).unwrap();
        assert!(matches!(to_map(&dup), Err(DpdsError::DuplicateFirst(_))));
    }

    #[test]
    fn equivalence_examples() {
        let d = example();
        assert!(dpds_equivalent(&d, &d).unwrap().is_some());
        let shifted = ProductDifferenceSet::new(d.group_a().clone(), d.group_b().clone(), d.elements().iter().map(|&(x, y)| ((x + 1) % 4, (y + 1) % 5)).collect()).unwrap();
        let w = dpds_equivalent(&d, &shifted).unwrap().unwrap();
        assert_eq!(w.automorphism.len(), 20);
    }

    #[test]
    fn split_group_finds_boundary() {
        let (a, b) = ProductDifferenceSet::split_group(&grp("Z3xZ2xZ2")).unwrap();
        assert_eq!((a.order(), b.order()), (3, 4));
        assert!(ProductDifferenceSet::split_group(&grp("Z4xZ4")).is_err());
    }

    #[test]
    fn search_order_five() {
        let full = search_dpds(&grp("Z4"), &grp("Z5"), SearchMode::Full).unwrap();
        let norm = search_dpds(&grp("Z4"), &grp("Z5"), SearchMode::Normalized).unwrap();
        assert_eq!(full.candidates, 4845);
        assert_eq!(norm.candidates, 969);
        assert_eq!(full.found.len(), 5 * norm.found.len());
        assert!(full.found.contains(&example()));
        assert!(full.found.iter().all(|d| is_dpds(d).unwrap()));
    }
}
