//! Maps between finite abelian groups with injective difference maps.
//!
//! A map `f: G1 -> G2` with `|G1| + 1 = |G2|` is circular Costas when it
//! is injective and every `i -> f(i + k) - f(i)` with `k != 0` is
//! injective too. Maps are index tables over [`AbelianGroup`] indices.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::abgroup::{automorphisms, isomorphism, AbelianGroup, GroupElement, GroupError, IndexOps, Isomorphism};
use crate::classic::CostasSequence;
use crate::fqpoly::{enumerate_linearized_permutations, LinearizedPoly, PolyError};
use crate::gf::{FieldElement, FiniteField, GfError};
use crate::perm::next_permutation;

/// Largest group accepted by [`no_bijective_costas`].
pub const BIJECTIVE_CAP: u64 = 7;
/// Largest domain accepted by [`circular_costas_maps`].
pub const CENSUS_DOMAIN_CAP: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("domain has {domain} elements but codomain has {codomain}; expected one more")]
    SizeMismatch { domain: u64, codomain: u64 },
    #[error("image table has {got} entries for a domain of {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("image index {0} is outside the codomain")]
    ImageOutOfRange(usize),
    #[error("linearized polynomial is not a permutation")]
    NotPermutation,
    #[error("element is not primitive")]
    NotPrimitive,
    #[error("split {split:?} is not isomorphic to {group}")]
    BadSplit { split: Vec<u64>, group: String },
    #[error("malformed array: {0}")]
    Malformed(String),
    #[error("group order {order} exceeds the limit {cap}")]
    CapExceeded { order: u64, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    images: Vec<usize>,
}

impl GroupMap {
    pub fn new(domain: AbelianGroup, codomain: AbelianGroup, images: Vec<usize>) -> Result<Self, MapError> {
        if images.len() != domain.size() {
            return Err(MapError::TableLength { expected: domain.size(), got: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&j| j >= codomain.size()) {
            return Err(MapError::ImageOutOfRange(bad));
        }
        Ok(GroupMap { domain, codomain, images })
    }

    /// Builds a map from `(x, f(x))` element pairs covering the domain once.
    pub fn from_pairs(domain: AbelianGroup, codomain: AbelianGroup, pairs: &[(GroupElement, GroupElement)]) -> Result<Self, MapError> {
        let mut images = vec![usize::MAX; domain.size()];
        for (x, y) in pairs {
            if !domain.contains(x) || !codomain.contains(y) {
                return Err(GroupError::GroupMismatch.into());
            }
            let i = domain.index_of(x);
            if images[i] != usize::MAX {
                return Err(MapError::Malformed(alloc::format!("{x} is mapped twice")));
            }
            images[i] = codomain.index_of(y);
        }
        if let Some(i) = images.iter().position(|&j| j == usize::MAX) {
            return Err(MapError::Malformed(alloc::format!("{} has no image", domain.element_at(i))));
        }
        GroupMap::new(domain, codomain, images)
    }

    /// A circular sequence `a_0..a_{n-1}` as the map `Z_n -> Z_{n+1}`.
    pub fn from_sequence(seq: &CostasSequence) -> Self {
        let n = seq.len() as u64;
        GroupMap {
            domain: AbelianGroup::cyclic(n.max(1)),
            codomain: AbelianGroup::cyclic(n + 1),
            images: seq.terms().iter().map(|&t| t as usize).collect(),
        }
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, x: &GroupElement) -> GroupElement {
        self.codomain.element_at(self.images[self.domain.index_of(x)])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (GroupElement, GroupElement)> + '_ {
        self.images.iter().enumerate().map(|(i, &j)| (self.domain.element_at(i), self.codomain.element_at(j)))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.size()];
        self.images.iter().all(|&j| !core::mem::replace(&mut seen[j], true))
    }

    /// Codomain elements outside the image, in index order.
    pub fn missed(&self) -> Vec<usize> {
        let mut seen = vec![false; self.codomain.size()];
        for &j in &self.images {
            seen[j] = true;
        }
        (0..seen.len()).filter(|&j| !seen[j]).collect()
    }

    /// `x -> f(x) + t`.
    pub fn translated(&self, t: usize) -> GroupMap {
        let ops = self.codomain.ops();
        GroupMap { domain: self.domain.clone(), codomain: self.codomain.clone(), images: self.images.iter().map(|&j| ops.add(j, t)).collect() }
    }

    /// `x -> f(x + s)`.
    pub fn shifted(&self, s: usize) -> GroupMap {
        let ops = self.domain.ops();
        GroupMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images: (0..self.images.len()).map(|i| self.images[ops.add(i, s)]).collect(),
        }
    }

    /// Translates the image so that it misses zero, when it misses exactly
    /// one element. Otherwise returns a copy.
    pub fn translation_normalized(&self) -> GroupMap {
        match self.missed().as_slice() {
            [g] => self.translated(self.codomain.ops().sub(0, *g)),
            _ => self.clone(),
        }
    }
}

fn check_sizes(f: &GroupMap) -> Result<(), MapError> {
    if f.domain.order() + 1 != f.codomain.order() {
        return Err(MapError::SizeMismatch { domain: f.domain.order(), codomain: f.codomain.order() });
    }
    Ok(())
}

fn differences_injective(images: &[usize], dom: &IndexOps, cod: &IndexOps, seen: &mut [u32]) -> bool {
    let n = images.len();
    // seen[d] == k marks difference d as used for shift k
    seen.fill(0);
    for k in 1..n {
        for i in 0..n {
            let d = cod.sub(images[dom.add(i, k)], images[i]);
            if seen[d] == k as u32 {
                return false;
            }
            seen[d] = k as u32;
        }
    }
    true
}

pub fn is_circular_costas(f: &GroupMap) -> Result<bool, MapError> {
    check_sizes(f)?;
    if !f.is_injective() {
        return Ok(false);
    }
    let mut seen = vec![0u32; f.codomain.size()];
    Ok(differences_injective(&f.images, &f.domain.ops(), &f.codomain.ops(), &mut seen))
}

/// Image misses exactly the zero of the codomain.
pub fn is_standard(f: &GroupMap) -> bool {
    f.is_injective() && f.missed() == [0]
}

/// `i -> L(alpha^(i + c))` from `Z_{q-1}` to `(GF(q), +) = Z_p^m`, with
/// `alpha` the field's primitive element.
pub fn welch_map(field: &FiniteField, l: &LinearizedPoly, c: i64) -> Result<GroupMap, MapError> {
    welch_map_with(field, field.primitive_element(), l, c)
}

pub fn welch_map_with(field: &FiniteField, alpha: FieldElement, l: &LinearizedPoly, c: i64) -> Result<GroupMap, MapError> {
    field.check(alpha)?;
    if field.order(alpha)? != field.q() - 1 {
        return Err(MapError::NotPrimitive);
    }
    if !l.is_permutation(field) {
        return Err(MapError::NotPermutation);
    }
    let n = field.q() as u64 - 1;
    let start = field.pow(alpha, c.rem_euclid(n as i64))?;
    let mut x = start;
    let mut images = Vec::with_capacity(n as usize);
    for _ in 0..n {
        images.push(l.evaluate(field, x).code() as usize);
        x = field.mul(x, alpha);
    }
    Ok(GroupMap { domain: AbelianGroup::cyclic(n), codomain: additive_group(field), images })
}

/// `(GF(q), +)` as `Z_p^m`; group indices coincide with element codes.
pub fn additive_group(field: &FiniteField) -> AbelianGroup {
    AbelianGroup::elementary(field.p() as u64, field.m())
}

/// Every distinct Welch map: all primitive elements, all linearized
/// permutations `L`, all `c` in `0..q-1`. Sorted.
pub fn welch_family(field: &FiniteField) -> Result<Vec<GroupMap>, MapError> {
    let ls = enumerate_linearized_permutations(field)?;
    let mut out = BTreeSet::new();
    for alpha in field.primitive_elements() {
        for l in &ls {
            for c in 0..field.q() as i64 - 1 {
                out.insert(welch_map_with(field, alpha, l, c)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// A pair of isomorphisms carrying one map to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub domain: Isomorphism,
    pub codomain: Isomorphism,
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Searches isomorphisms `psi1: G1 -> H1`, `psi2: G2 -> H2` with
/// `g(psi1(x)) = psi2(f(x))` for every `x`.
pub fn are_equivalent(f: &GroupMap, g: &GroupMap) -> Result<Option<Equivalence>, MapError> {
    let (Some(b1), Some(b2)) = (isomorphism(&f.domain, &g.domain)?, isomorphism(&f.codomain, &g.codomain)?) else {
        return Ok(None);
    };
    let aut1: Vec<Vec<usize>> = automorphisms(&g.domain)?.collect();
    let aut2: Vec<Vec<usize>> = automorphisms(&g.codomain)?.collect();
    let n2 = g.codomain.size();
    for a1 in &aut1 {
        let psi1 = compose(a1, b1.table());
        // required psi2 on the image of f: b2(f(x)) must go to g(psi1(x))
        let mut want = vec![usize::MAX; n2];
        let mut consistent = true;
        for (x, &fx) in f.images.iter().enumerate() {
            let y = b2.apply(fx);
            let z = g.images[psi1[x]];
            if want[y] != usize::MAX && want[y] != z {
                consistent = false;
                break;
            }
            want[y] = z;
        }
        if !consistent {
            continue;
        }
        for a2 in &aut2 {
            if (0..n2).all(|y| want[y] == usize::MAX || a2[y] == want[y]) {
                let psi2 = compose(a2, b2.table());
                return Ok(Some(Equivalence {
                    domain: Isomorphism::from_table(&f.domain, &g.domain, psi1).expect("automorphism composed with isomorphism"),
                    codomain: Isomorphism::from_table(&f.codomain, &g.codomain, psi2).expect("automorphism composed with isomorphism"),
                }));
            }
        }
    }
    Ok(None)
}

/// [`are_equivalent`] after moving each map's missed element to zero.
pub fn are_equivalent_up_to_translation(f: &GroupMap, g: &GroupMap) -> Result<Option<Equivalence>, MapError> {
    are_equivalent(&f.translation_normalized(), &g.translation_normalized())
}

/// A multidimensional binary array given by the positions of its ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdArray {
    pub dims: Vec<u64>,
    pub ones: Vec<Vec<u64>>,
}

/// Lays `f` out on the grid `domain_split ++ codomain_split`, transporting
/// both groups along CRT witness isomorphisms.
pub fn export_array(f: &GroupMap, domain_split: &[u64], codomain_split: &[u64]) -> Result<MdArray, MapError> {
    let side = |g: &AbelianGroup, split: &[u64]| -> Result<Isomorphism, MapError> {
        let bad = || MapError::BadSplit { split: split.to_vec(), group: alloc::format!("{g}") };
        let target = AbelianGroup::new(split.to_vec()).map_err(|_| bad())?;
        isomorphism(g, &target)?.ok_or_else(bad)
    };
    let psi1 = side(&f.domain, domain_split)?;
    let psi2 = side(&f.codomain, codomain_split)?;
    let mut ones: Vec<Vec<u64>> = f
        .images
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let mut pt = psi1.target().element_at(psi1.apply(i)).coords().to_vec();
            pt.extend_from_slice(psi2.target().element_at(psi2.apply(j)).coords());
            pt
        })
        .collect();
    ones.sort_unstable();
    Ok(MdArray { dims: domain_split.iter().chain(codomain_split).copied().collect(), ones })
}

/// Periodic Costas check on an array whose first `h` dimensions index the
/// domain: ones have distinct domain and codomain coordinates, and for
/// every domain shift `k != 0` the codomain differences between ones `k`
/// apart never repeat.
pub fn verify_periodic_costas(arr: &MdArray, h: usize) -> Result<bool, MapError> {
    if h == 0 || h >= arr.dims.len() {
        return Err(MapError::Malformed(alloc::format!("split point {h} for {} dimensions", arr.dims.len())));
    }
    if arr.dims.contains(&0) {
        return Err(MapError::Malformed("zero extent".into()));
    }
    for pt in &arr.ones {
        if pt.len() != arr.dims.len() || pt.iter().zip(&arr.dims).any(|(c, d)| c >= d) {
            return Err(MapError::Malformed(alloc::format!("point {pt:?} outside {:?}", arr.dims)));
        }
    }
    // unit extents carry no information; drop them before building groups
    let group = |dims: &[u64]| AbelianGroup::new(dims.iter().copied().filter(|&d| d > 1).collect());
    let project = |pt: &[u64], dims: &[u64]| -> Vec<u64> { pt.iter().zip(dims).filter(|(_, &d)| d > 1).map(|(&c, _)| c).collect() };
    let (dd, cd) = arr.dims.split_at(h);
    let a = group(dd)?;
    let b = group(cd)?;
    let mut image = vec![usize::MAX; a.size()];
    let mut hit = vec![false; b.size()];
    for pt in &arr.ones {
        let x = a.index_of(&a.element(&project(&pt[..h], dd))?);
        let y = b.index_of(&b.element(&project(&pt[h..], cd))?);
        if image[x] != usize::MAX || core::mem::replace(&mut hit[y], true) {
            return Ok(false);
        }
        image[x] = y;
    }
    let (ao, bo) = (a.ops(), b.ops());
    let mut seen = vec![0u32; b.size()];
    for k in 1..a.size() {
        for i in 0..a.size() {
            let j = ao.add(i, k);
            if image[i] == usize::MAX || image[j] == usize::MAX {
                continue;
            }
            let d = bo.sub(image[j], image[i]);
            if seen[d] == k as u32 {
                return Ok(false);
            }
            seen[d] = k as u32;
        }
    }
    Ok(true)
}

/// Text raster of a 2-D array (columns = first dimension, top row = largest
/// second coordinate) or of a 3-D array as one such block per index of the
/// last dimension.
pub fn render_raster(arr: &MdArray) -> Result<String, MapError> {
    let (w, hgt, depth) = match arr.dims.as_slice() {
        [w, h] => (*w, *h, 1),
        [w, h, d] => (*w, *h, *d),
        _ => return Err(MapError::Malformed(alloc::format!("raster needs 2 or 3 dimensions, got {}", arr.dims.len()))),
    };
    let ones: BTreeSet<&[u64]> = arr.ones.iter().map(|p| p.as_slice()).collect();
    let mut out = String::new();
    for z in 0..depth {
        if arr.dims.len() == 3 {
            let _ = writeln!(out, "# slice {z}");
        }
        for y in (0..hgt).rev() {
            let row: Vec<&str> = (0..w)
                .map(|x| {
                    let pt: Vec<u64> = if arr.dims.len() == 3 { vec![x, y, z] } else { vec![x, y] };
                    if ones.contains(pt.as_slice()) {
                        "1"
                    } else {
                        "."
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}

/// Some bijection `g -> g` whose difference maps are all injective, if any.
pub fn find_bijective_costas(g: &AbelianGroup) -> Result<Option<GroupMap>, MapError> {
    if g.order() > BIJECTIVE_CAP {
        return Err(MapError::CapExceeded { order: g.order(), cap: BIJECTIVE_CAP });
    }
    let ops = g.ops();
    let mut perm: Vec<usize> = (0..g.size()).collect();
    let mut seen = vec![0u32; g.size()];
    loop {
        if differences_injective(&perm, &ops, &ops, &mut seen) {
            return Ok(Some(GroupMap { domain: g.clone(), codomain: g.clone(), images: perm }));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

/// Exhaustively confirms that no bijection of `g` (order at least 2) has
/// the distinct difference property.
pub fn no_bijective_costas(g: &AbelianGroup) -> Result<bool, MapError> {
    if g.order() < 2 {
        return Err(MapError::Malformed("group needs at least two elements".into()));
    }
    Ok(find_bijective_costas(g)?.is_none())
}

/// Every circular Costas map `domain -> codomain`, by backtracking over
/// image assignments with incremental difference bookkeeping. Sorted by
/// image table.
pub fn circular_costas_maps(domain: &AbelianGroup, codomain: &AbelianGroup) -> Result<Vec<GroupMap>, MapError> {
    if domain.order() + 1 != codomain.order() {
        return Err(MapError::SizeMismatch { domain: domain.order(), codomain: codomain.order() });
    }
    if domain.order() > CENSUS_DOMAIN_CAP {
        return Err(MapError::CapExceeded { order: domain.order(), cap: CENSUS_DOMAIN_CAP });
    }
    let mut out = Vec::new();
    for first in 0..codomain.size() {
        out.extend(circular_costas_branch(domain, codomain, first)?);
    }
    Ok(out)
}

/// The maps from [`circular_costas_maps`] sending `0` to `first`.
pub fn circular_costas_branch(domain: &AbelianGroup, codomain: &AbelianGroup, first: usize) -> Result<Vec<GroupMap>, MapError> {
    if domain.order() + 1 != codomain.order() {
        return Err(MapError::SizeMismatch { domain: domain.order(), codomain: codomain.order() });
    }
    let n = domain.size();
    let m = codomain.size();
    let mut search = Backtrack {
        dom: domain.ops(),
        cod: codomain.ops(),
        images: vec![0; n],
        used_image: vec![false; m],
        used_diff: vec![false; n * m],
        found: Vec::new(),
    };
    if first < m {
        search.place(0, first);
        search.extend(1);
    }
    Ok(search.found.into_iter().map(|images| GroupMap { domain: domain.clone(), codomain: codomain.clone(), images }).collect())
}

struct Backtrack {
    dom: IndexOps,
    cod: IndexOps,
    images: Vec<usize>,
    used_image: Vec<bool>,
    // used_diff[k * m + d]: difference d already realized at shift k
    used_diff: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Backtrack {
    /// Differences created by assigning `y` to `i`, or `None` on a clash.
    fn new_diffs(&self, i: usize, y: usize) -> Option<Vec<usize>> {
        let m = self.cod.order();
        let mut slots = Vec::with_capacity(2 * i);
        for j in 0..i {
            let yj = self.images[j];
            for (k, d) in [(self.dom.sub(i, j), self.cod.sub(y, yj)), (self.dom.sub(j, i), self.cod.sub(yj, y))] {
                let s = k * m + d;
                if self.used_diff[s] || slots.contains(&s) {
                    return None;
                }
                slots.push(s);
            }
        }
        Some(slots)
    }

    fn place(&mut self, i: usize, y: usize) {
        self.images[i] = y;
        self.used_image[y] = true;
    }

    fn extend(&mut self, i: usize) {
        if i == self.images.len() {
            self.found.push(self.images.clone());
            return;
        }
        for y in 0..self.cod.order() {
            if self.used_image[y] {
                continue;
            }
            let Some(slots) = self.new_diffs(i, y) else { continue };
            for &s in &slots {
                self.used_diff[s] = true;
            }
            self.place(i, y);
            self.extend(i + 1);
            self.used_image[y] = false;
            for &s in &slots {
                self.used_diff[s] = false;
            }
        }
    }
}
