//! Library results checked against independent brute-force computations.

use std::collections::BTreeSet;

use costas_core::abgroup::{automorphisms, isomorphism, AbelianGroup, Isomorphism};
use costas_core::arith::totient;
use costas_core::circmap::{
    are_equivalent, circular_costas_maps, export_array, is_circular_costas, is_standard, verify_periodic_costas, welch_family, welch_map, GroupMap,
};
use costas_core::classic::{enumerate_costas, CostasSequence};
use costas_core::cpoly::{
    census, quadratic_field_bound, general_bound, count_welch_polynomials, enumerate_welch_polynomials, map_to_polynomial, ratio_r, welch_raw_pairs,
    CensusKind,
};
use costas_core::dpds::{from_map, is_dpds};
use costas_core::fqpoly::{enumerate_linearized_permutations, interpolate_table, linearized_permutation_count, FqPolynomial};
use costas_core::gf::{FieldElement, FiniteField};
use costas_core::perm::next_permutation;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

fn gf(p: u64, m: u32) -> FiniteField {
    FiniteField::new(p, m).unwrap()
}

fn grp(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

/// All displacement vectors between dots are distinct.
fn naive_costas(perm: &[u32]) -> bool {
    let mut seen = BTreeSet::new();
    for i in 0..perm.len() {
        for j in 0..perm.len() {
            if i != j && !seen.insert((j as i64 - i as i64, perm[j] as i64 - perm[i] as i64)) {
                return false;
            }
        }
    }
    true
}

#[test]
fn costas_counts_match_permutation_filter() {
    for n in 1..=7u32 {
        let mut perm: Vec<u32> = (1..=n).collect();
        let mut brute = Vec::new();
        loop {
            if naive_costas(&perm) {
                brute.push(CostasSequence::new(perm.clone()).unwrap());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        assert_eq!(enumerate_costas(n as usize, 8).unwrap(), brute, "n = {n}");
    }
}

#[test]
fn costas_counts_frozen() {
    let expect = [1, 2, 4, 12, 40, 116, 200, 444, 760, 2160];
    for (i, &e) in expect.iter().enumerate() {
        assert_eq!(enumerate_costas(i + 1, 10).unwrap().len(), e, "n = {}", i + 1);
    }
}

fn poly_mul(f: &FiniteField, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Lagrange basis interpolation through every point of the field.
fn lagrange(f: &FiniteField, values: &[FieldElement]) -> Vec<FieldElement> {
    let xs: Vec<FieldElement> = f.elements().collect();
    let mut acc = vec![f.zero(); xs.len()];
    for (i, &xi) in xs.iter().enumerate() {
        let mut basis = vec![f.one()];
        let mut denom = f.one();
        for &xj in xs.iter().filter(|&&xj| xj != xi) {
            basis = poly_mul(f, &basis, &[f.neg(xj), f.one()]);
            denom = f.mul(denom, f.sub(xi, xj));
        }
        let scale = f.mul(values[i], f.inv(denom).unwrap());
        for (slot, c) in acc.iter_mut().zip(basis) {
            *slot = f.add(*slot, f.mul(scale, c));
        }
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

#[test]
fn interpolation_agrees_with_lagrange() {
    for (p, m) in [(2, 1), (3, 1), (5, 1), (2, 2), (7, 1), (2, 3), (3, 2)] {
        let f = gf(p, m);
        let q = f.q();
        for seed in 0..6u32 {
            let values: Vec<FieldElement> = (0..q).map(|i| f.from_code((i * 7 + seed * 3 + i * i * seed) % q).unwrap()).collect();
            let got = interpolate_table(&f, &values);
            assert_eq!(got.coeffs(), lagrange(&f, &values).as_slice(), "q = {q}, seed = {seed}");
        }
    }
}

#[test]
fn linearized_counts_match_formula() {
    for (p, m) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)] {
        let f = gf(p, m);
        let got = enumerate_linearized_permutations(&f).unwrap().len();
        let q = p.pow(m);
        let gl: u64 = (0..m).map(|k| q - p.pow(k)).product();
        assert_eq!(got as u64, gl, "q = {q}");
        assert_eq!(linearized_permutation_count(p, m), BigUint::from(gl));
    }
}

#[test]
fn automorphism_counts_match_known_orders() {
    for (g, n) in [("Z5", 4), ("Z2xZ2", 6), ("Z3xZ3", 48), ("Z2xZ2xZ2", 168), ("Z4xZ2", 8), ("Z12", 4), ("Z4xZ5", 8), ("Z9", 6)] {
        let g = grp(g);
        let all: Vec<Vec<usize>> = automorphisms(&g).unwrap().collect();
        assert_eq!(all.len(), n, "{g}");
        assert!(all.iter().all(|t| Isomorphism::from_table(&g, &g, t.clone()).is_some()));
    }
}

#[test]
fn group_axioms_exhaustive() {
    for s in ["Z7", "Z2xZ2xZ3", "Z4xZ5", "Z3xZ3", "Z10xZ10"] {
        let g = grp(s);
        let els: Vec<_> = g.elements().collect();
        assert!(els.len() <= 100);
        for a in &els {
            assert_eq!(&g.add(a, &g.zero()).unwrap(), a);
            assert_eq!(g.add(a, &g.neg(a).unwrap()).unwrap(), g.zero());
            for b in &els {
                assert_eq!(g.add(a, b).unwrap(), g.add(b, a).unwrap());
                if els.len() <= 36 {
                    for c in &els {
                        assert_eq!(g.add(&g.add(a, b).unwrap(), c).unwrap(), g.add(a, &g.add(b, c).unwrap()).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn crt_witness_is_homomorphism() {
    let iso = isomorphism(&grp("Z24"), &grp("Z8xZ3")).unwrap().unwrap();
    let (s, t) = (iso.source().clone(), iso.target().clone());
    for a in s.elements() {
        for b in s.elements() {
            assert_eq!(iso.apply_element(&s.add(&a, &b).unwrap()), t.add(&iso.apply_element(&a), &iso.apply_element(&b)).unwrap());
        }
    }
    let images: BTreeSet<_> = s.elements().map(|e| iso.apply_element(&e)).collect();
    assert_eq!(images.len(), 24);
}

/// Circular Costas by the definition, on group elements.
fn naive_circular(f: &GroupMap) -> bool {
    let (g1, g2) = (f.domain(), f.codomain());
    let els: Vec<_> = g1.elements().collect();
    let images: BTreeSet<_> = els.iter().map(|x| f.image(x)).collect();
    if images.len() != els.len() {
        return false;
    }
    els.iter().filter(|k| **k != g1.zero()).all(|k| {
        let diffs: BTreeSet<_> = els.iter().map(|i| g2.sub(&f.image(&g1.add(i, k).unwrap()), &f.image(i)).unwrap()).collect();
        diffs.len() == els.len()
    })
}

fn injective_maps(domain: &AbelianGroup, codomain: &AbelianGroup) -> Vec<GroupMap> {
    let n = domain.size();
    let mut perm: Vec<usize> = (0..codomain.size()).collect();
    let mut out = BTreeSet::new();
    loop {
        out.insert(GroupMap::new(domain.clone(), codomain.clone(), perm[..n].to_vec()).unwrap());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.into_iter().collect()
}

#[test]
fn circular_check_and_census_agree_with_definition() {
    for (a, b) in [("Z3", "Z4"), ("Z3", "Z2xZ2"), ("Z4", "Z5"), ("Z5", "Z6"), ("Z5", "Z2xZ3"), ("Z6", "Z7")] {
        let (a, b) = (grp(a), grp(b));
        let all = injective_maps(&a, &b);
        let brute: Vec<GroupMap> = all.iter().filter(|f| naive_circular(f)).cloned().collect();
        for f in &all {
            assert_eq!(is_circular_costas(f).unwrap(), naive_circular(f));
        }
        assert_eq!(circular_costas_maps(&a, &b).unwrap(), brute, "{a} -> {b}");
    }
}

#[test]
fn circular_maps_force_elementary_codomain() {
    // order-6 targets are not prime powers
    assert!(circular_costas_maps(&grp("Z5"), &grp("Z6")).unwrap().is_empty());
    assert!(circular_costas_maps(&grp("Z5"), &grp("Z2xZ3")).unwrap().is_empty());
    assert!(circular_costas_maps(&grp("Z3"), &grp("Z4")).unwrap().is_empty());
    let into_klein = circular_costas_maps(&grp("Z3"), &grp("Z2xZ2")).unwrap();
    assert_eq!(into_klein.len(), 24);
    let z4z5 = circular_costas_maps(&grp("Z4"), &grp("Z5")).unwrap();
    assert_eq!(z4z5.len(), 40);
    let z6z7 = circular_costas_maps(&grp("Z6"), &grp("Z7")).unwrap();
    assert_eq!(z6z7.len(), 84);
    for f in into_klein.iter().chain(&z4z5).chain(&z6z7) {
        assert!(f.codomain().is_elementary_abelian().is_some());
    }
}

#[test]
fn circular_maps_are_exactly_dpds_graphs() {
    let all = injective_maps(&grp("Z4"), &grp("Z5"));
    assert_eq!(all.len(), 120);
    for f in &all {
        assert_eq!(is_circular_costas(f).unwrap(), is_dpds(&from_map(f).unwrap()).unwrap());
    }
}

#[test]
fn welch_maps_are_standard_circular() {
    for (p, m) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)] {
        let f = gf(p, m);
        for l in enumerate_linearized_permutations(&f).unwrap() {
            for c in 0..3 {
                let w = welch_map(&f, &l, c).unwrap();
                assert!(is_circular_costas(&w).unwrap() && is_standard(&w));
            }
        }
    }
}

#[test]
fn standard_z4_z5_maps_are_welch_up_to_translation() {
    let f5 = gf(5, 1);
    let welch: BTreeSet<GroupMap> = welch_family(&f5).unwrap().into_iter().collect();
    let census = circular_costas_maps(&grp("Z4"), &grp("Z5")).unwrap();
    let standard: BTreeSet<GroupMap> = census.iter().filter(|f| is_standard(f)).cloned().collect();
    assert_eq!(standard, welch);
    let normalized: BTreeSet<GroupMap> = census.iter().map(|f| f.translation_normalized()).collect();
    assert_eq!(normalized, welch);
}

#[test]
fn export_round_trips_for_small_welch_maps() {
    let f = gf(3, 2);
    for l in enumerate_linearized_permutations(&f).unwrap().iter().take(10) {
        let w = welch_map(&f, l, 1).unwrap();
        let arr = export_array(&w, &[8], &[3, 3]).unwrap();
        assert_eq!(arr.ones.len(), 8);
        assert!(verify_periodic_costas(&arr, 1).unwrap());
    }
    let f7 = gf(7, 1);
    let w = welch_map(&f7, &enumerate_linearized_permutations(&f7).unwrap()[2], 0).unwrap();
    let arr = export_array(&w, &[2, 3], &[7]).unwrap();
    assert_eq!(arr.dims, vec![2, 3, 7]);
    assert!(verify_periodic_costas(&arr, 2).unwrap());
}

#[test]
fn map_equivalence_is_an_equivalence_relation() {
    let pool: Vec<GroupMap> = circular_costas_maps(&grp("Z4"), &grp("Z5")).unwrap().into_iter().step_by(4).collect();
    assert_eq!(pool.len(), 10);
    let eq = |a: &GroupMap, b: &GroupMap| are_equivalent(a, b).unwrap().is_some();
    for a in &pool {
        assert!(eq(a, a));
        for b in &pool {
            assert_eq!(eq(a, b), eq(b, a));
            for c in &pool {
                if eq(a, b) && eq(b, c) {
                    assert!(eq(a, c));
                }
            }
        }
    }
}

#[test]
fn welch_polynomial_counts_small() {
    for (p, m) in [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = gf(p, m);
        let n = enumerate_welch_polynomials(&f).unwrap().len();
        assert_eq!(BigUint::from(n), count_welch_polynomials(p, m).unwrap(), "q = {}", f.q());
    }
}

#[test]
fn raw_pairs_collide_in_groups_of_m() {
    for (p, m) in [(2, 2), (2, 3), (3, 2)] {
        let f = gf(p, m);
        let raw = welch_raw_pairs(&f).unwrap();
        let mut groups = std::collections::BTreeMap::<FqPolynomial, usize>::new();
        for (_, _, poly) in &raw {
            *groups.entry(poly.clone()).or_default() += 1;
        }
        assert!(groups.values().all(|&c| c == m as usize), "q = {}", f.q());
    }
}

#[test]
fn welch_maps_interpolate_to_welch_polynomials() {
    for (p, m) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = gf(p, m);
        let welch: BTreeSet<FqPolynomial> = enumerate_welch_polynomials(&f).unwrap().into_iter().collect();
        for beta in f.primitive_elements() {
            for w in welch_family(&f).unwrap().iter().step_by(3) {
                assert!(welch.contains(&map_to_polynomial(&f, w, beta).unwrap()));
            }
        }
    }
}

#[test]
fn shifting_census_equals_welch_family() {
    for (p, m) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = gf(p, m);
        let c = census(&f, CensusKind::Shifting, false).unwrap();
        assert_eq!(c.found, enumerate_welch_polynomials(&f).unwrap(), "q = {}", f.q());
        assert_eq!(c.candidates, (1..f.q() as u64).product::<u64>());
    }
}

#[test]
fn costas_polynomial_census_frozen() {
    // every permutation fixing 0 with all f(dx) - f(x) bijective
    let expect = [(2, 1, 1), (3, 1, 2), (2, 2, 6), (5, 1, 8), (7, 1, 12), (2, 3, 336), (3, 2, 96)];
    for (p, m, n) in expect {
        let f = gf(p, m);
        let c = census(&f, CensusKind::Costas, false).unwrap();
        assert_eq!(c.found.len(), n, "q = {}", f.q());
    }
}

#[test]
fn bound_relations() {
    for p in [2, 3, 5, 7] {
        assert_eq!(count_welch_polynomials(p, 2).unwrap(), quadratic_field_bound(p).unwrap());
    }
    for p in [2, 3, 5] {
        for m in [4, 5] {
            assert!(count_welch_polynomials(p, m).unwrap() > general_bound(p, m).unwrap());
        }
    }
    let one = BigRational::one();
    for p in [2, 3, 5, 7, 11] {
        for m in [4, 5, 6] {
            assert!(ratio_r(p, m).unwrap() > one, "R({p},{m})");
        }
    }
    for p in [5, 7, 11, 13] {
        assert!(ratio_r(p, 3).unwrap() < one, "R({p},3)");
    }
    assert_eq!(totient(124), Some(60));
}
