//! The acceptance battery: thirteen end-to-end checks over every module.

use std::collections::BTreeSet;

use anyhow::{ensure, Context, Result};
use costas_core::abgroup::AbelianGroup;
use costas_core::arith::totient;
use costas_core::circmap::{export_array, is_circular_costas, is_standard, no_bijective_costas, verify_periodic_costas, welch_family, welch_map, GroupMap};
use costas_core::classic::{difference_triangle, has_shifting_property, is_circular, is_costas, is_singly_periodic, CostasSequence};
use costas_core::cpoly::{count_welch_polynomials, enumerate_welch_polynomials, lemma_checks, ratio_r, ratio_r_raw, CensusKind};
use costas_core::dpds::{from_map, is_dpds, ProductDifferenceSet, SearchMode};
use costas_core::fqpoly::LinearizedPoly;
use costas_core::gf::FiniteField;
use costas_core::perm::next_permutation;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use crate::parallel;
use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Adds the order-11 censuses.
    pub include_slow: bool,
    /// Keep every n-th linearized polynomial in the Welch map sweep.
    pub welch_stride: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { include_slow: false, welch_stride: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const CRITERIA: [&str; 13] = [
    "difference-triangle",
    "welch-sequences",
    "circular-sequences-are-welch",
    "welch-maps-standard-circular",
    "dpds-worked-example",
    "maps-versus-dpds",
    "order-six-nonexistence",
    "welch-polynomial-count",
    "ratio-values",
    "shifting-census",
    "lemma-checks",
    "array-export",
    "no-bijective-maps",
];

fn gf(p: u64, m: u32) -> Result<FiniteField> {
    Ok(FiniteField::new(p, m)?)
}

fn grp(s: &str) -> AbelianGroup {
    s.parse().expect("literal group")
}

/// Runs criterion `id` (1-based). Failures become `pass: false` with the
/// reason in `detail`.
pub fn run_criterion(id: usize, opts: &SuiteOptions) -> Outcome {
    let name = CRITERIA[id - 1];
    let res = match id {
        1 => difference_triangle_check(),
        2 => welch_sequences_check(),
        3 => circular_census_check(opts),
        4 => welch_maps_check(opts),
        5 => dpds_example_check(),
        6 => maps_versus_dpds_check(),
        7 => order_six_check(),
        8 => polynomial_count_check(),
        9 => ratio_check(),
        10 => shifting_census_check(opts),
        11 => lemma_check(),
        12 => export_check(),
        13 => bijective_check(),
        _ => unreachable!("criteria are numbered 1..=13"),
    };
    match res {
        Ok(detail) => Outcome { id, name, pass: true, detail },
        Err(e) => Outcome { id, name, pass: false, detail: format!("{e:#}") },
    }
}

pub fn run_suite(opts: &SuiteOptions) -> RunReport {
    let mut report = RunReport::new("suite run");
    report.param("include_slow", opts.include_slow).param("welch_stride", opts.welch_stride);
    let outcomes: Vec<Outcome> = (1..=CRITERIA.len()).map(|id| run_criterion(id, opts)).collect();
    for o in &outcomes {
        report.verdict(&format!("{:02}-{}", o.id, o.name), o.pass, o.detail.clone());
    }
    report.count("passed", outcomes.iter().filter(|o| o.pass).count()).count("total", outcomes.len());
    report
}

fn difference_triangle_check() -> Result<String> {
    let seq = CostasSequence::new(vec![2, 4, 3, 1])?;
    let rows = difference_triangle(&seq).rows;
    ensure!(rows == vec![vec![2, -1, -2], vec![1, -3], vec![-1]], "triangle {rows:?}");
    ensure!(is_costas(&seq), "2,4,3,1 is not Costas");
    Ok(format!("{rows:?}"))
}

fn welch_sequences_check() -> Result<String> {
    let mut total = 0;
    for p in [5u64, 7, 11, 13] {
        for alpha in 1..p as i64 {
            if costas_core::arith::order_mod_prime(alpha as u64, p) != Some(p - 1) {
                continue;
            }
            for c in 0..p as i64 - 1 {
                let s = costas_core::classic::welch_sequence(p, alpha, c)?;
                ensure!(is_costas(&s) && is_circular(&s) && has_shifting_property(&s) && is_singly_periodic(&s), "p={p} alpha={alpha} c={c}: {s}");
                total += 1;
            }
        }
    }
    Ok(format!("{total} sequences"))
}

fn circular_census_check(opts: &SuiteOptions) -> Result<String> {
    let mut primes = vec![5u64, 7];
    if opts.include_slow {
        primes.push(11);
    }
    let mut parts = Vec::new();
    for p in primes {
        let c = parallel::circular_census(p, opts.include_slow)?;
        let expect = totient(p - 1).context("totient")? * (p - 1);
        ensure!(c.found.len() as u64 == expect, "p={p}: {} circular, expected {expect}", c.found.len());
        ensure!(c.matches_welch(), "p={p}: census differs from the Welch family");
        parts.push(format!("p={p}: {}/{}", c.found.len(), c.candidates));
    }
    Ok(parts.join(", "))
}

fn welch_maps_check(opts: &SuiteOptions) -> Result<String> {
    let mut parts = Vec::new();
    for (p, m) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
        let f = gf(p, m)?;
        // sampling only ever applies above q = 16
        let stride = if f.q() > 16 { opts.welch_stride } else { 1 };
        let r = parallel::check_welch_maps(&f, &[0, 1, 2], stride)?;
        ensure!(r.failures == 0, "q={}: {} of {} maps fail", f.q(), r.failures, r.maps);
        if stride == 1 {
            let expect = costas_core::fqpoly::linearized_permutation_count(p, m);
            ensure!(BigUint::from(r.linearized) == expect, "q={}: {} linearized, expected {expect}", f.q(), r.linearized);
        }
        parts.push(format!("q={}: {}", f.q(), r.maps));
    }
    Ok(parts.join(", "))
}

const EXAMPLE_TABLE: [&str; 12] = [
    "(0,2)-(1,4)=(3,3)",
    "(1,4)-(0,2)=(1,2)",
    "(0,2)-(2,3)=(2,4)",
    "(1,4)-(2,3)=(3,1)",
    "(0,2)-(3,1)=(1,1)",
    "(1,4)-(3,1)=(2,3)",
    "(2,3)-(0,2)=(2,1)",
    "(3,1)-(0,2)=(3,4)",
    "(2,3)-(1,4)=(1,4)",
    "(3,1)-(1,4)=(2,2)",
    "(2,3)-(3,1)=(3,2)",
    "(3,1)-(2,3)=(1,3)",
];

fn dpds_example_check() -> Result<String> {
    let d = ProductDifferenceSet::from_coords(grp("Z4"), grp("Z5"), &[vec![0, 2], vec![1, 4], vec![2, 3], vec![3, 1]])?;
    ensure!(is_dpds(&d)?, "example set rejected");
    let got: BTreeSet<String> = d.difference_table().iter().map(|r| format!("{}-{}={}", r.minuend, r.subtrahend, r.difference)).collect();
    let want: BTreeSet<String> = EXAMPLE_TABLE.iter().map(|s| s.to_string()).collect();
    ensure!(got.len() == 12 && got == want, "difference table differs: {got:?}");
    Ok("12 differences".into())
}

/// Circular Costas straight from the definition on group elements.
fn naive_circular(f: &GroupMap) -> bool {
    let (g1, g2) = (f.domain(), f.codomain());
    let els: Vec<_> = g1.elements().collect();
    let images: BTreeSet<_> = els.iter().map(|x| f.image(x)).collect();
    images.len() == els.len()
        && els.iter().filter(|k| **k != g1.zero()).all(|k| {
            let diffs: BTreeSet<_> = els.iter().map(|i| g2.sub(&f.image(&g1.add(i, k).expect("same group")), &f.image(i)).expect("same group")).collect();
            diffs.len() == els.len()
        })
}

fn maps_versus_dpds_check() -> Result<String> {
    let (a, b) = (grp("Z4"), grp("Z5"));
    let mut perm: Vec<usize> = (0..5).collect();
    let mut maps = BTreeSet::new();
    loop {
        maps.insert(GroupMap::new(a.clone(), b.clone(), perm[..4].to_vec())?);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    ensure!(maps.len() == 120, "{} injective maps", maps.len());
    let mut circular = 0;
    let mut oracle = 0;
    let mut normalized = BTreeSet::new();
    for f in &maps {
        let c = is_circular_costas(f)?;
        ensure!(c == is_dpds(&from_map(f)?)?, "disagreement at {:?}", f.images());
        circular += c as usize;
        oracle += naive_circular(f) as usize;
        if c {
            normalized.insert(f.translation_normalized());
        }
    }
    ensure!(circular == oracle, "{circular} circular maps but the oracle counts {oracle}");
    let welch: BTreeSet<GroupMap> = welch_family(&gf(5, 1)?)?.into_iter().collect();
    ensure!(normalized == welch, "standard forms differ from the Welch family");
    ensure!(normalized.iter().all(is_standard), "normalized map not standard");
    Ok(format!("{circular} circular Costas maps, {} standard", welch.len()))
}

fn order_six_check() -> Result<String> {
    let z5 = grp("Z5");
    for target in ["Z6", "Z2xZ3"] {
        let found = parallel::circular_maps(&z5, &grp(target))?;
        ensure!(found.is_empty(), "{} circular maps into {target}", found.len());
    }
    let full = parallel::dpds_search(&z5, &grp("Z6"), SearchMode::Full)?;
    ensure!(full.candidates == 142_506, "{} candidates", full.candidates);
    ensure!(full.found.is_empty(), "{} sets of order 6", full.found.len());
    let norm = parallel::dpds_search(&z5, &grp("Z2xZ3"), SearchMode::Normalized)?;
    ensure!(norm.found.is_empty(), "{} normalized sets of order 6", norm.found.len());
    Ok(format!("{} + {} subsets, none", full.candidates, norm.candidates))
}

fn polynomial_count_check() -> Result<String> {
    let mut parts = Vec::new();
    for (p, m, frozen) in [(2, 2, 6u64), (5, 1, 8), (7, 1, 12), (2, 3, 336), (3, 2, 96), (2, 4, 40_320), (5, 2, 1_920), (3, 3, 44_928)] {
        let f = gf(p, m)?;
        let n = enumerate_welch_polynomials(&f)?.len() as u64;
        let formula = count_welch_polynomials(p, m)?;
        ensure!(BigUint::from(n) == formula && n == frozen, "q={}: enumerated {n}, formula {formula}, expected {frozen}", f.q());
        parts.push(format!("q={}: {n}", f.q()));
    }
    Ok(parts.join(", "))
}

fn ratio_check() -> Result<String> {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    for (p, m, want) in [(2, 3, r(6, 5)), (3, 3, r(12, 11)), (5, 3, r(30, 59))] {
        let got = ratio_r(p, m)?;
        ensure!(got == want, "R({p},{m}) = {got}, expected {want}");
    }
    let mut checked = 0;
    for p in [2, 3, 5, 7, 11, 13] {
        for m in 3..=6 {
            let (a, b) = (ratio_r(p, m)?, ratio_r_raw(p, m)?);
            ensure!(a == b, "R({p},{m}): closed form {a} vs quotient {b}");
            if m >= 4 {
                ensure!(a > BigRational::one(), "R({p},{m}) = {a} is not above 1");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} grid points agree"))
}

fn shifting_census_check(opts: &SuiteOptions) -> Result<String> {
    let mut fields = vec![(2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];
    if opts.include_slow {
        fields.push((11, 1));
    }
    let mut parts = Vec::new();
    for (p, m) in fields {
        let f = gf(p, m)?;
        let c = parallel::polynomial_census(&f, CensusKind::Shifting, opts.include_slow)?;
        let welch = enumerate_welch_polynomials(&f)?;
        ensure!(c.found == welch, "q={}: census {} vs {} of the form L(x^s)", f.q(), c.found.len(), welch.len());
        parts.push(format!("q={}: {}/{}", f.q(), c.found.len(), c.candidates));
    }
    Ok(parts.join(", "))
}

fn lemma_check() -> Result<String> {
    let mut parts = Vec::new();
    for (p, m) in [(2, 2), (5, 1), (7, 1), (2, 3)] {
        let f = gf(p, m)?;
        let r = lemma_checks(&f)?;
        ensure!(r.all_pass() && r.shifting > 0, "q={}: {r:?}", f.q());
        parts.push(format!("q={}: {}/{} {}/{}", f.q(), r.shifting_costas, r.shifting, r.welch_costas, r.welch));
    }
    Ok(parts.join(", "))
}

fn export_check() -> Result<String> {
    let f = gf(5, 2)?;
    let w = welch_map(&f, &LinearizedPoly::identity(&f), 0)?;
    let mut parts = Vec::new();
    for (split, dims) in [(&[24][..], vec![24, 5, 5]), (&[8, 3][..], vec![8, 3, 5, 5])] {
        let arr = export_array(&w, split, &[5, 5])?;
        ensure!(arr.dims == dims, "dims {:?}", arr.dims);
        ensure!(arr.ones.len() == 24, "{} ones", arr.ones.len());
        ensure!(verify_periodic_costas(&arr, split.len())?, "{:?} array fails the periodic check", arr.dims);
        parts.push(json!(arr.dims).to_string());
    }
    Ok(parts.join(" and "))
}

fn bijective_check() -> Result<String> {
    for g in ["Z3", "Z4", "Z5", "Z2xZ2", "Z6"] {
        ensure!(no_bijective_costas(&grp(g))?, "{g} has a bijective distinct-difference map");
    }
    Ok("none on Z3, Z4, Z5, Z2xZ2, Z6".into())
}
