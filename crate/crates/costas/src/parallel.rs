//! Rayon drivers for the branch-split searches in `costas-core`.
//!
//! Each search is cut into independent branches, run on the current pool
//! and merged in branch order, so results never depend on thread count.

use costas_core::abgroup::AbelianGroup;
use costas_core::circmap::{circular_costas_branch, is_circular_costas, is_standard, welch_map, GroupMap, MapError, CENSUS_DOMAIN_CAP};
use costas_core::classic::{costas_branch, welch_family, ClassicError, CostasSequence};
use costas_core::cpoly::{census_branch, census_branches, census_guard, circular_branch, circular_guard, CensusKind, CensusPart, CircularCensus, CpolyError};
use costas_core::dpds::{search_branch, search_size, DpdsError, SearchMode, SearchOutcome, SEARCH_CAP};
use costas_core::fqpoly::enumerate_linearized_permutations;
use costas_core::gf::FiniteField;
use rayon::prelude::*;

/// Environment fallback for the worker count.
pub const THREADS_ENV: &str = "COSTAS_THREADS";

/// A pool with `threads` workers, or rayon's default when `None` or 0.
pub fn pool(threads: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

/// All Costas sequences of order `n`, lexicographic.
pub fn costas_census(n: usize, limit: usize) -> Result<Vec<CostasSequence>, ClassicError> {
    if n > limit {
        return Err(ClassicError::CapExceeded { n, limit });
    }
    if n == 0 {
        return costas_core::classic::enumerate_costas(0, limit);
    }
    let parts: Vec<Vec<CostasSequence>> = (1..=n as u32).into_par_iter().map(|first| costas_branch(n, first)).collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn polynomial_census(field: &FiniteField, kind: CensusKind, extended: bool) -> Result<CensusPart, CpolyError> {
    census_guard(field, extended)?;
    let parts = (0..census_branches(field)).into_par_iter().map(|b| census_branch(field, kind, b)).collect::<Result<Vec<_>, _>>()?;
    let mut out = CensusPart::default();
    for part in parts {
        out.candidates += part.candidates;
        out.found.extend(part.found);
    }
    out.found.sort();
    Ok(out)
}

pub fn circular_census(p: u64, extended: bool) -> Result<CircularCensus, CpolyError> {
    circular_guard(p, extended)?;
    let parts = (0..p as usize - 1).into_par_iter().map(|b| circular_branch(p, b)).collect::<Result<Vec<_>, _>>()?;
    let mut candidates = 0;
    let mut found = Vec::new();
    for (c, f) in parts {
        candidates += c;
        found.extend(f);
    }
    found.sort();
    Ok(CircularCensus { candidates, found, welch: welch_family(p)? })
}

pub fn dpds_search(a: &AbelianGroup, b: &AbelianGroup, mode: SearchMode) -> Result<SearchOutcome, DpdsError> {
    let (candidates, branches) = search_size(a, b, mode)?;
    if candidates > SEARCH_CAP {
        return Err(DpdsError::CapExceeded { candidates, cap: SEARCH_CAP });
    }
    let parts = (0..branches).into_par_iter().map(|br| search_branch(a, b, mode, br)).collect::<Result<Vec<_>, _>>()?;
    let mut out = SearchOutcome::default();
    for part in parts {
        out.candidates += part.candidates;
        out.found.extend(part.found);
    }
    Ok(out)
}

/// Every circular Costas map `domain -> codomain`, sorted.
pub fn circular_maps(domain: &AbelianGroup, codomain: &AbelianGroup) -> Result<Vec<GroupMap>, MapError> {
    if domain.order() > CENSUS_DOMAIN_CAP {
        return Err(MapError::CapExceeded { order: domain.order(), cap: CENSUS_DOMAIN_CAP });
    }
    let parts = (0..codomain.size()).into_par_iter().map(|first| circular_costas_branch(domain, codomain, first)).collect::<Result<Vec<_>, _>>()?;
    Ok(parts.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WelchCheck {
    pub linearized: usize,
    pub maps: usize,
    pub failures: usize,
}

/// Builds `i -> L(alpha^(i+c))` for every linearized permutation `L` and
/// each `c`, checking circular Costas and standard on each. `stride`
/// keeps every `stride`-th `L` (1 for all).
pub fn check_welch_maps(field: &FiniteField, cs: &[i64], stride: usize) -> Result<WelchCheck, MapError> {
    let ls: Vec<_> = enumerate_linearized_permutations(field)?.into_iter().step_by(stride.max(1)).collect();
    let failures = ls
        .par_iter()
        .map(|l| {
            let mut bad = 0;
            for &c in cs {
                let w = welch_map(field, l, c)?;
                if !(is_circular_costas(&w)? && is_standard(&w)) {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<usize>, MapError>>()?
        .into_iter()
        .sum();
    Ok(WelchCheck { linearized: ls.len(), maps: ls.len() * cs.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let seq = costas_core::cpoly::census(&f7, CensusKind::Shifting, false).unwrap();
        for threads in [1, 3] {
            let par = pool(Some(threads)).install(|| polynomial_census(&f7, CensusKind::Shifting, false)).unwrap();
            assert_eq!(par, seq);
        }
        assert_eq!(costas_census(6, 8).unwrap(), costas_core::classic::enumerate_costas(6, 8).unwrap());
        let g4: AbelianGroup = "Z4".parse().unwrap();
        let g5: AbelianGroup = "Z5".parse().unwrap();
        assert_eq!(circular_maps(&g4, &g5).unwrap(), costas_core::circmap::circular_costas_maps(&g4, &g5).unwrap());
        assert_eq!(circular_census(7, false).unwrap(), costas_core::cpoly::census_circular_prime(7, false).unwrap());
        let a = dpds_search(&g4, &g5, SearchMode::Full).unwrap();
        assert_eq!(a, costas_core::dpds::search_dpds(&g4, &g5, SearchMode::Full).unwrap());
    }
}
