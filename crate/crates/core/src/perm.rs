//! Lexicographic permutation walking, split into branches by first entry so
//! callers can fan branches out to workers.

/// Rearranges `xs` into the next permutation in lexicographic order.
/// Returns `false` (leaving `xs` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Visits every permutation of the sorted, distinct `values` whose first
/// entry is `values[branch]`, in lexicographic order.
pub fn for_each_in_branch<T: Ord + Clone>(values: &[T], branch: usize, mut visit: impl FnMut(&[T])) {
    let mut cur: alloc::vec::Vec<T> = alloc::vec::Vec::with_capacity(values.len());
    cur.push(values[branch].clone());
    cur.extend(values.iter().enumerate().filter(|&(i, _)| i != branch).map(|(_, v)| v.clone()));
    loop {
        visit(&cur);
        if !next_permutation(&mut cur[1..]) {
            break;
        }
    }
}

/// `n!` if it fits in a `u64`.
pub fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}
