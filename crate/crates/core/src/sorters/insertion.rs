//! Sorting by straight insertion.

use super::quicksort::insertion_pass;
use super::{Comparator, SortStats};

/// Insertion sort over the whole slice. Averaged over all permutations the
/// comparison count is n(n+3)/4 - H_n, the maximum n(n-1)/2.
pub fn insertion_sort<T, C>(a: &mut [T], cmp: &mut C) -> SortStats
where
    T: Clone,
    C: Comparator<T>,
{
    let mut stats = SortStats::new();
    if a.len() > 1 {
        insertion_pass(a, 0, a.len() - 1, cmp, &mut stats);
    }
    stats
}
