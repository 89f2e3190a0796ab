//! Two Heapsort baselines: the original top-down version built by
//! successive insertions, and the bottom-up variant that first descends to
//! a leaf along the larger children (one comparison per level) and then
//! climbs back up to the insertion point, which makes it cheaper in
//! comparisons on random data.

use super::{Comparator, SortStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeapsortVariant {
    Classic,
    BottomUp,
}

pub fn heapsort<T, C>(a: &mut [T], variant: HeapsortVariant, cmp: &mut C) -> SortStats
where
    T: Clone,
    C: Comparator<T>,
{
    let mut stats = SortStats::new();
    match variant {
        HeapsortVariant::Classic => classic(a, cmp, &mut stats),
        HeapsortVariant::BottomUp => bottom_up(a, cmp, &mut stats),
    }
    stats
}

// Build the heap by sifting each new element up, extract with the
// two-comparisons-per-level sift-down.
fn classic<T, C>(a: &mut [T], cmp: &mut C, stats: &mut SortStats)
where
    T: Clone,
    C: Comparator<T>,
{
    let n = a.len();
    if n < 2 {
        return;
    }
    for i in 1..n {
        sift_up(a, i, cmp, stats);
    }
    for end in (1..n).rev() {
        let temp = a[0].clone();
        a[0] = a[end].clone();
        a[end] = temp;
        stats.movements += 3;
        sift_down(a, 0, end, cmp, stats);
    }
}

fn sift_up<T, C>(a: &mut [T], start: usize, cmp: &mut C, stats: &mut SortStats)
where
    T: Clone,
    C: Comparator<T>,
{
    let mut child = start;
    while child > 0 {
        let parent = (child - 1) / 2;
        stats.comparisons += 1;
        if cmp.lt(&a[parent], &a[child]) {
            let temp = a[parent].clone();
            a[parent] = a[child].clone();
            a[child] = temp;
            stats.movements += 3;
            child = parent;
        } else {
            break;
        }
    }
}

fn sift_down<T, C>(a: &mut [T], root: usize, end: usize, cmp: &mut C, stats: &mut SortStats)
where
    T: Clone,
    C: Comparator<T>,
{
    let mut root = root;
    loop {
        let mut child = 2 * root + 1;
        if child >= end {
            break;
        }
        if child + 1 < end {
            stats.comparisons += 1;
            if cmp.lt(&a[child], &a[child + 1]) {
                child += 1;
            }
        }
        stats.comparisons += 1;
        if cmp.lt(&a[root], &a[child]) {
            let temp = a[root].clone();
            a[root] = a[child].clone();
            a[child] = temp;
            stats.movements += 3;
            root = child;
        } else {
            break;
        }
    }
}

fn bottom_up<T, C>(a: &mut [T], cmp: &mut C, stats: &mut SortStats)
where
    T: Clone,
    C: Comparator<T>,
{
    let n = a.len();
    if n < 2 {
        return;
    }
    for root in (0..n / 2).rev() {
        bottom_up_sift(a, root, n, cmp, stats);
    }
    for end in (1..n).rev() {
        let temp = a[0].clone();
        a[0] = a[end].clone();
        a[end] = temp;
        stats.movements += 3;
        bottom_up_sift(a, 0, end, cmp, stats);
    }
}

// Place a[root] by descending to a leaf along the larger children, then
// climbing back up to the first position whose value is not smaller, and
// rotating the path by one.
fn bottom_up_sift<T, C>(a: &mut [T], root: usize, end: usize, cmp: &mut C, stats: &mut SortStats)
where
    T: Clone,
    C: Comparator<T>,
{
    let mut leaf = root;
    loop {
        let child = 2 * leaf + 1;
        if child + 1 < end {
            stats.comparisons += 1;
            leaf = if cmp.lt(&a[child], &a[child + 1]) {
                child + 1
            } else {
                child
            };
        } else if child < end {
            leaf = child;
        } else {
            break;
        }
    }
    let mut pos = leaf;
    while pos > root {
        stats.comparisons += 1;
        if !cmp.lt(&a[pos], &a[root]) {
            break;
        }
        pos = (pos - 1) / 2;
    }
    // Rotate: a[root] goes to pos, everything on the path shifts one up.
    let mut carry = a[root].clone();
    stats.movements += 1;
    while pos > root {
        std::mem::swap(&mut carry, &mut a[pos]);
        stats.movements += 2;
        pos = (pos - 1) / 2;
    }
    a[root] = carry;
    stats.movements += 1;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sorters::test_support::is_sorted_permutation_of;
    use crate::sorters::NaturalOrder;

    fn scrambled(n: usize) -> Vec<i64> {
        let mut state = 0x2545F4914F6CDD1Du64;
        (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % 1_000_000) as i64
            })
            .collect()
    }

    #[test]
    fn both_variants_sort() {
        for variant in [HeapsortVariant::Classic, HeapsortVariant::BottomUp] {
            for input in [
                vec![],
                vec![1],
                vec![2, 1],
                vec![1, 1, 1],
                (0..100).collect::<Vec<i64>>(),
                (0..100).rev().collect(),
                scrambled(1000),
            ] {
                let mut v = input.clone();
                heapsort(&mut v, variant, &mut NaturalOrder);
                assert!(is_sorted_permutation_of(&input, &v), "{variant:?}");
            }
        }
    }

    #[test]
    fn sorted_input_stays_a_permutation() {
        let input: Vec<i64> = (0..100).collect();
        let mut v = input.clone();
        heapsort(&mut v, HeapsortVariant::Classic, &mut NaturalOrder);
        assert!(is_sorted_permutation_of(&input, &v));
    }

    #[test]
    fn bottom_up_needs_fewer_comparisons_on_random_data() {
        let input = scrambled(100_000);
        let mut v1 = input.clone();
        let c_classic = heapsort(&mut v1, HeapsortVariant::Classic, &mut NaturalOrder).comparisons;
        let mut v2 = input.clone();
        let c_bu = heapsort(&mut v2, HeapsortVariant::BottomUp, &mut NaturalOrder).comparisons;
        assert!(c_bu < c_classic, "bottom-up {c_bu} vs classic {c_classic}");
        // Both around n log2 n territory, bottom-up close to one comparison
        // per level.
        let n_log_n = 100_000.0 * (100_000f64).log2();
        assert!((c_bu as f64) < 1.3 * n_log_n, "bottom-up too expensive: {c_bu}");
    }
}
