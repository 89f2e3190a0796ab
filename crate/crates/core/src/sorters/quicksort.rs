//! Nonrecursive Quicksort with an explicit stack, insertion sort for small
//! subarrays and a recursive median-of-medians pivot selection, following
//! the reference implementation's index arithmetic exactly (including the
//! `(j == 0) ? j : j-1` guards that keep unsigned indices from wrapping).

use super::partition::{classic_collision_extended, new_collision};
use super::{Comparator, SortStats};

/// How the pivot of a subarray is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Fixed position: the middle element.
    Middle,
    /// Median of the elements at offsets n/4, n/2, n/2 + n/4.
    MedianOfThree,
    /// Median of three medians over a 9-element sample for subarrays of at
    /// least 9*q_min elements, median of three below.
    MedianOfMedians { q_min: u32 },
    /// Recursive median of medians with the adaptive sample-size rule.
    RecursiveMedianOfMedians { q_min: u32 },
}

/// Full sorter configuration.
#[derive(Clone, Copy, Debug)]
pub struct QuicksortConfig {
    pub pivot: PivotRule,
    pub threeway: bool,
    /// Subarrays up to this size go to insertion sort (1 disables).
    pub insertion_cutoff: usize,
}

/// Knobs of the reference program: recursive median of medians above
/// 9*q_min, median of three below, insertion sort up to n_basis_max.
#[derive(Clone, Copy, Debug)]
pub struct QuicksortOptions {
    pub threeway: bool,
    pub q_min: u32,
    pub n_basis_max: usize,
}

impl Default for QuicksortOptions {
    fn default() -> Self {
        QuicksortOptions {
            threeway: false,
            q_min: 5,
            n_basis_max: 15,
        }
    }
}

/// Sort with the reference parameterization.
pub fn quicksort<T, C>(a: &mut [T], opts: &QuicksortOptions, cmp: &mut C) -> SortStats
where
    T: Clone,
    C: Comparator<T>,
{
    assert!(opts.q_min >= 1, "q_min must be >= 1");
    assert!(opts.n_basis_max >= 3, "n_basis_max must be >= 3");
    quicksort_with(
        a,
        &QuicksortConfig {
            pivot: PivotRule::RecursiveMedianOfMedians { q_min: opts.q_min },
            threeway: opts.threeway,
            insertion_cutoff: opts.n_basis_max,
        },
        cmp,
    )
}

// Two size_t words per deferred interval, enough for any address space
// because the larger subarray is always the one deferred.
const STACK_SIZE: usize = usize::BITS as usize * 2;

/// Sort with an arbitrary pivot rule.
pub fn quicksort_with<T, C>(a: &mut [T], cfg: &QuicksortConfig, cmp: &mut C) -> SortStats
where
    T: Clone,
    C: Comparator<T>,
{
    let mut stats = SortStats::new();
    let n = a.len();
    let mut stack = [0usize; STACK_SIZE];
    let mut top = 0usize;
    if n > 1 {
        stack[0] = 0;
        stack[1] = n - 1;
        top = 2;
    }
    stats.max_stack_depth = top;
    while top > 0 {
        let mut right = stack[top - 1];
        let mut left = stack[top - 2];
        top -= 2;
        while left < right {
            let nt = right - left + 1;
            if nt <= cfg.insertion_cutoff.max(1) {
                insertion_pass(a, left, right, cmp, &mut stats);
                left = right;
                continue;
            }
            let ipartel = select_pivot(a, left, right, nt, cfg.pivot, cmp, &mut stats);
            // j is one past subarray 1, i one before subarray 2.
            let (j, i) = if cfg.threeway {
                let r = classic_collision_extended(left, right, ipartel, a, cmp, &mut stats);
                (r.sub1.end, r.sub2.start - 1)
            } else {
                let r = new_collision(left, right, ipartel, a, cmp, &mut stats);
                (r.pivot, r.pivot)
            };
            // Push the boundaries of the greater subarray, keep the smaller
            // one; stack depth stays logarithmic.
            assert!(top + 2 <= STACK_SIZE, "quicksort stack overflow");
            if j - left <= right - i {
                stack[top] = i + 1;
                stack[top + 1] = right;
                top += 2;
                right = if j == 0 { j } else { j - 1 };
            } else {
                stack[top] = left;
                stack[top + 1] = if j == 0 { j } else { j - 1 };
                top += 2;
                left = i + 1;
            }
            stats.max_stack_depth = stats.max_stack_depth.max(top);
        }
    }
    stats
}

/// Pivot index the rule would pick on the whole slice; selection
/// comparisons are counted into `stats`. Used by the position simulation.
pub fn select_pivot_index<T, C>(
    a: &[T],
    rule: PivotRule,
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    let n = a.len();
    select_pivot(a, 0, n - 1, n, rule, cmp, stats)
}

/// Recursive median of medians over a forced sample size m spread across
/// the whole slice.
pub fn select_pivot_forced_sample<T, C>(
    a: &[T],
    m: usize,
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    medofmed_counted(m, (a.len() - 1) / (m - 1), a, cmp, stats)
}

fn select_pivot<T, C>(
    a: &[T],
    left: usize,
    right: usize,
    nt: usize,
    rule: PivotRule,
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    let _ = right;
    match rule {
        PivotRule::Middle => left + nt / 2,
        PivotRule::MedianOfThree => {
            if nt >= 3 {
                median_of_three_pivot(a, left, nt, cmp, stats)
            } else {
                left + nt / 2
            }
        }
        PivotRule::MedianOfMedians { q_min } => {
            if nt >= 9 * q_min as usize {
                medofmed_counted(9, (nt - 1) / 8, &a[left..], cmp, stats) + left
            } else if nt >= 3 {
                median_of_three_pivot(a, left, nt, cmp, stats)
            } else {
                left + nt / 2
            }
        }
        PivotRule::RecursiveMedianOfMedians { q_min } => {
            if nt >= 9 * q_min as usize {
                let nc = nt / (9 * q_min as usize);
                let mut m = 1usize;
                while m * 3 <= nc {
                    m *= 3;
                }
                m *= 9;
                medofmed_counted(m, (nt - 1) / (m - 1), &a[left..], cmp, stats) + left
            } else if nt >= 3 {
                median_of_three_pivot(a, left, nt, cmp, stats)
            } else {
                left + nt / 2
            }
        }
    }
}

// Sample positions left + nt/4, left + nt/2, left + nt/2 + nt/4; the
// offset choice avoids a pathological interplay between end-positioned
// samples and the collision partitioning on monotone inputs.
fn median_of_three_pivot<T, C>(
    a: &[T],
    left: usize,
    nt: usize,
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    let i = left + nt / 4;
    let k = left + nt / 2;
    let j = k + nt / 4;
    stats.comparisons += 1;
    if cmp.le(&a[i], &a[k]) {
        stats.comparisons += 1;
        if cmp.le(&a[k], &a[j]) {
            k
        } else {
            stats.comparisons += 1;
            if cmp.lt(&a[i], &a[j]) {
                j
            } else {
                i
            }
        }
    } else {
        stats.comparisons += 1;
        if cmp.le(&a[j], &a[k]) {
            k
        } else {
            stats.comparisons += 1;
            if cmp.lt(&a[j], &a[i]) {
                j
            } else {
                i
            }
        }
    }
}

// MEDOF3: index of the median-valued element among positions i, j, k.
fn med3<T, C>(
    a: &[T],
    i: usize,
    j: usize,
    k: usize,
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    stats.comparisons += 1;
    if cmp.le(&a[i], &a[j]) {
        stats.comparisons += 1;
        if cmp.le(&a[j], &a[k]) {
            j
        } else {
            stats.comparisons += 1;
            if cmp.lt(&a[i], &a[k]) {
                k
            } else {
                i
            }
        }
    } else {
        stats.comparisons += 1;
        if cmp.le(&a[k], &a[j]) {
            j
        } else {
            stats.comparisons += 1;
            if cmp.lt(&a[k], &a[i]) {
                k
            } else {
                i
            }
        }
    }
}

/// Index of the recursive median of three medians of the sample
/// `a[0], a[inc], ..., a[(m-1)*inc]`. `m` must be a power of three >= 9.
pub fn medofmed<T, C>(m: usize, inc: usize, a: &[T], cmp: &mut C) -> (usize, SortStats)
where
    C: Comparator<T>,
{
    let mut stats = SortStats::new();
    let idx = medofmed_counted(m, inc, a, cmp, &mut stats);
    (idx, stats)
}

pub(crate) fn medofmed_counted<T, C>(
    m: usize,
    inc: usize,
    a: &[T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    assert!(m >= 9 && is_power_of_three(m), "sample size must be a power of three >= 9");
    assert!(a.len() > (m - 1) * inc, "sample exceeds the array");
    medofmed_rec(m, inc, a, 0, cmp, stats)
}

fn medofmed_rec<T, C>(
    m: usize,
    inc: usize,
    a: &[T],
    base: usize,
    cmp: &mut C,
    stats: &mut SortStats,
) -> usize
where
    C: Comparator<T>,
{
    let (i0, i1, i2);
    if m == 9 {
        let inc3 = inc * 3;
        let (mut i, mut j, mut k) = (base, base + inc, base + 2 * inc);
        i0 = med3(a, i, j, k, cmp, stats);
        i += inc3;
        j += inc3;
        k += inc3;
        i1 = med3(a, i, j, k, cmp, stats);
        i += inc3;
        j += inc3;
        k += inc3;
        i2 = med3(a, i, j, k, cmp, stats);
    } else {
        let m3 = m / 3;
        i0 = medofmed_rec(m3, inc, a, base, cmp, stats);
        i1 = medofmed_rec(m3, inc, a, base + m3 * inc, cmp, stats);
        i2 = medofmed_rec(m3, inc, a, base + 2 * m3 * inc, cmp, stats);
    }
    med3(a, i0, i1, i2, cmp, stats)
}

fn is_power_of_three(mut m: usize) -> bool {
    while m % 3 == 0 {
        m /= 3;
    }
    m == 1
}

// Straight insertion on the inclusive range [left, right].
pub(super) fn insertion_pass<T, C>(
    a: &mut [T],
    left: usize,
    right: usize,
    cmp: &mut C,
    stats: &mut SortStats,
) where
    T: Clone,
    C: Comparator<T>,
{
    for i in left + 1..=right {
        let mut j = i - 1;
        stats.comparisons += 1;
        if cmp.lt(&a[i], &a[j]) {
            let temp = a[i].clone();
            a[i] = a[j].clone();
            stats.movements += 2;
            while j > left {
                let k = j - 1;
                stats.comparisons += 1;
                if !cmp.lt(&temp, &a[k]) {
                    break;
                }
                a[j] = a[k].clone();
                stats.movements += 1;
                j = k;
            }
            a[j] = temp;
            stats.movements += 1;
        }
    }
}
