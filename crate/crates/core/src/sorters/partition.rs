//! The five partitioning algorithms, transliterated with identical index
//! arithmetic from the reference C listings.
//!
//! "Sweep" methods scan one index left to right; "collision" methods scan
//! two indices toward each other. The extended variants are three-way:
//! they leave elements equal to the pivot in a middle run, which is what
//! makes many-duplicate inputs cheap.

use super::{Comparator, SortStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionScheme {
    /// One left-to-right scan, pivot parked at index 0; n-1 comparisons.
    SweepSimple,
    /// Two sweeps producing a three-way arrangement.
    SweepExtended,
    /// Singleton's two-pointer scheme; pivot stays wherever the scans
    /// leave it, subarrays may overlap an unplaced pivot.
    ClassicCollision,
    /// Classic collision followed by an equal-run pass (three-way).
    ClassicCollisionExtended,
    /// Collision scheme with the pivot parked at the right end and placed
    /// exactly between the subarrays; n-1 or n comparisons.
    NewCollision,
}

/// Subarray bounds after partitioning. Anything between `sub1` and `sub2`
/// is in final position (the pivot, or the equal run for three-way
/// schemes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionResult {
    pub sub1: std::ops::Range<usize>,
    pub sub2: std::ops::Range<usize>,
}

/// Partition `a` around the element at `ipart`. Single-element and empty
/// arrays are tolerated as no-ops.
pub fn partition<T, C>(
    scheme: PartitionScheme,
    ipart: usize,
    a: &mut [T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> PartitionResult
where
    T: Clone,
    C: Comparator<T>,
{
    let n = a.len();
    if n <= 1 {
        return PartitionResult {
            sub1: 0..0,
            sub2: n..n,
        };
    }
    assert!(ipart < n, "pivot index out of range");
    match scheme {
        PartitionScheme::SweepSimple => sweep_simple(ipart, a, cmp, stats),
        PartitionScheme::SweepExtended => sweep_extended(ipart, a, cmp, stats),
        PartitionScheme::ClassicCollision => classic_collision(ipart, a, cmp, stats),
        PartitionScheme::ClassicCollisionExtended => {
            classic_collision_extended(0, n - 1, ipart, a, cmp, stats)
        }
        PartitionScheme::NewCollision => new_collision(0, n - 1, ipart, a, cmp, stats).result,
    }
}

pub(super) struct NewCollisionOutcome {
    pub result: PartitionResult,
    /// Final pivot index.
    pub pivot: usize,
}

// Pivot swapped to the right end, two scans collide, pivot placed between
// the subarrays. Works on the inclusive index range [left, right] so the
// quicksort driver can share it.
pub(super) fn new_collision<T, C>(
    left: usize,
    right: usize,
    ipart: usize,
    a: &mut [T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> NewCollisionOutcome
where
    T: Clone,
    C: Comparator<T>,
{
    let partval = a[ipart].clone();
    stats.movements += 1;
    a[ipart] = a[right].clone();
    a[right] = partval.clone();
    stats.movements += 2;
    let mut i = left;
    let mut j = right - 1;
    loop {
        loop {
            stats.comparisons += 1;
            if !cmp.lt(&a[i], &partval) {
                break;
            }
            i += 1;
        }
        while i < j {
            stats.comparisons += 1;
            if !cmp.lt(&partval, &a[j]) {
                break;
            }
            j -= 1;
        }
        if j <= i {
            break;
        }
        let temp = a[i].clone();
        a[i] = a[j].clone();
        a[j] = temp;
        stats.movements += 3;
        i += 1;
        j -= 1;
    }
    a[right] = a[i].clone();
    a[i] = partval;
    stats.movements += 2;
    NewCollisionOutcome {
        result: PartitionResult {
            sub1: left..i,
            sub2: i + 1..right + 1,
        },
        pivot: i,
    }
}

// Pivot parked at index 0; one scan; n-1 comparisons always.
fn sweep_simple<T, C>(
    ipart: usize,
    a: &mut [T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> PartitionResult
where
    T: Clone,
    C: Comparator<T>,
{
    let n = a.len();
    let partval = a[ipart].clone();
    stats.movements += 1;
    a[ipart] = a[0].clone();
    stats.movements += 1;
    let mut i = 0usize;
    for j in 1..n {
        stats.comparisons += 1;
        if cmp.lt(&a[j], &partval) {
            i += 1;
            let temp = a[i].clone();
            a[i] = a[j].clone();
            a[j] = temp;
            stats.movements += 3;
        }
    }
    a[0] = a[i].clone();
    a[i] = partval;
    stats.movements += 2;
    PartitionResult {
        sub1: 0..i,
        sub2: i + 1..n,
    }
}

// Two sweeps: move smaller elements front, then gather the equal run.
fn sweep_extended<T, C>(
    ipart: usize,
    a: &mut [T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> PartitionResult
where
    T: Clone,
    C: Comparator<T>,
{
    let n = a.len();
    let partval = a[ipart].clone();
    stats.movements += 1;
    let mut j = 0usize;
    for i in 0..n {
        stats.comparisons += 1;
        if cmp.lt(&a[i], &partval) {
            let temp = a[j].clone();
            a[j] = a[i].clone();
            a[i] = temp;
            stats.movements += 3;
            j += 1;
        }
    }
    let mut i = j;
    for k in i..n {
        stats.comparisons += 1;
        if cmp.eq(&a[k], &partval) {
            let temp = a[i].clone();
            a[i] = a[k].clone();
            a[k] = temp;
            stats.movements += 3;
            i += 1;
        }
    }
    PartitionResult {
        sub1: 0..j,
        sub2: i..n,
    }
}

// Singleton's scheme. The scan indices may cross below zero, so they are
// signed here exactly as in the original.
fn classic_collision<T, C>(
    ipart: usize,
    a: &mut [T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> PartitionResult
where
    T: Clone,
    C: Comparator<T>,
{
    let n = a.len();
    let partval = a[ipart].clone();
    stats.movements += 1;
    let mut i = 0isize;
    let mut j = (n - 1) as isize;
    loop {
        loop {
            stats.comparisons += 1;
            if !cmp.lt(&a[i as usize], &partval) {
                break;
            }
            i += 1;
        }
        loop {
            stats.comparisons += 1;
            if !cmp.lt(&partval, &a[j as usize]) {
                break;
            }
            j -= 1;
        }
        if i <= j {
            let temp = a[i as usize].clone();
            a[i as usize] = a[j as usize].clone();
            a[j as usize] = temp;
            stats.movements += 3;
            i += 1;
            j -= 1;
        }
        if i > j {
            break;
        }
    }
    PartitionResult {
        sub1: 0..(j + 1) as usize,
        sub2: i as usize..n,
    }
}

// Classic collision against <=, then a second collision pass that gathers
// the run of pivot-equal elements behind subarray 1. Works on the
// inclusive range [left, right]; the scans cannot leave it because the
// pivot value itself stops them.
pub(super) fn classic_collision_extended<T, C>(
    left: usize,
    right: usize,
    ipart: usize,
    a: &mut [T],
    cmp: &mut C,
    stats: &mut SortStats,
) -> PartitionResult
where
    T: Clone,
    C: Comparator<T>,
{
    let partval = a[ipart].clone();
    stats.movements += 1;
    let mut j = left;
    let mut k = right;
    loop {
        loop {
            stats.comparisons += 1;
            if !cmp.lt(&a[j], &partval) {
                break;
            }
            j += 1;
        }
        while j < k {
            stats.comparisons += 1;
            if !cmp.le(&partval, &a[k]) {
                break;
            }
            k -= 1;
        }
        if k <= j {
            break;
        }
        let temp = a[j].clone();
        a[j] = a[k].clone();
        a[k] = temp;
        stats.movements += 3;
        j += 1;
        k -= 1;
    }
    let mut k = j;
    let mut i = right;
    loop {
        while k <= i {
            stats.comparisons += 1;
            if !cmp.eq(&partval, &a[k]) {
                break;
            }
            k += 1;
        }
        while k <= i {
            stats.comparisons += 1;
            if !cmp.lt(&partval, &a[i]) {
                break;
            }
            i -= 1;
        }
        if i <= k {
            break;
        }
        let temp = a[k].clone();
        a[k] = a[i].clone();
        a[i] = temp;
        stats.movements += 3;
        k += 1;
        i -= 1;
    }
    PartitionResult {
        sub1: left..j,
        sub2: i + 1..right + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sorters::NaturalOrder;

    fn run(scheme: PartitionScheme, mut v: Vec<i64>) -> (Vec<i64>, PartitionResult, SortStats) {
        let mut stats = SortStats::new();
        let ipart = v.len() / 2;
        let r = partition(scheme, ipart, &mut v, &mut NaturalOrder, &mut stats);
        (v, r, stats)
    }

    fn check_arrangement(scheme: PartitionScheme, v: &[i64], r: &PartitionResult) {
        // Everything in sub1 is <= everything between the subarrays, which
        // is <= everything in sub2; for three-way schemes the middle run is
        // constant.
        let middle: Vec<i64> = v[r.sub1.end..r.sub2.start].to_vec();
        assert!(!middle.is_empty() || r.sub1.end == r.sub2.start);
        if let (Some(&mmin), Some(&mmax)) = (middle.iter().min(), middle.iter().max()) {
            for &x in &v[r.sub1.clone()] {
                assert!(x <= mmin);
            }
            for &x in &v[r.sub2.clone()] {
                assert!(x >= mmax);
            }
            match scheme {
                PartitionScheme::SweepExtended | PartitionScheme::ClassicCollisionExtended => {
                    assert!(mmin == mmax, "equal run must be constant");
                    for &x in &v[r.sub1.clone()] {
                        assert!(x < mmin);
                    }
                    for &x in &v[r.sub2.clone()] {
                        assert!(x > mmax);
                    }
                }
                _ => {}
            }
        }
    }

    #[test]
    fn all_schemes_partition_correctly() {
        let inputs: Vec<Vec<i64>> = vec![
            vec![],
            vec![7],
            vec![2, 1],
            vec![1, 2],
            vec![5, 5, 5, 5, 5],
            vec![3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5],
            (0..20).rev().collect(),
            vec![1, 2, 3, 4, 5, 6, 7],
        ];
        for scheme in [
            PartitionScheme::SweepSimple,
            PartitionScheme::SweepExtended,
            PartitionScheme::ClassicCollision,
            PartitionScheme::ClassicCollisionExtended,
            PartitionScheme::NewCollision,
        ] {
            for input in &inputs {
                let (v, r, _) = run(scheme, input.clone());
                let mut sorted_in = input.clone();
                let mut sorted_out = v.clone();
                sorted_in.sort_unstable();
                sorted_out.sort_unstable();
                assert_eq!(sorted_in, sorted_out, "{scheme:?} lost elements");
                if input.len() >= 2 {
                    check_arrangement(scheme, &v, &r);
                }
            }
        }
    }

    #[test]
    fn sweep_simple_comparison_count_is_fixed() {
        for n in [2usize, 5, 10, 33] {
            let v: Vec<i64> = (0..n as i64).rev().collect();
            let (_, _, stats) = run(PartitionScheme::SweepSimple, v);
            assert_eq!(stats.comparisons, n as u64 - 1);
        }
    }

    #[test]
    fn new_collision_comparisons_follow_final_position() {
        // n-1 comparisons when the pivot lands left of its start, n when it
        // collects i extra comparisons; always one of the two.
        for perm in [
            vec![1i64, 2],
            vec![2, 1],
            vec![3, 1, 2],
            vec![2, 3, 1],
            vec![1, 2, 3],
        ] {
            let n = perm.len() as u64;
            let (_, _, stats) = run(PartitionScheme::NewCollision, perm);
            assert!(stats.comparisons == n - 1 || stats.comparisons == n);
        }
    }

    #[test]
    fn classic_collision_extended_is_idempotent_in_arrangement() {
        let input: Vec<i64> = vec![4, 2, 4, 1, 4, 7, 0, 4, 9, 4];
        let mut stats = SortStats::new();
        let mut v = input.clone();
        let r1 = partition(
            PartitionScheme::ClassicCollisionExtended,
            v.len() / 2,
            &mut v,
            &mut NaturalOrder,
            &mut stats,
        );
        let arrangement = v.clone();
        // Re-partitioning around an element of the equal run leaves the
        // three regions as they are.
        let mid = r1.sub1.end;
        let mut v2 = v.clone();
        let r2 = partition(
            PartitionScheme::ClassicCollisionExtended,
            mid,
            &mut v2,
            &mut NaturalOrder,
            &mut stats,
        );
        assert_eq!(arrangement, v2);
        assert_eq!(r1, r2);
    }

    #[test]
    fn three_way_equal_input_costs_stay_linear() {
        let n = 1000usize;
        for scheme in [
            PartitionScheme::SweepExtended,
            PartitionScheme::ClassicCollisionExtended,
        ] {
            let v = vec![42i64; n];
            let (_, r, stats) = run(scheme, v);
            assert_eq!(r.sub1, 0..0);
            assert_eq!(r.sub2, n..n);
            assert!(stats.comparisons <= 2 * n as u64 + 2, "{scheme:?}");
        }
    }
}
