//! Exact oracles by brute force over all n! permutations.
//!
//! Enumeration is iterative (Heap's algorithm) over one reused buffer and
//! capped at n = 11 to keep full runs in seconds. All accumulators are
//! exact integers.

use std::collections::BTreeMap;

use crate::numerics::{exact_factorial, ExactCount};
use crate::pivot_models::ModelConfig;
use crate::sorters::{partition, quicksort_with, NaturalOrder, PartitionScheme, SortStats};

use super::model_sort_config;

/// Iterative permutation generator (Heap's algorithm) over 0..n-1.
pub struct Permutations {
    a: Vec<i64>,
    c: Vec<usize>,
    i: usize,
    started: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            a: (0..n as i64).collect(),
            c: vec![0; n],
            i: 0,
            started: false,
        }
    }

    /// The next permutation, or None when all n! have been produced.
    pub fn next_perm(&mut self) -> Option<&[i64]> {
        if !self.started {
            self.started = true;
            return Some(&self.a);
        }
        let n = self.a.len();
        while self.i < n {
            if self.c[self.i] < self.i {
                if self.i % 2 == 0 {
                    self.a.swap(0, self.i);
                } else {
                    self.a.swap(self.c[self.i], self.i);
                }
                self.c[self.i] += 1;
                self.i = 0;
                return Some(&self.a);
            }
            self.c[self.i] = 0;
            self.i += 1;
        }
        None
    }
}

/// Comparison-count histogram with exact integer frequencies.
pub type ExactHistogram = BTreeMap<u64, u64>;

/// Exact statistics of one partitioning scheme over all permutations of n
/// distinct elements, pivot taken from index n/2.
#[derive(Clone, Debug)]
pub struct PartitionEnumeration {
    pub runs: u64,
    pub comparison_sum: u64,
    pub movement_sum: u64,
    pub histogram: ExactHistogram,
}

impl PartitionEnumeration {
    pub fn comparison_avg(&self) -> f64 {
        self.comparison_sum as f64 / self.runs as f64
    }

    pub fn movement_avg(&self) -> f64 {
        self.movement_sum as f64 / self.runs as f64
    }

    /// True when the average equals num/den exactly (integer identity
    /// comparison_sum * den = num * runs).
    pub fn comparison_avg_is(&self, num: u64, den: u64) -> bool {
        self.comparison_sum as u128 * den as u128 == num as u128 * self.runs as u128
    }
}

const ENUM_MAX_N: usize = 11;

/// Run a partitioning scheme over all n! permutations (2 <= n <= 11).
pub fn enumerate_partition_stats(scheme: PartitionScheme, n: usize) -> PartitionEnumeration {
    assert!((2..=ENUM_MAX_N).contains(&n), "enumeration capped at n = 11");
    let mut perms = Permutations::new(n);
    let mut work = vec![0i64; n];
    let mut out = PartitionEnumeration {
        runs: 0,
        comparison_sum: 0,
        movement_sum: 0,
        histogram: ExactHistogram::new(),
    };
    while let Some(p) = perms.next_perm() {
        work.copy_from_slice(p);
        let mut stats = SortStats::new();
        let _ = partition(scheme, n / 2, &mut work, &mut NaturalOrder, &mut stats);
        out.runs += 1;
        out.comparison_sum += stats.comparisons;
        out.movement_sum += stats.movements;
        *out.histogram.entry(stats.comparisons).or_insert(0) += 1;
    }
    debug_assert_eq!(ExactCount::from(out.runs), exact_factorial(n as u64));
    out
}

/// Exact comparison-count histogram of the full instrumented Quicksort
/// matching `cfg` over all n! permutations (2 <= n <= 11, two-way
/// partitioning, pivot rule and basis from the model).
pub fn enumerate_sort_histogram(cfg: &ModelConfig, n: usize) -> ExactHistogram {
    assert!((2..=ENUM_MAX_N).contains(&n), "enumeration capped at n = 11");
    let sort_cfg = model_sort_config(cfg, false);
    let mut perms = Permutations::new(n);
    let mut work = vec![0i64; n];
    let mut hist = ExactHistogram::new();
    let mut runs = 0u64;
    while let Some(p) = perms.next_perm() {
        work.copy_from_slice(p);
        let stats = quicksort_with(&mut work, &sort_cfg, &mut NaturalOrder);
        debug_assert!(work.windows(2).all(|w| w[0] <= w[1]));
        *hist.entry(stats.comparisons).or_insert(0) += 1;
        runs += 1;
    }
    assert_eq!(ExactCount::from(runs), exact_factorial(n as u64));
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pivot_models::Model;

    #[test]
    fn permutation_count_is_exact() {
        for n in 1..=7usize {
            let mut perms = Permutations::new(n);
            let mut count = 0u64;
            let mut seen = std::collections::HashSet::new();
            while let Some(p) = perms.next_perm() {
                count += 1;
                seen.insert(p.to_vec());
            }
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(count, fact);
            assert_eq!(seen.len() as u64, fact, "duplicates at n = {n}");
        }
    }

    #[test]
    fn partitioning_cost_table_row_n5() {
        // Classic collision at n = 5 averages 6.200 comparisons and 5.200
        // movements over all 120 permutations.
        let e = enumerate_partition_stats(PartitionScheme::ClassicCollision, 5);
        assert_eq!(e.runs, 120);
        assert!(e.comparison_avg_is(31, 5)); // 6.200
        assert_eq!(e.movement_sum, 624); // 5.200 * 120
    }

    #[test]
    fn partitioning_cost_table_row_n2() {
        let e = enumerate_partition_stats(PartitionScheme::NewCollision, 2);
        assert!(e.comparison_avg_is(3, 2)); // 1.500
        assert!(e.movement_sum == 10); // 5.000 * 2
    }

    #[test]
    fn sweep_simple_is_constant() {
        let e = enumerate_partition_stats(PartitionScheme::SweepSimple, 6);
        assert_eq!(e.histogram.len(), 1);
        assert_eq!(*e.histogram.keys().next().unwrap(), 5);
    }

    #[test]
    fn sort_histogram_tiny_cases() {
        let cfg = ModelConfig::with_defaults(Model::Simple);
        let h2 = enumerate_sort_histogram(&cfg, 2);
        assert_eq!(h2.get(&1), Some(&1));
        assert_eq!(h2.get(&2), Some(&1));
        let h3 = enumerate_sort_histogram(&cfg, 3);
        let total: u64 = h3.values().sum();
        assert_eq!(total, 6);
        let mean: f64 = h3.iter().map(|(&j, &c)| j as f64 * c as f64).sum::<f64>() / 6.0;
        assert!((mean - 3.5).abs() < 1e-12);
    }

    #[test]
    fn sort_histogram_n7_total() {
        let cfg = ModelConfig::with_defaults(Model::Simple);
        let h = enumerate_sort_histogram(&cfg, 7);
        assert_eq!(h.values().sum::<u64>(), 5040);
    }

    #[test]
    fn model5_small_sizes_are_pure_insertion_sort() {
        // Below the insertion basis the sorter is insertion sort, so the
        // histogram matches its recurrence: at n = 3, {2: 2, 3: 4}.
        let cfg = ModelConfig::with_defaults(Model::RecursiveMomInsertion);
        let h = enumerate_sort_histogram(&cfg, 3);
        assert_eq!(h.get(&2), Some(&2));
        assert_eq!(h.get(&3), Some(&4));
    }
}
