//! Wall-clock benchmark harness.
//!
//! Times are medians over fresh copies and are reported, never asserted —
//! only comparison/movement counts and orderings are stable enough to
//! gate on.

use std::time::Instant;

use crate::pivot_models::Model;
use crate::sorters::{
    heapsort, insertion_sort, quicksort_with, Comparator, HeapsortVariant, NaturalOrder,
    SortStats,
};

use super::datasets::{generate_dataset, Dataset, DatasetSpec};
use super::model_sort_config;

/// A sorter the harness can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SorterKind {
    Quicksort { model: Model, threeway: bool },
    HeapsortClassic,
    HeapsortBottomUp,
    Insertion,
}

impl SorterKind {
    pub fn name(&self) -> String {
        match self {
            SorterKind::Quicksort { model, threeway } => format!(
                "model{}-{}way",
                model.id(),
                if *threeway { 3 } else { 2 }
            ),
            SorterKind::HeapsortClassic => "heapsort-classic".into(),
            SorterKind::HeapsortBottomUp => "heapsort-bu".into(),
            SorterKind::Insertion => "insertion".into(),
        }
    }

    pub fn run<T, C>(&self, a: &mut [T], q_min: u32, n_b_max: u32, cmp: &mut C) -> SortStats
    where
        T: Clone + PartialOrd,
        C: Comparator<T>,
    {
        match self {
            SorterKind::Quicksort { model, threeway } => {
                let cfg = crate::pivot_models::ModelConfig::new(*model, q_min, n_b_max);
                quicksort_with(a, &model_sort_config(&cfg, *threeway), cmp)
            }
            SorterKind::HeapsortClassic => heapsort(a, HeapsortVariant::Classic, cmp),
            SorterKind::HeapsortBottomUp => heapsort(a, HeapsortVariant::BottomUp, cmp),
            SorterKind::Insertion => insertion_sort(a, cmp),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BenchMeasurement {
    pub median_ms: f64,
    pub comparisons: u64,
    pub movements: u64,
}

/// Median wall time over `repeats` runs on fresh copies, with counters
/// from the first run.
pub fn benchmark(
    sorter: SorterKind,
    spec: &DatasetSpec,
    repeats: usize,
    q_min: u32,
    n_b_max: u32,
) -> BenchMeasurement {
    assert!(repeats >= 3, "need at least three repeats for a median");
    let data = generate_dataset(spec);
    let mut times = Vec::with_capacity(repeats);
    let mut counters: Option<SortStats> = None;
    for _ in 0..repeats {
        let stats;
        let start;
        match &data {
            Dataset::Int(v) => {
                let mut work = v.clone();
                start = Instant::now();
                stats = sorter.run(&mut work, q_min, n_b_max, &mut NaturalOrder);
                debug_assert!(work.windows(2).all(|w| w[0] <= w[1]));
            }
            Dataset::Float(v) => {
                let mut work = v.clone();
                start = Instant::now();
                stats = sorter.run(&mut work, q_min, n_b_max, &mut NaturalOrder);
                debug_assert!(work.windows(2).all(|w| w[0] <= w[1]));
            }
            Dataset::Record(v) => {
                let mut work = v.clone();
                start = Instant::now();
                stats = sorter.run(&mut work, q_min, n_b_max, &mut NaturalOrder);
                debug_assert!(work.windows(2).all(|w| w[0].key <= w[1].key));
            }
        }
        times.push(start.elapsed().as_secs_f64() * 1000.0);
        counters.get_or_insert(stats);
    }
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let counters = counters.unwrap();
    BenchMeasurement {
        median_ms: times[times.len() / 2],
        comparisons: counters.comparisons,
        movements: counters.movements,
    }
}
