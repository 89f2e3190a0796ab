//! Dynamic-programming solvers for the comparison-count recurrences.
//!
//! The frequency distribution of comparisons satisfies
//!
//! ```text
//! f_0 = f_1 = delta_0
//! f_n = d_n * (delta_{n-1} + delta_n)/2
//!           * sum_i binom(n-1, i) p_n(i) (f_i * f_{n-1-i})
//! ```
//!
//! where `*` is convolution, p_n the pivot kernel and d_n the selection
//! cost. The selection cost enters as its worst case, i.e. a plain index
//! shift — a deliberate overestimate so bad cases are never undercounted.
//! Model 5 replaces the basis for n <= n_b_max with the insertion-sort
//! recurrence f_n = sum_{k=1}^{n-1} (1 + [k = n-1]) delta_k * f_{n-1}.
//!
//! Averages and maxima satisfy scalar recurrences solved separately, which
//! gives two independent routes to the same quantities.

use crate::distribution::{Distribution, DistributionAccum};
use crate::error::Error;
use crate::numerics::{Kahan, WideScalar};
use crate::pivot_models::{
    i_min_of, pivot_kernel, selection_cost, selection_regime, selection_shift, ModelConfig,
    SelectionRegime,
};

/// Which scalar stands in for the selection-cost distribution in the
/// average recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectionCostMode {
    /// Worst case (the same convention the distribution engine uses, so
    /// mean(f_n) and the recurrence average coincide).
    FixedShift,
    /// Exact expected selection cost; for sensitivity studies.
    ExactMean,
}

/// Memoized frequency distributions f_0..f_N for one model configuration.
///
/// Every distribution is computed exactly once; entry n needs all entries
/// below it, so construction is sequential in n.
pub struct DistributionTable {
    cfg: ModelConfig,
    entries: Vec<Distribution>,
}

impl DistributionTable {
    /// Build f_0..f_n_max.
    pub fn build(cfg: ModelConfig, n_max: u64) -> Self {
        Self::build_with_progress(cfg, n_max, |_| {})
    }

    /// Build with a callback invoked after each completed n.
    pub fn build_with_progress(
        cfg: ModelConfig,
        n_max: u64,
        mut progress: impl FnMut(u64),
    ) -> Self {
        let mut table = DistributionTable {
            cfg,
            entries: Vec::with_capacity(n_max as usize + 1),
        };
        for n in 0..=n_max {
            let f = table.compute_next(n);
            table.entries.push(f);
            progress(n);
        }
        table
    }

    pub fn cfg(&self) -> &ModelConfig {
        &self.cfg
    }

    pub fn n_max(&self) -> u64 {
        self.entries.len() as u64 - 1
    }

    /// f_n; panics if the table was not built that far.
    pub fn frequency(&self, n: u64) -> &Distribution {
        &self.entries[n as usize]
    }

    fn compute_next(&self, n: u64) -> Distribution {
        debug_assert_eq!(self.entries.len() as u64, n);
        if n <= 1 {
            return Distribution::delta(0);
        }
        if n <= self.cfg.insertion_basis_max() {
            return self.insertion_step(n);
        }
        self.partition_step(n)
    }

    // f_n = sum_{k=1}^{n-1} (1 + [k = n-1]) delta_k * f_{n-1}.
    fn insertion_step(&self, n: u64) -> Distribution {
        let prev = &self.entries[(n - 1) as usize];
        let mut acc = DistributionAccum::new();
        for k in 1..=(n - 1) {
            let weight = if k == n - 1 { 2 } else { 1 };
            acc.add_scaled(&prev.shifted(k), WideScalar::from_u64(weight));
        }
        acc.into_distribution()
    }

    fn partition_step(&self, n: u64) -> Distribution {
        let kernel = pivot_kernel(&self.cfg, n);
        let shift = selection_shift(&self.cfg, n);
        let mid = (n - 1) / 2;
        let mut acc = DistributionAccum::new();
        // binom(n-1, i) kept by the ratio update binom(n-1, i+1) =
        // binom(n-1, i) * (n-1-i) / (i+1); symmetric splits are folded, so
        // only i <= (n-1)/2 is visited and doubled.
        let mut binom = WideScalar::ONE;
        for i in 0..=mid {
            let p = kernel.get(i);
            if !p.is_zero() {
                let pair_weight = if i == n - 1 - i {
                    binom.mul(p)
                } else {
                    binom.mul(p).scale_pow2(1)
                };
                let conv =
                    self.entries[i as usize].convolve(&self.entries[(n - 1 - i) as usize]);
                acc.add_scaled(&conv, pair_weight);
            }
            binom = binom
                .mul(WideScalar::from_u64(n - 1 - i))
                .div(WideScalar::from_u64(i + 1));
        }
        let inner = acc.into_distribution();
        // Partitioning needs n-1 or n comparisons with equal total weight:
        // convolve with (delta_{n-1} + delta_n)/2, then shift by the
        // worst-case selection cost.
        let len = inner.support_len() + 1;
        let mut weights = vec![WideScalar::ZERO; len];
        for (idx, (_, w)) in inner.iter().enumerate() {
            let half = w.scale_pow2(-1);
            weights[idx] = weights[idx].add(half);
            weights[idx + 1] = weights[idx + 1].add(half);
        }
        Distribution::from_weights(inner.lo() + (n - 1) + shift, weights)
    }
}

/// f_n for one n (builds and discards the table below it).
pub fn frequency_distribution(cfg: &ModelConfig, n: u64) -> Distribution {
    let table = DistributionTable::build(*cfg, n);
    table.frequency(n).clone()
}

/// Closed forms for sorting by straight insertion: average
/// n(n+3)/4 - H_n and maximum n(n-1)/2 comparisons.
pub fn insertion_closed_forms(n: u64) -> (f64, u64) {
    let nf = n as f64;
    let mut h = Kahan::new();
    for k in 1..=n {
        h.add(1.0 / k as f64);
    }
    let avg = if n == 0 {
        0.0
    } else {
        nf * (nf + 3.0) / 4.0 - h.total()
    };
    (avg, n * (n - 1) / 2)
}

/// Average comparisons C_0..C_n_max from the scalar recurrence
/// C_n = C_select + n - 1/2 + (2/n) sum_i p_n(i) C_i.
pub fn average_table(cfg: &ModelConfig, n_max: u64, mode: SelectionCostMode) -> Vec<f64> {
    let mut avg = Vec::with_capacity(n_max as usize + 1);
    avg.push(0.0);
    if n_max == 0 {
        return avg;
    }
    avg.push(0.0);
    for n in 2..=n_max {
        if n <= cfg.insertion_basis_max() {
            avg.push(insertion_closed_forms(n).0);
            continue;
        }
        let select = match mode {
            SelectionCostMode::FixedShift => selection_shift(cfg, n) as f64,
            SelectionCostMode::ExactMean => selection_cost(cfg, n).mean,
        };
        let kernel = pivot_kernel(cfg, n);
        let mut dot = Kahan::new();
        for (i, p) in kernel.values().iter().enumerate() {
            if !p.is_zero() {
                dot.add(p.to_f64() * avg[i]);
            }
        }
        avg.push(select + n as f64 - 0.5 + 2.0 / n as f64 * dot.total());
    }
    avg
}

/// Average comparisons at a single n (fixed-shift selection convention).
pub fn average_comparisons(cfg: &ModelConfig, n: u64) -> f64 {
    average_table(cfg, n, SelectionCostMode::FixedShift)[n as usize]
}

// Inclusive range of pivot positions the model can produce at n, without
// materializing the kernel. Mirrors the kernels' zero patterns.
fn feasible_split_range(cfg: &ModelConfig, n: u64) -> (u64, u64) {
    match selection_regime(cfg, n) {
        SelectionRegime::Simple => (0, n - 1),
        SelectionRegime::MedianOfThree => (1, n - 2),
        SelectionRegime::MedianOfMedians { m } => {
            let i_min = i_min_of(m).expect("sample size is a power of three");
            (i_min, n - 1 - i_min)
        }
    }
}

// Exhaustive-scan bound for the maximum recurrence. It covers every
// selection-regime switch point of the common parameterizations, so the
// candidate fast path used above it has been checked against the full
// scan on all the structure it has to handle.
const FULL_SCAN_LIMIT: u64 = 3000;

// Subarray sizes at which the selection regime (and with it the feasible
// split range or the worst-case selection cost) changes: the insertion
// basis bound, the median-of-three threshold 9*q_min and every sample-size
// step 9*q_min*3^j. The maxima sequence has local dips right after these
// points, so the worst split can sit next to them instead of at the
// feasible extreme.
fn regime_switch_points(cfg: &ModelConfig, up_to: u64) -> Vec<u64> {
    let mut pts = vec![cfg.insertion_basis_max(), 3];
    match cfg.model {
        crate::pivot_models::Model::Simple | crate::pivot_models::Model::MedianOfThree => {}
        _ => {
            let mut b = 9 * cfg.q_min as u64;
            while b <= up_to {
                pts.push(b);
                b = b.saturating_mul(3);
            }
        }
    }
    pts.retain(|&p| p > 0 && p <= up_to);
    pts
}

// The splits worth evaluating: the feasible extremes, the middle, and for
// every regime switch point B windows with the small side near B (the
// sequence peaks just below B) as well as with the large side near B
// (split i = n - B pins the big subproblem onto such a peak).
fn candidate_splits(cfg: &ModelConfig, n: u64, lo: u64, mid: u64) -> Vec<u64> {
    const WINDOW: u64 = 8;
    let mut out: Vec<u64> = Vec::with_capacity(128);
    let mut push_range = |a: u64, b: u64| {
        for i in a.max(lo)..=b.min(mid) {
            out.push(i);
        }
    };
    push_range(lo, lo + WINDOW);
    push_range(mid.saturating_sub(3), mid);
    for b in regime_switch_points(cfg, n) {
        push_range(b.saturating_sub(WINDOW), b + WINDOW);
        if n >= b {
            push_range((n - b).saturating_sub(WINDOW), n - b + WINDOW);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Maximum comparisons from the recurrence
/// `C^_n = C^_select + n + max over feasible i of (C^_i + C^_{n-1-i})`.
///
/// Up to n = 3000 the maximum is scanned over all feasible splits and
/// verified to lie in the candidate set; beyond, only the candidates are
/// evaluated. A scan violation is a hard error, not a silent fallback.
pub fn max_table(cfg: &ModelConfig, n_max: u64) -> Result<Vec<u64>, Error> {
    let mut max = Vec::with_capacity(n_max as usize + 1);
    max.push(0u64);
    if n_max == 0 {
        return Ok(max);
    }
    max.push(0u64);
    for n in 2..=n_max {
        if n <= cfg.insertion_basis_max() {
            max.push(n * (n - 1) / 2);
            continue;
        }
        let (lo, hi) = feasible_split_range(cfg, n);
        let shift = selection_shift(cfg, n);
        let mid = (n - 1) / 2;
        let candidate_best = candidate_splits(cfg, n, lo, mid)
            .into_iter()
            .map(|i| max[i as usize] + max[(n - 1 - i) as usize])
            .max()
            .expect("candidate set is never empty");
        let best = if n <= FULL_SCAN_LIMIT {
            let mut best = 0;
            for i in lo..=hi {
                best = best.max(max[i as usize] + max[(n - 1 - i) as usize]);
            }
            if best != candidate_best {
                return Err(Error::MaxSplitOutsideCandidates { n });
            }
            best
        } else {
            candidate_best
        };
        max.push(shift + n + best);
    }
    Ok(max)
}

pub fn max_comparisons(cfg: &ModelConfig, n: u64) -> Result<u64, Error> {
    Ok(max_table(cfg, n)?[n as usize])
}

/// Minimum comparisons, same structure with min in place of max. A free
/// consistency check against the low end of the distribution supports.
pub fn min_table(cfg: &ModelConfig, n_max: u64) -> Vec<u64> {
    let mut min = Vec::with_capacity(n_max as usize + 1);
    min.push(0u64);
    if n_max == 0 {
        return min;
    }
    min.push(0u64);
    for n in 2..=n_max {
        if n <= cfg.insertion_basis_max() {
            // Insertion sort needs at least one comparison per new element.
            min.push(n - 1);
            continue;
        }
        let (lo, hi) = feasible_split_range(cfg, n);
        let shift = selection_shift(cfg, n);
        let mut best = u64::MAX;
        for i in lo..=hi {
            if i > (n - 1) / 2 {
                break;
            }
            best = best.min(min[i as usize] + min[(n - 1 - i) as usize]);
        }
        // Partitioning contributes at least n-1 comparisons.
        min.push(shift + (n - 1) + best);
    }
    min
}

/// Averages and maxima side by side for one configuration.
pub struct ScalarTable {
    pub cfg: ModelConfig,
    pub averages: Vec<f64>,
    pub maxima: Vec<u64>,
}

impl ScalarTable {
    pub fn build(cfg: ModelConfig, n_max: u64) -> Result<Self, Error> {
        Ok(ScalarTable {
            cfg,
            averages: average_table(&cfg, n_max, SelectionCostMode::FixedShift),
            maxima: max_table(&cfg, n_max)?,
        })
    }
}
