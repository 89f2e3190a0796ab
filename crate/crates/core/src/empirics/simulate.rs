//! Monte-Carlo validation of the pivot-position kernels: draw random
//! permutations, run the model's selection, partition, and histogram the
//! pivot's final index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::pivot_models::{ModelConfig, PivotKernel};
use crate::sorters::{NaturalOrder, PivotRule, SortStats};

use super::datasets::random_permutation;
use super::model_sort_config;

/// Binned counts of final pivot positions.
#[derive(Clone, Debug)]
pub struct PivotHistogram {
    pub n: usize,
    pub bin: usize,
    pub trials: u64,
    pub counts: Vec<u64>,
}

impl PivotHistogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// Range of positions covered by bin b.
    pub fn bin_range(&self, b: usize) -> std::ops::Range<usize> {
        let lo = b * self.bin;
        lo..((b + 1) * self.bin).min(self.n)
    }
}

/// Simulate `trials` random permutations. `forced_m` overrides the
/// adaptive sample-size rule with a fixed sample, matching fixed-sample
/// kernel plots.
pub fn simulate_pivot_positions(
    cfg: &ModelConfig,
    n: usize,
    trials: u64,
    bin: usize,
    seed: u64,
    forced_m: Option<usize>,
) -> PivotHistogram {
    assert!(n >= 2 && bin >= 1 && trials >= 1);
    let sort_cfg = model_sort_config(cfg, false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; n.div_ceil(bin)];
    let mut perm: Vec<i64> = Vec::with_capacity(n);
    for _ in 0..trials {
        random_permutation(n, &mut rng, &mut perm);
        let ipart = select_index(&perm, sort_cfg.pivot, forced_m);
        // The pivot's final index after partitioning is its rank; run the
        // partition for real rather than assuming that.
        let mut stats = SortStats::new();
        let outcome = crate::sorters::partition(
            crate::sorters::PartitionScheme::NewCollision,
            ipart,
            &mut perm,
            &mut NaturalOrder,
            &mut stats,
        );
        let final_index = outcome.sub1.end;
        counts[final_index / bin] += 1;
    }
    PivotHistogram {
        n,
        bin,
        trials,
        counts,
    }
}

fn select_index(a: &[i64], rule: PivotRule, forced_m: Option<usize>) -> usize {
    let mut stats = SortStats::new();
    match forced_m {
        Some(m) => {
            crate::sorters::select_pivot_forced_sample(a, m, &mut NaturalOrder, &mut stats)
        }
        None => crate::sorters::select_pivot_index(a, rule, &mut NaturalOrder, &mut stats),
    }
}

/// Expected per-bin probability mass of the model kernel (sum of
/// p_n(i)/n over the bin).
pub fn expected_bin_masses(kernel: &PivotKernel, bin: usize) -> Vec<f64> {
    let n = kernel.n as usize;
    let mut out = vec![0.0f64; n.div_ceil(bin)];
    for i in 0..n {
        out[i / bin] += kernel.get(i as u64).to_f64() / kernel.n as f64;
    }
    out
}

/// Chi-square p-value of a histogram against the uniform kernel; used for
/// the fixed-position model where the exact law is flat.
pub fn uniform_chi_square_p_value(h: &PivotHistogram) -> f64 {
    let full_bins = h.n / h.bin;
    let mut stat = 0.0f64;
    let mut dof = 0u64;
    for b in 0..h.bins() {
        let width = h.bin_range(b).len();
        if width == 0 {
            continue;
        }
        let expected = h.trials as f64 * width as f64 / h.n as f64;
        let d = h.counts[b] as f64 - expected;
        stat += d * d / expected;
        dof += 1;
    }
    let _ = full_bins;
    super::chi2::chi_square_sf(stat, dof - 1)
}

/// Largest relative deviation of simulated bin masses from the kernel over
/// the central half of the positions (tails carry too few trials for a
/// relative comparison).
pub fn max_central_bin_deviation(h: &PivotHistogram, kernel: &PivotKernel) -> f64 {
    let expected = expected_bin_masses(kernel, h.bin);
    let mut worst = 0.0f64;
    for b in 0..h.bins() {
        let r = h.bin_range(b);
        if r.start < h.n / 4 || r.end > 3 * h.n / 4 {
            continue;
        }
        let e = expected[b] * h.trials as f64;
        let o = h.counts[b] as f64;
        if e > 0.0 {
            worst = worst.max((o - e).abs() / e);
        }
    }
    worst
}
