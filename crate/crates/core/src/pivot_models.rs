//! The five pivot-selection models.
//!
//! A model is described by two ingredients: the position kernel p_n, where
//! p_n(i)/n is the probability that the chosen pivot ends up at index i
//! after partitioning, and the selection cost d_n, the distribution of
//! comparisons spent picking the pivot. Kernels are symmetric and sum to n.
//!
//! Models: 1 fixed-position ("simple") selection, 2 median of three,
//! 3 median of three medians (9-element sample), 4 recursive median of
//! medians with the sample size growing adaptively with n, 5 same plus an
//! insertion-sort recursion basis for small subarrays.

use crate::distribution::Distribution;
use crate::error::Error;
use crate::numerics::{WideScalar, WideSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Simple = 1,
    MedianOfThree = 2,
    MedianOfMedians = 3,
    RecursiveMom = 4,
    RecursiveMomInsertion = 5,
}

impl Model {
    pub fn from_id(id: u8) -> Option<Model> {
        match id {
            1 => Some(Model::Simple),
            2 => Some(Model::MedianOfThree),
            3 => Some(Model::MedianOfMedians),
            4 => Some(Model::RecursiveMom),
            5 => Some(Model::RecursiveMomInsertion),
            _ => None,
        }
    }

    pub fn id(self) -> u8 {
        self as u8
    }
}

/// Model plus its parameters.
///
/// `q_min` bounds n / sample-size from below for the adaptive models (and
/// sets the threshold 9*q_min under which median of three is used for
/// models 3-5); `n_b_max` is the largest subarray sorted by insertion in
/// model 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelConfig {
    pub model: Model,
    pub q_min: u32,
    pub n_b_max: u32,
}

pub const DEFAULT_Q_MIN: u32 = 5;
pub const DEFAULT_N_B_MAX: u32 = 9;

impl ModelConfig {
    pub fn new(model: Model, q_min: u32, n_b_max: u32) -> Self {
        assert!(q_min >= 1, "q_min must be >= 1");
        assert!(n_b_max >= 1, "n_b_max must be >= 1");
        ModelConfig {
            model,
            q_min,
            n_b_max,
        }
    }

    /// Canonical parameterization: q_min = 5, n_b_max = 9.
    pub fn with_defaults(model: Model) -> Self {
        Self::new(model, DEFAULT_Q_MIN, DEFAULT_N_B_MAX)
    }

    /// Insertion-sort basis bound; zero for models 1-4.
    pub fn insertion_basis_max(&self) -> u64 {
        match self.model {
            Model::RecursiveMomInsertion => self.n_b_max as u64,
            _ => 0,
        }
    }
}

/// How the pivot is actually selected at a given subarray size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectionRegime {
    /// Fixed position, no comparisons.
    Simple,
    /// Median of three elements.
    MedianOfThree,
    /// (Recursive) median of three medians over a sample of size m.
    MedianOfMedians { m: u64 },
}

/// Dispatch shared by all models: simple at n = 2, median of three between
/// 3 and 9*q_min, the sampled method above.
pub fn selection_regime(cfg: &ModelConfig, n: u64) -> SelectionRegime {
    match cfg.model {
        Model::Simple => SelectionRegime::Simple,
        Model::MedianOfThree => {
            if n >= 3 {
                SelectionRegime::MedianOfThree
            } else {
                SelectionRegime::Simple
            }
        }
        Model::MedianOfMedians | Model::RecursiveMom | Model::RecursiveMomInsertion => {
            let threshold = 9 * cfg.q_min as u64;
            if n >= threshold {
                let m = if cfg.model == Model::MedianOfMedians {
                    9
                } else {
                    sample_size(n, cfg.q_min)
                };
                SelectionRegime::MedianOfMedians { m }
            } else if n >= 3 {
                SelectionRegime::MedianOfThree
            } else {
                SelectionRegime::Simple
            }
        }
    }
}

/// Largest power of 3 usable as sample size at n elements: the greatest
/// m = 3^k with q_min <= n/m, clamped to m >= 9.
pub fn sample_size(n: u64, q_min: u32) -> u64 {
    assert!(n >= 9 * q_min as u64, "sample rule applies from n = 9*q_min");
    let nc = n / (9 * q_min as u64);
    let mut m = 1u64;
    while m * 3 <= nc {
        m *= 3;
    }
    m * 9
}

/// Elements guaranteed below (and above) a recursive median of medians
/// drawn from m = 3^k distinct elements: 2^k - 1.
pub fn i_min_of(m: u64) -> Result<u64, Error> {
    if m < 3 {
        return Err(Error::NotPowerOfThree(m));
    }
    let mut k = 0u32;
    let mut v = m;
    while v % 3 == 0 {
        v /= 3;
        k += 1;
    }
    if v != 1 {
        return Err(Error::NotPowerOfThree(m));
    }
    Ok((1u64 << k) - 1)
}

/// Pivot-position kernel p_n(0..n).
#[derive(Clone, Debug)]
pub struct PivotKernel {
    pub n: u64,
    values: Vec<WideScalar>,
}

impl PivotKernel {
    pub fn values(&self) -> &[WideScalar] {
        &self.values
    }

    pub fn get(&self, i: u64) -> WideScalar {
        self.values[i as usize]
    }

    /// Inclusive range of indices with positive kernel value.
    pub fn feasible_range(&self) -> (u64, u64) {
        let lo = self.values.iter().position(|v| !v.is_zero()).unwrap() as u64;
        let hi = self.values.iter().rposition(|v| !v.is_zero()).unwrap() as u64;
        (lo, hi)
    }

    fn from_half_unnormalized(n: u64, mut half: Vec<WideScalar>) -> Self {
        // half holds indices 0 ..= (n-1)/2; mirror, then scale so the sum
        // is exactly n up to summation error. Mirrored entries stay
        // bit-identical to their partners.
        let n_us = n as usize;
        let mut sum = WideSum::new();
        for (i, v) in half.iter().enumerate() {
            if 2 * i + 1 == n_us {
                sum.push(*v);
            } else {
                sum.push(v.add(*v));
            }
        }
        let scale = WideScalar::from_u64(n).div(sum.total());
        for v in half.iter_mut() {
            *v = v.mul(scale);
        }
        let mut values = vec![WideScalar::ZERO; n_us];
        for (i, v) in half.iter().enumerate() {
            values[i] = *v;
            values[n_us - 1 - i] = *v;
        }
        PivotKernel { n, values }
    }
}

/// Kernel for the configured model at n (n >= 2).
pub fn pivot_kernel(cfg: &ModelConfig, n: u64) -> PivotKernel {
    assert!(n >= 2);
    match selection_regime(cfg, n) {
        SelectionRegime::Simple => PivotKernel {
            n,
            values: vec![WideScalar::ONE; n as usize],
        },
        SelectionRegime::MedianOfThree => median_of_three_kernel(n),
        SelectionRegime::MedianOfMedians { m } => mom_kernel(n, m),
    }
}

/// Kernel with the sample size forced to a given m instead of the adaptive
/// rule (used to reproduce fixed-sample plots).
pub fn pivot_kernel_forced_m(n: u64, m: u64) -> PivotKernel {
    mom_kernel(n, m)
}

// p_n(i) = a_n * i * (n-1-i) with a_n = 6 / ((n-1)(n-2)). Normalized
// numerically like the larger-sample kernels so the sum-to-n property
// never depends on rounding in the closed-form constant.
fn median_of_three_kernel(n: u64) -> PivotKernel {
    assert!(n >= 3);
    let mid = ((n - 1) / 2) as usize;
    let mut half = Vec::with_capacity(mid + 1);
    for i in 0..=mid as u64 {
        if i == 0 {
            half.push(WideScalar::ZERO);
        } else {
            half.push(WideScalar::from_u64(i * (n - 1 - i)));
        }
    }
    PivotKernel::from_half_unnormalized(n, half)
}

// The simplest polynomial with zeros exactly where a median of medians
// cannot land: p_n(i) = a_n * prod_{j<i_min} (i-j)(n-1-i-j), normalized
// numerically so the values sum to n.
fn mom_kernel(n: u64, m: u64) -> PivotKernel {
    let i_min = i_min_of(m).expect("sample size must be a power of three");
    assert!(n > 2 * i_min, "kernel needs room for {i_min} elements per side");
    let mid = ((n - 1) / 2) as usize;
    let mut half = vec![WideScalar::ZERO; mid + 1];
    // Start value at i = i_min, then the telescoping update
    //   u(i+1) = u(i) * (i+1)(n-1-i-i_min) / ((i+1-i_min)(n-1-i)).
    let mut u = WideScalar::ONE;
    for j in 0..i_min {
        u = u
            .mul(WideScalar::from_u64(i_min - j))
            .mul(WideScalar::from_u64(n - 1 - i_min - j));
    }
    let mut i = i_min;
    while i as usize <= mid {
        half[i as usize] = u;
        u = u
            .mul(WideScalar::from_u64(i + 1))
            .mul(WideScalar::from_u64(n - 1 - i - i_min))
            .div(WideScalar::from_u64(i + 1 - i_min))
            .div(WideScalar::from_u64(n - 1 - i));
        i += 1;
    }
    PivotKernel::from_half_unnormalized(n, half)
}

/// Exact kernel for the median of three medians of a 9-element sample
/// (degree-8 polynomial with explicit normalization constant). Used to
/// validate the polynomial approximation above.
pub fn pivot_kernel_exact_mom(n: u64) -> Result<PivotKernel, Error> {
    if n < 9 {
        return Err(Error::NotPowerOfThree(n));
    }
    let nf = n as f64;
    let mut b = 36.0;
    for j in 0..8 {
        b /= nf - 1.0 - j as f64;
    }
    let prod = |base: f64, count: u64| -> f64 {
        let mut p = 1.0;
        for j in 0..count {
            p *= base - j as f64;
        }
        p
    };
    let mid = ((n - 1) / 2) as usize;
    let mut half = Vec::with_capacity(mid + 1);
    for i in 0..=mid {
        let x = i as f64;
        let y = nf - 1.0 - x;
        let term = 3.0 * prod(x, 3) * prod(y, 5) + 10.0 * prod(x, 4) * prod(y, 4)
            + 3.0 * prod(x, 5) * prod(y, 3);
        half.push(WideScalar::from_f64((term * b).max(0.0)));
    }
    // b_n already normalizes the sum to n; mirror without rescaling so the
    // constant itself is what gets validated.
    let n_us = n as usize;
    let mut values = vec![WideScalar::ZERO; n_us];
    for (i, v) in half.iter().enumerate() {
        values[i] = *v;
        values[n_us - 1 - i] = *v;
    }
    Ok(PivotKernel { n, values })
}

/// Comparisons spent selecting the pivot.
///
/// `fixed_shift` is the worst case, which the distribution recurrence uses
/// as a plain index shift; `exact_dist` is the full distribution for
/// sensitivity studies.
#[derive(Clone, Debug)]
pub struct SelectionCost {
    pub fixed_shift: u64,
    pub exact_dist: Distribution,
    pub mean: f64,
    pub max: u64,
}

/// Worst-case selection comparisons only; cheap enough for sweeps into the
/// millions where materializing the binomial distribution would not be.
pub fn selection_shift(cfg: &ModelConfig, n: u64) -> u64 {
    match selection_regime(cfg, n) {
        SelectionRegime::Simple => 0,
        SelectionRegime::MedianOfThree => 3,
        SelectionRegime::MedianOfMedians { m } => 3 * ((m - 1) / 2),
    }
}

pub fn selection_cost(cfg: &ModelConfig, n: u64) -> SelectionCost {
    match selection_regime(cfg, n) {
        SelectionRegime::Simple => SelectionCost {
            fixed_shift: 0,
            exact_dist: Distribution::delta(0),
            mean: 0.0,
            max: 0,
        },
        SelectionRegime::MedianOfThree => SelectionCost {
            fixed_shift: 3,
            exact_dist: bernoulli_cost_dist(1),
            mean: 8.0 / 3.0,
            max: 3,
        },
        SelectionRegime::MedianOfMedians { m } => {
            let t = (m - 1) / 2;
            SelectionCost {
                fixed_shift: 3 * t,
                exact_dist: bernoulli_cost_dist(t),
                mean: 8.0 * t as f64 / 3.0,
                max: 3 * t,
            }
        }
    }
}

// t median-of-three determinations, each needing 2 comparisons with
// probability 1/3 and otherwise 3: binomial over [2t, 3t],
//   d(j) = C(t, j-2t) (1/3)^(3t-j) (2/3)^(j-2t).
fn bernoulli_cost_dist(t: u64) -> Distribution {
    let third = WideScalar::from_ratio(1, 3);
    let mut w = WideScalar::ONE;
    for _ in 0..t {
        w = w.mul(third);
    }
    let mut weights = Vec::with_capacity(t as usize + 1);
    for s in 0..=t {
        weights.push(w);
        if s < t {
            // C(t,s+1)/C(t,s) * 2: one more trial takes three comparisons.
            w = w
                .mul(WideScalar::from_u64(2 * (t - s)))
                .div(WideScalar::from_u64(s + 1));
        }
    }
    Distribution::from_weights(2 * t, weights)
}
