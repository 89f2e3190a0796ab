//! Distributions over comparison counts.
//!
//! A [`Distribution`] maps a contiguous range of comparison counts j to
//! non-negative wide-scalar weights. Frequency distributions sum to n!,
//! probability distributions to 1. Supports are intervals, so storage is
//! dense and trimmed; tails are the deliverable, so there is no truncation
//! threshold anywhere. Convolution is the direct quadratic sum — transform
//! tricks turn the far tails into rounding noise and are excluded.

use rayon::prelude::*;

use crate::error::Error;
use crate::numerics::{WideScalar, WideSum};

/// Weights over the contiguous support `lo ..= lo + len - 1`.
///
/// Both end weights are positive (trimmed support). The empty distribution
/// (identically zero) is representable and only valid as a mixing seed.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    lo: u64,
    weights: Vec<WideScalar>,
}

// Below this many products a convolution is not worth fanning out.
const PAR_WORK_THRESHOLD: usize = 1 << 21;

impl Distribution {
    /// Point mass of weight 1 at k.
    pub fn delta(k: u64) -> Self {
        Distribution {
            lo: k,
            weights: vec![WideScalar::ONE],
        }
    }

    pub fn empty() -> Self {
        Distribution {
            lo: 0,
            weights: Vec::new(),
        }
    }

    /// Build from raw weights; trims zero ends.
    pub fn from_weights(lo: u64, weights: Vec<WideScalar>) -> Self {
        let mut d = Distribution { lo, weights };
        d.trim();
        d
    }

    fn trim(&mut self) {
        let first_nz = self.weights.iter().position(|w| !w.is_zero());
        match first_nz {
            None => {
                self.lo = 0;
                self.weights.clear();
            }
            Some(first) => {
                let last = self.weights.iter().rposition(|w| !w.is_zero()).unwrap();
                self.weights.truncate(last + 1);
                if first > 0 {
                    self.weights.drain(..first);
                    self.lo += first as u64;
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Smallest support point; meaningless when empty.
    pub fn lo(&self) -> u64 {
        self.lo
    }

    /// Largest support point.
    pub fn hi(&self) -> u64 {
        assert!(!self.is_empty(), "empty distribution has no support");
        self.lo + self.weights.len() as u64 - 1
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// Weight at j (zero outside the support).
    pub fn get(&self, j: u64) -> WideScalar {
        if j < self.lo {
            return WideScalar::ZERO;
        }
        let idx = (j - self.lo) as usize;
        self.weights.get(idx).copied().unwrap_or(WideScalar::ZERO)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, WideScalar)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(i, &w)| (self.lo + i as u64, w))
    }

    /// Shift the whole support by k (convolution with delta(k)); exact.
    pub fn shifted(&self, k: u64) -> Self {
        Distribution {
            lo: self.lo + k,
            weights: self.weights.clone(),
        }
    }

    /// Sum of all weights, accumulated pairwise.
    pub fn total(&self) -> WideScalar {
        let mut acc = WideSum::new();
        for &w in &self.weights {
            acc.push(w);
        }
        acc.total()
    }

    /// Direct convolution: (g*h)(j) = sum_k g(k) h(j-k).
    ///
    /// Each output cell is summed independently with pairwise accumulation,
    /// so results are identical regardless of the number of worker threads.
    pub fn convolve(&self, other: &Self) -> Self {
        assert!(
            !self.is_empty() && !other.is_empty(),
            "convolution requires non-empty operands"
        );
        // Iterate over the shorter operand in the inner loop.
        let (g, h) = if self.weights.len() <= other.weights.len() {
            (self, other)
        } else {
            (other, self)
        };
        let out_len = g.weights.len() + h.weights.len() - 1;
        let cell = |j: usize| -> WideScalar {
            let k_lo = j.saturating_sub(h.weights.len() - 1);
            let k_hi = j.min(g.weights.len() - 1);
            let mut acc = WideSum::new();
            for k in k_lo..=k_hi {
                acc.push(g.weights[k].mul(h.weights[j - k]));
            }
            acc.total()
        };
        let weights = if g.weights.len() * h.weights.len() >= PAR_WORK_THRESHOLD {
            (0..out_len).into_par_iter().map(cell).collect()
        } else {
            (0..out_len).map(cell).collect()
        };
        Distribution {
            lo: g.lo + h.lo,
            weights,
        }
    }

    /// acc'(j) = acc(j) + c * g(j).
    pub fn mix(acc: &Distribution, g: &Distribution, c: WideScalar) -> Distribution {
        let mut out = DistributionAccum::from(acc.clone());
        out.add_scaled(g, c);
        out.into_distribution()
    }

    /// Expected value; errors on an empty distribution.
    pub fn mean(&self) -> Result<WideScalar, Error> {
        if self.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut acc = WideSum::new();
        for (j, w) in self.iter() {
            acc.push(w.mul(WideScalar::from_u64(j)));
        }
        Ok(acc.total().div(self.total()))
    }

    /// Standard deviation via the compensated two-pass formula.
    pub fn stddev(&self) -> Result<WideScalar, Error> {
        let mean = self.mean()?.to_f64();
        let total = self.total();
        let mut acc = crate::numerics::Kahan::new();
        for (j, w) in self.iter() {
            let p = w.div(total).to_f64();
            let d = j as f64 - mean;
            acc.add(d * d * p);
        }
        Ok(WideScalar::from_f64(acc.total().max(0.0).sqrt()))
    }

    /// Sum of weights at support points strictly above `threshold`,
    /// accumulated from the high end downward (small terms first).
    pub fn tail_weight(&self, threshold: f64) -> WideScalar {
        let mut acc = WideSum::new();
        for (j, w) in self.iter().rev() {
            if (j as f64) > threshold {
                acc.push(w);
            } else {
                break;
            }
        }
        acc.total()
    }
}

/// Mutable accumulator used while assembling weighted sums of
/// distributions; avoids reallocating per term.
pub struct DistributionAccum {
    lo: u64,
    weights: Vec<WideScalar>,
}

impl DistributionAccum {
    pub fn new() -> Self {
        DistributionAccum {
            lo: 0,
            weights: Vec::new(),
        }
    }

    pub fn add_scaled(&mut self, g: &Distribution, c: WideScalar) {
        if g.is_empty() || c.is_zero() {
            return;
        }
        if self.weights.is_empty() {
            self.lo = g.lo;
            self.weights = g.weights.iter().map(|w| w.mul(c)).collect();
            return;
        }
        let new_lo = self.lo.min(g.lo);
        let cur_hi = self.lo + self.weights.len() as u64 - 1;
        let new_hi = cur_hi.max(g.hi());
        if new_lo < self.lo {
            let pad = (self.lo - new_lo) as usize;
            let mut w = vec![WideScalar::ZERO; pad + self.weights.len()];
            w[pad..].copy_from_slice(&self.weights);
            self.weights = w;
            self.lo = new_lo;
        }
        self.weights
            .resize((new_hi - self.lo + 1) as usize, WideScalar::ZERO);
        for (j, w) in g.iter() {
            let idx = (j - self.lo) as usize;
            self.weights[idx] = self.weights[idx].add(w.mul(c));
        }
    }

    pub fn into_distribution(self) -> Distribution {
        Distribution::from_weights(self.lo, self.weights)
    }
}

impl Default for DistributionAccum {
    fn default() -> Self {
        Self::new()
    }
}

impl From<Distribution> for DistributionAccum {
    fn from(d: Distribution) -> Self {
        DistributionAccum {
            lo: d.lo,
            weights: d.weights,
        }
    }
}
