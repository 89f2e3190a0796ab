//! Quantities derived from the frequency tables: bad-case probabilities,
//! standard deviations with an independent closed-form cross-check,
//! probability ratios, expected-time-to-event rendering and worst-case
//! growth checks.

use crate::error::Error;
use crate::numerics::{Kahan, WideScalar};
use crate::recurrences::{DistributionTable, ScalarTable};

/// A bad-case query: how much of f_n lies above tau times the average?
///
/// tau must exceed 1 — counts at or below the mean are not bad cases.
#[derive(Clone, Copy, Debug)]
pub struct BadCaseQuery {
    pub n: u64,
    pub tau: f64,
}

impl BadCaseQuery {
    pub fn new(n: u64, tau: f64) -> Self {
        assert!(tau > 1.0, "threshold factor must exceed 1");
        BadCaseQuery { n, tau }
    }
}

/// p_{n,tau}: the fraction of permutations needing more than
/// tau * (average comparisons). The threshold is the exact real product;
/// no integer rounding is applied to it.
pub fn bad_case_probability(table: &DistributionTable, q: &BadCaseQuery) -> WideScalar {
    let f = table.frequency(q.n);
    let mean = f.mean().expect("frequency tables are never empty").to_f64();
    let tail = f.tail_weight(q.tau * mean);
    tail.div(f.total())
}

/// p at the table's top n divided by p at half that n (the classic pairing
/// is 500 against 250). Errors when both tails are empty, and on a zero
/// denominator with a nonzero numerator.
pub fn probability_ratio(table: &DistributionTable, tau: f64) -> Result<f64, Error> {
    let n = table.n_max();
    let p_hi = bad_case_probability(table, &BadCaseQuery::new(n, tau));
    let p_lo = bad_case_probability(table, &BadCaseQuery::new(n / 2, tau));
    if p_lo.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(p_hi.div(p_lo).to_f64())
}

/// Expected time until an event of probability `p` occurs when trials
/// start every `interval_ms` milliseconds, rendered in the units
/// s / m / h / d / a. Zero probability renders as "never".
pub fn expected_time_to_event(p: WideScalar, interval_ms: f64) -> String {
    if p.is_zero() {
        return "never".to_string();
    }
    let seconds = WideScalar::from_f64(interval_ms / 1000.0)
        .div(p)
        .to_f64();
    let minutes = seconds / 60.0;
    let hours = minutes / 60.0;
    let days = hours / 24.0;
    let years = days / 365.0;
    if seconds < 60.0 {
        format!("{} s", two_sig(seconds))
    } else if minutes < 120.0 {
        format!("{} m", two_sig(minutes))
    } else if hours < 48.0 {
        format!("{} h", two_sig(hours))
    } else if days < 365.0 {
        format!("{} d", two_sig(days))
    } else {
        format!("{} a", two_sig(years))
    }
}

// Two significant digits, scientific only where decimal notation would be
// unwieldy.
fn two_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !(0.001..10_000.0).contains(&x) {
        return format!("{x:.1e}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Closed-form standard deviation of the comparison count for the
/// fixed-position selection model:
/// sqrt(7n^2 - 4(n+1)^2 H2_n - 2(n+1) H_n + 13n).
pub fn iliopoulos_sigma(n: u64) -> Result<f64, Error> {
    assert!(n >= 1);
    let mut h = Kahan::new();
    let mut h2 = Kahan::new();
    for k in 1..=n {
        let kf = k as f64;
        h.add(1.0 / kf);
        h2.add(1.0 / (kf * kf));
    }
    let nf = n as f64;
    let radicand = 7.0 * nf * nf - 4.0 * (nf + 1.0) * (nf + 1.0) * h2.total()
        - 2.0 * (nf + 1.0) * h.total()
        + 13.0 * nf;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand { n });
    }
    Ok(radicand.sqrt())
}

/// Growth summary of a maxima table.
#[derive(Clone, Debug)]
pub struct WorstCaseReport {
    /// max over n of C^_n / (3.8 n^1.37) and where it occurs.
    pub power_law_max_ratio: f64,
    pub power_law_arg_n: u64,
    /// C^_n / n^2 at the largest tabulated n.
    pub quadratic_coefficient: f64,
}

/// Check the tabulated maxima against the n^1.37 power-law bound and
/// report the leading quadratic coefficient.
pub fn worst_case_bound_check(table: &ScalarTable) -> WorstCaseReport {
    let maxima = &table.maxima;
    let mut worst = (0.0f64, 0u64);
    for (n, &c) in maxima.iter().enumerate().skip(2) {
        let bound = 3.8 * (n as f64).powf(1.37);
        let ratio = c as f64 / bound;
        if ratio > worst.0 {
            worst = (ratio, n as u64);
        }
    }
    let n_top = maxima.len() - 1;
    WorstCaseReport {
        power_law_max_ratio: worst.0,
        power_law_arg_n: worst.1,
        quadratic_coefficient: maxima[n_top] as f64 / (n_top as f64 * n_top as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pivot_models::{Model, ModelConfig};
    use crate::recurrences::DistributionTable;

    fn table(model: Model, n: u64) -> DistributionTable {
        DistributionTable::build(ModelConfig::with_defaults(model), n)
    }

    #[test]
    fn bad_case_probability_boundaries() {
        let t = table(Model::Simple, 20);
        // Threshold at or above the maximum: probability zero.
        let f = t.frequency(20);
        let mean = f.mean().unwrap().to_f64();
        let tau_top = f.hi() as f64 / mean + 0.01;
        assert!(bad_case_probability(&t, &BadCaseQuery::new(20, tau_top)).is_zero());
        // Just above 1: strictly below certainty, strictly above zero.
        let p = bad_case_probability(&t, &BadCaseQuery::new(20, 1.0001));
        assert!(!p.is_zero());
        assert!(p.to_f64() < 1.0);
    }

    #[test]
    fn probability_is_monotone_in_tau() {
        let t = table(Model::Simple, 30);
        let mut last = f64::INFINITY;
        for tau in [1.05, 1.1, 1.25, 1.5, 2.0] {
            let p = bad_case_probability(&t, &BadCaseQuery::new(30, tau)).to_f64();
            assert!(p <= last);
            last = p;
        }
    }

    #[test]
    #[should_panic(expected = "exceed 1")]
    fn tau_at_one_is_rejected() {
        let _ = BadCaseQuery::new(10, 1.0);
    }

    #[test]
    fn ratio_errors_on_empty_tails() {
        let t = table(Model::Simple, 20);
        // tau far beyond the maximum: both tails empty -> error, not 0/0.
        assert!(probability_ratio(&t, 40.0).is_err());
    }

    #[test]
    fn expected_time_rendering() {
        assert_eq!(expected_time_to_event(WideScalar::ONE, 1.0), "0.001 s");
        assert_eq!(expected_time_to_event(WideScalar::ZERO, 1.0), "never");
        // p = 8.88e-6 at millisecond intervals: just under two minutes.
        let p = WideScalar::from_f64(8.88e-6);
        assert_eq!(expected_time_to_event(p, 1.0), "1.9 m");
        // Deep tail: astronomical years in scientific notation.
        let p = WideScalar::from_f64(5.12e-53);
        assert_eq!(expected_time_to_event(p, 1.0), "6.2e41 a");
    }

    #[test]
    fn sigma_formula_small_cases() {
        // n = 2: the radicand collapses to zero exactly.
        assert_eq!(iliopoulos_sigma(2).unwrap(), 0.0);
        assert_eq!(iliopoulos_sigma(1).unwrap(), 0.0);
    }

    #[test]
    fn sigma_formula_matches_distribution() {
        let t = table(Model::Simple, 100);
        let sigma_dist = t.frequency(100).stddev().unwrap().to_f64();
        let sigma_formula = iliopoulos_sigma(100).unwrap();
        let rel = (sigma_dist - sigma_formula).abs() / sigma_formula;
        assert!(rel < 0.005, "rel = {rel}");
    }

    #[test]
    fn quadratic_coefficient_for_simple_selection() {
        let st = crate::recurrences::ScalarTable::build(
            ModelConfig::with_defaults(Model::Simple),
            2000,
        )
        .unwrap();
        let report = worst_case_bound_check(&st);
        // (n+2)(n-1)/2 over n^2 approaches one half from below.
        assert!((report.quadratic_coefficient - 0.5).abs() < 0.001);
    }
}
