//! Error type shared across the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by a zero wide scalar.
    DivisionByZero,
    /// An operation that needs at least one support point got an empty
    /// distribution.
    EmptyDistribution,
    /// Sample sizes must be powers of three.
    NotPowerOfThree(u64),
    /// Probability ratio with a zero denominator (both tails empty).
    ZeroDenominator,
    /// The fast maximum recurrence assumes the maximum is attained at an
    /// extreme feasible split or next to a selection-regime switch point;
    /// the exhaustive scan found a counterexample.
    MaxSplitOutsideCandidates { n: u64 },
    /// Negative radicand in a closed-form standard deviation.
    NegativeRadicand { n: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::EmptyDistribution => write!(f, "empty distribution"),
            Error::NotPowerOfThree(m) => write!(f, "{m} is not a power of three >= 3"),
            Error::ZeroDenominator => write!(f, "probability ratio has zero denominator"),
            Error::MaxSplitOutsideCandidates { n } => write!(
                f,
                "maximum recurrence: worst split at n = {n} is outside the candidate set"
            ),
            Error::NegativeRadicand { n } => {
                write!(f, "negative radicand in sigma formula at n = {n}")
            }
        }
    }
}

impl std::error::Error for Error {}
