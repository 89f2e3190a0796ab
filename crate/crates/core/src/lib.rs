//! Numerical analysis of Quicksort comparison counts.
//!
//! The crate computes exact frequency distributions of the number of element
//! comparisons Quicksort needs, for five pivot-selection strategies, by
//! solving the distribution recurrence with dynamic programming in
//! extended-exponent arithmetic. On top of the distributions it derives
//! bad-case probabilities, standard deviations, worst-case growth and
//! expected-time-to-event figures, and it ships instrumented reference
//! implementations of the partitioning algorithms and sorters the analysis
//! models, together with brute-force permutation oracles, a comparator-level
//! adversary and dataset generators to validate everything empirically.

pub mod analysis;
pub mod distribution;
pub mod empirics;
pub mod error;
pub mod numerics;
pub mod pivot_models;
pub mod recurrences;
pub mod sorters;

pub use distribution::Distribution;
pub use error::Error;
pub use numerics::{ExactCount, WideScalar};
pub use pivot_models::{Model, ModelConfig, PivotKernel, SelectionCost};
pub use recurrences::{DistributionTable, ScalarTable};
pub use sorters::{PartitionResult, PartitionScheme, SortStats};
