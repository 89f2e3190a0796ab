//! Empirical validation machinery: brute-force permutation oracles,
//! Monte-Carlo pivot-position simulation, the comparator-level adversary,
//! dataset generators and the wall-clock benchmark harness.

mod adversary;
mod bench;
pub mod chi2;
mod datasets;
mod enumerate;
mod simulate;

pub use adversary::{killer_adversary, replay_comparisons, AdversaryOutcome};
pub use bench::{benchmark, BenchMeasurement, SorterKind};
pub use datasets::{generate_dataset, Dataset, DatasetKind, DatasetSpec, ElementKind};
pub use enumerate::{
    enumerate_partition_stats, enumerate_sort_histogram, ExactHistogram, PartitionEnumeration,
    Permutations,
};
pub use simulate::{
    expected_bin_masses, max_central_bin_deviation, simulate_pivot_positions,
    uniform_chi_square_p_value, PivotHistogram,
};

use crate::pivot_models::{Model, ModelConfig};
use crate::sorters::{PivotRule, QuicksortConfig};

/// The sorter a model describes: its pivot rule plus, for model 5, the
/// insertion-sort basis.
pub fn model_sort_config(cfg: &ModelConfig, threeway: bool) -> QuicksortConfig {
    let pivot = match cfg.model {
        Model::Simple => PivotRule::Middle,
        Model::MedianOfThree => PivotRule::MedianOfThree,
        Model::MedianOfMedians => PivotRule::MedianOfMedians { q_min: cfg.q_min },
        Model::RecursiveMom | Model::RecursiveMomInsertion => {
            PivotRule::RecursiveMedianOfMedians { q_min: cfg.q_min }
        }
    };
    QuicksortConfig {
        pivot,
        threeway,
        insertion_cutoff: if cfg.model == Model::RecursiveMomInsertion {
            cfg.n_b_max as usize
        } else {
            1
        },
    }
}
