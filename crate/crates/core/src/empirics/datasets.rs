//! Deterministic dataset generators for the benchmark suite: random,
//! strictly increasing, strictly decreasing, all equal, organ pipe, and
//! random over two values, each for three element shapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sorters::Record32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatasetKind {
    Random,
    Increasing,
    Decreasing,
    Equal,
    /// Strictly increasing up to the middle, then the mirror image.
    OrganPipe,
    /// Uniform over {0, 1}.
    TwoValuedRandom,
}

impl DatasetKind {
    pub const ALL: [DatasetKind; 6] = [
        DatasetKind::Random,
        DatasetKind::Increasing,
        DatasetKind::Decreasing,
        DatasetKind::Equal,
        DatasetKind::OrganPipe,
        DatasetKind::TwoValuedRandom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DatasetKind::Random => "random",
            DatasetKind::Increasing => "increasing",
            DatasetKind::Decreasing => "decreasing",
            DatasetKind::Equal => "equal",
            DatasetKind::OrganPipe => "organpipe",
            DatasetKind::TwoValuedRandom => "twovalued",
        }
    }

    pub fn from_name(s: &str) -> Option<DatasetKind> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    /// 4-byte integer.
    Int4,
    /// 8-byte float.
    Float8,
    /// 32-byte record with a 4-byte key.
    Record32,
}

impl ElementKind {
    pub fn name(&self) -> &'static str {
        match self {
            ElementKind::Int4 => "int4",
            ElementKind::Float8 => "float8",
            ElementKind::Record32 => "record32",
        }
    }

    pub fn from_name(s: &str) -> Option<ElementKind> {
        match s {
            "int4" => Some(ElementKind::Int4),
            "float8" => Some(ElementKind::Float8),
            "record32" => Some(ElementKind::Record32),
            _ => None,
        }
    }
}

/// Fully determines a generated array: same spec, same bits, every time
/// (fixed PRNG: ChaCha8 seeded from `seed`).
#[derive(Clone, Copy, Debug)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub n: usize,
    pub seed: u64,
    pub element_kind: ElementKind,
}

#[derive(Clone, Debug)]
pub enum Dataset {
    Int(Vec<i32>),
    Float(Vec<f64>),
    Record(Vec<Record32>),
}

impl Dataset {
    pub fn len(&self) -> usize {
        match self {
            Dataset::Int(v) => v.len(),
            Dataset::Float(v) => v.len(),
            Dataset::Record(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn generate_dataset(spec: &DatasetSpec) -> Dataset {
    let keys = key_sequence(spec.kind, spec.n, spec.seed);
    match spec.element_kind {
        ElementKind::Int4 => Dataset::Int(keys),
        ElementKind::Float8 => Dataset::Float(keys.iter().map(|&k| k as f64).collect()),
        ElementKind::Record32 => Dataset::Record(keys.into_iter().map(Record32::new).collect()),
    }
}

fn key_sequence(kind: DatasetKind, n: usize, seed: u64) -> Vec<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        DatasetKind::Random => (0..n).map(|_| rng.random::<i32>()).collect(),
        DatasetKind::Increasing => (0..n).map(|i| i as i32).collect(),
        DatasetKind::Decreasing => (0..n).map(|i| (n - 1 - i) as i32).collect(),
        DatasetKind::Equal => vec![42; n],
        DatasetKind::OrganPipe => (0..n)
            .map(|i| i.min(n - 1 - i) as i32)
            .collect(),
        DatasetKind::TwoValuedRandom => (0..n).map(|_| rng.random_range(0..2)).collect(),
    }
}

/// Fisher-Yates shuffle of 0..n-1, used by the simulation and enumeration
/// helpers.
pub(crate) fn random_permutation(n: usize, rng: &mut ChaCha8Rng, buf: &mut Vec<i64>) {
    buf.clear();
    buf.extend(0..n as i64);
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        buf.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(kind: DatasetKind, n: usize) -> Vec<i32> {
        key_sequence(kind, n, 7)
    }

    #[test]
    fn increasing_and_equal() {
        assert_eq!(keys(DatasetKind::Increasing, 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(keys(DatasetKind::Equal, 4), vec![42, 42, 42, 42]);
        assert_eq!(keys(DatasetKind::Decreasing, 4), vec![3, 2, 1, 0]);
    }

    #[test]
    fn organ_pipe_shape() {
        assert_eq!(keys(DatasetKind::OrganPipe, 6), vec![0, 1, 2, 2, 1, 0]);
        assert_eq!(keys(DatasetKind::OrganPipe, 5), vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn two_valued_uses_both_values() {
        let v = keys(DatasetKind::TwoValuedRandom, 1000);
        assert!(v.iter().all(|&x| x == 0 || x == 1));
        assert!(v.contains(&0) && v.contains(&1));
    }

    #[test]
    fn generation_is_reproducible() {
        let spec = DatasetSpec {
            kind: DatasetKind::Random,
            n: 1000,
            seed: 99,
            element_kind: ElementKind::Int4,
        };
        let (Dataset::Int(a), Dataset::Int(b)) = (generate_dataset(&spec), generate_dataset(&spec))
        else {
            panic!("wrong element kind");
        };
        assert_eq!(a, b);
    }

    #[test]
    fn element_kinds_carry_the_same_keys() {
        let base = DatasetSpec {
            kind: DatasetKind::Random,
            n: 50,
            seed: 3,
            element_kind: ElementKind::Int4,
        };
        let Dataset::Int(ints) = generate_dataset(&base) else {
            panic!()
        };
        let Dataset::Record(recs) = generate_dataset(&DatasetSpec {
            element_kind: ElementKind::Record32,
            ..base
        }) else {
            panic!()
        };
        assert!(ints.iter().zip(&recs).all(|(&k, r)| r.key == k));
    }
}
