//! Instrumented reference implementations of the partitioning algorithms
//! and sorters under analysis.
//!
//! Every element comparison goes through a [`Comparator`], so the same
//! sorter code serves production use (a plain ordering, nothing counted),
//! instrumented analysis and the comparator-level adversary. Comparison
//! counts are tallied at the call sites into [`SortStats`]; data movements
//! are assignments with at least one array-element operand, a swap
//! counting as three.

mod heapsort;
mod insertion;
mod partition;
mod quicksort;

pub use heapsort::{heapsort, HeapsortVariant};
pub use insertion::insertion_sort;
pub use partition::{partition, PartitionResult, PartitionScheme};
pub use quicksort::{
    medofmed, quicksort, quicksort_with, select_pivot_forced_sample, select_pivot_index,
    PivotRule, QuicksortConfig, QuicksortOptions,
};

/// Three-way element ordering seen by the sorters.
///
/// Implementations may be stateful (counting wrappers, adversaries); the
/// sorters never compare elements any other way.
pub trait Comparator<T> {
    fn lt(&mut self, a: &T, b: &T) -> bool;
    fn le(&mut self, a: &T, b: &T) -> bool;
    fn eq(&mut self, a: &T, b: &T) -> bool;
}

/// The element type's own ordering.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaturalOrder;

impl<T: PartialOrd> Comparator<T> for NaturalOrder {
    #[inline]
    fn lt(&mut self, a: &T, b: &T) -> bool {
        a < b
    }
    #[inline]
    fn le(&mut self, a: &T, b: &T) -> bool {
        a <= b
    }
    #[inline]
    fn eq(&mut self, a: &T, b: &T) -> bool {
        a == b
    }
}

/// Operation counters for one sorter run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortStats {
    /// Element comparisons (each `lt`/`le`/`eq` evaluation is one).
    pub comparisons: u64,
    /// Assignments in which one or both operands are array elements.
    pub movements: u64,
    /// High-water mark of the explicit stack, in stack words.
    pub max_stack_depth: usize,
}

impl SortStats {
    pub fn new() -> Self {
        Self::default()
    }
}

/// 32-byte record with a 4-byte sort key, the large-element benchmark
/// shape.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Record32 {
    pub key: i32,
    pub data: [i32; 7],
}

impl Record32 {
    pub fn new(key: i32) -> Self {
        Record32 { key, data: [0; 7] }
    }
}

impl PartialOrd for Record32 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.key.partial_cmp(&other.key)
    }
}
