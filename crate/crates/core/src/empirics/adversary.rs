//! Comparator-level adversary that constructs a bad case while the sort
//! runs.
//!
//! The sorted elements are opaque tokens whose only order is the one the
//! adversary reports, so the sorter cannot consult keys behind its back
//! (the token type implements no ordering of its own). Values follow the
//! gas/solid technique: unresolved tokens compare as arbitrarily large,
//! and a token solidifies to the next small value the moment the sort
//! starts pivoting around it, which forces every partition into a poor
//! split. Afterwards the materialized input replays the exact same
//! comparison sequence through an ordinary instrumented sort.

use crate::sorters::{quicksort_with, Comparator, NaturalOrder, QuicksortConfig};

/// Opaque sort token; deliberately no PartialOrd.
#[derive(Clone, Copy, Debug)]
struct Token(u32);

const GAS: i64 = i64::MAX;

struct KillerAdversary {
    val: Vec<i64>,
    candidate: usize,
    next_solid: i64,
}

impl KillerAdversary {
    fn new(n: usize) -> Self {
        KillerAdversary {
            val: vec![GAS; n],
            candidate: 0,
            next_solid: 0,
        }
    }

    fn order(&mut self, x: usize, y: usize) -> std::cmp::Ordering {
        if self.val[x] == GAS && self.val[y] == GAS {
            if x == self.candidate {
                self.val[x] = self.next_solid;
            } else {
                self.val[y] = self.next_solid;
            }
            self.next_solid += 1;
        }
        if self.val[x] == GAS {
            self.candidate = x;
        } else if self.val[y] == GAS {
            self.candidate = y;
        }
        self.val[x].cmp(&self.val[y])
    }

    // Distinct concrete values for tokens that never solidified; they only
    // ever compared greater than solids, which stays true.
    fn materialize(mut self) -> Vec<i64> {
        for v in self.val.iter_mut() {
            if *v == GAS {
                *v = self.next_solid;
                self.next_solid += 1;
            }
        }
        self.val
    }
}

impl Comparator<Token> for KillerAdversary {
    fn lt(&mut self, a: &Token, b: &Token) -> bool {
        self.order(a.0 as usize, b.0 as usize).is_lt()
    }
    fn le(&mut self, a: &Token, b: &Token) -> bool {
        self.order(a.0 as usize, b.0 as usize).is_le()
    }
    fn eq(&mut self, a: &Token, b: &Token) -> bool {
        self.order(a.0 as usize, b.0 as usize).is_eq()
    }
}

#[derive(Clone, Debug)]
pub struct AdversaryOutcome {
    /// Comparisons the instrumented sort spent against the adversary.
    pub comparisons: u64,
    /// The constructed input, indexed by original position.
    pub input: Vec<i64>,
}

/// Run the adversary against the configured Quicksort at size n.
pub fn killer_adversary(cfg: &QuicksortConfig, n: usize) -> AdversaryOutcome {
    let mut tokens: Vec<Token> = (0..n as u32).map(Token).collect();
    let mut adversary = KillerAdversary::new(n);
    let stats = quicksort_with(&mut tokens, cfg, &mut adversary);
    AdversaryOutcome {
        comparisons: stats.comparisons,
        input: adversary.materialize(),
    }
}

/// Comparisons of the same sorter on a concrete input; the adversary's
/// count must be reproduced exactly by its materialized input.
pub fn replay_comparisons(cfg: &QuicksortConfig, input: &[i64]) -> u64 {
    let mut v = input.to_vec();
    let stats = quicksort_with(&mut v, cfg, &mut NaturalOrder);
    debug_assert!(v.windows(2).all(|w| w[0] <= w[1]));
    stats.comparisons
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirics::model_sort_config;
    use crate::pivot_models::{Model, ModelConfig};

    fn outcome(model: Model, n: usize) -> (AdversaryOutcome, QuicksortConfig) {
        let cfg = model_sort_config(&ModelConfig::with_defaults(model), false);
        (killer_adversary(&cfg, n), cfg)
    }

    #[test]
    fn replay_reproduces_the_count_exactly() {
        for model in [
            Model::Simple,
            Model::MedianOfThree,
            Model::MedianOfMedians,
            Model::RecursiveMom,
            Model::RecursiveMomInsertion,
        ] {
            for n in [10usize, 100, 1000] {
                let (out, cfg) = outcome(model, n);
                assert_eq!(
                    replay_comparisons(&cfg, &out.input),
                    out.comparisons,
                    "model {model:?}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn adversary_forces_quadratic_growth_for_fixed_pivot() {
        let (at_1000, _) = outcome(Model::Simple, 1000);
        let (at_2000, _) = outcome(Model::Simple, 2000);
        // Quadratic: doubling n quadruples the comparisons (up to lower
        // order). n^2/4 is the expected leading term.
        let ratio = at_2000.comparisons as f64 / at_1000.comparisons as f64;
        assert!((3.5..4.5).contains(&ratio), "ratio = {ratio}");
        let coeff = at_1000.comparisons as f64 / (1000.0 * 1000.0);
        assert!((0.2..0.3).contains(&coeff), "coeff = {coeff}");
    }

    #[test]
    fn adaptive_sampling_blunts_the_adversary() {
        let (mom, _) = outcome(Model::RecursiveMom, 20_000);
        let (simple, _) = outcome(Model::Simple, 20_000);
        assert!(mom.comparisons * 50 < simple.comparisons);
    }

    #[test]
    fn materialized_input_is_a_permutation_basis() {
        let (out, _) = outcome(Model::Simple, 100);
        let mut sorted = out.input.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 100, "values must be distinct");
    }
}
