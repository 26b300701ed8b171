//! Cross-validation sweeps: the arithmetic decider against the subgroup chain
//! and the subset-search oracle, over exhaustive or sampled families of
//! standardized automata.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chain::{compute_chain, ChainConfig};
use crate::corpus::random_standardized_with;
use crate::decider::smallest_invariant_divisor;
use crate::error::Result;
use crate::oracle::{count_standardized, enumerate_reachable, nth_standardized};
use crate::rystsov::difference_set;
use crate::standardize::StandardizedDfa;

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub chain: Option<ChainConfig>,
    pub oracle: bool,
    pub oracle_limit: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            chain: Some(ChainConfig::default()),
            oracle: true,
            oracle_limit: crate::oracle::DEFAULT_STATE_LIMIT,
        }
    }
}

/// Every available verdict on one automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub decider: bool,
    pub decider_full: bool,
    pub chain: Option<bool>,
    pub oracle: Option<bool>,
    pub h1_gen: usize,
}

impl Check {
    pub fn agrees(&self) -> bool {
        self.decider == self.decider_full
            && self.chain.is_none_or(|c| c == self.decider)
            && self.oracle.is_none_or(|o| o == self.decider)
    }
}

pub fn check(sdfa: &StandardizedDfa, opts: &SweepOptions) -> Result<Check> {
    let decider = smallest_invariant_divisor(sdfa, true).is_none();
    let decider_full = smallest_invariant_divisor(sdfa, false).is_none();
    let chain = match &opts.chain {
        Some(cfg) => Some(compute_chain(sdfa, cfg)?.completely_reachable()),
        None => None,
    };
    let oracle = if opts.oracle {
        Some(enumerate_reachable(sdfa.dfa(), opts.oracle_limit)?.complete)
    } else {
        None
    };
    Ok(Check {
        decider,
        decider_full,
        chain,
        oracle,
        h1_gen: difference_set(sdfa).h1_gen,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub n: usize,
    pub automata: usize,
    pub completely_reachable: usize,
    pub disagreements: usize,
    /// Completely reachable automata whose Rystsov graph is not strongly
    /// connected.
    pub reachable_disconnected: usize,
    /// `a`-row of the first disagreeing automaton, if any.
    pub first_disagreement: Option<Vec<usize>>,
}

impl SweepSummary {
    fn absorb(mut self, row: &[usize], c: &Check) -> Self {
        self.automata += 1;
        if c.decider {
            self.completely_reachable += 1;
            if c.h1_gen != 1 {
                self.reachable_disconnected += 1;
            }
        }
        if !c.agrees() {
            self.disagreements += 1;
            if self.first_disagreement.is_none() {
                self.first_disagreement = Some(row.to_vec());
            }
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.automata += other.automata;
        self.completely_reachable += other.completely_reachable;
        self.disagreements += other.disagreements;
        self.reachable_disconnected += other.reachable_disconnected;
        self.first_disagreement = self.first_disagreement.or(other.first_disagreement);
        self
    }
}

fn run<I>(n: usize, items: I, opts: &SweepOptions) -> Result<SweepSummary>
where
    I: IndexedParallelIterator<Item = Result<StandardizedDfa>>,
{
    items
        .map(|s| {
            let s = s?;
            let c = check(&s, opts)?;
            Ok(SweepSummary {
                n,
                ..Default::default()
            }
            .absorb(s.a_row(), &c))
        })
        .try_reduce(
            || SweepSummary {
                n,
                ..Default::default()
            },
            |a, b| Ok(a.merge(b)),
        )
}

/// Every standardized automaton with `n` states.
pub fn sweep_exhaustive(n: usize, opts: &SweepOptions) -> Result<SweepSummary> {
    nth_standardized(n, 0)?;
    run(
        n,
        (0..count_standardized(n))
            .into_par_iter()
            .map(|i| nth_standardized(n, i)),
        opts,
    )
}

/// The seeded random sample of standardized automata used by sweeps.
pub fn sample_standardized(n: usize, samples: usize, seed: u64) -> Result<Vec<StandardizedDfa>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..samples)
        .map(|_| random_standardized_with(n, &mut rng))
        .collect()
}

pub fn sweep_sampled(
    n: usize,
    samples: usize,
    seed: u64,
    opts: &SweepOptions,
) -> Result<SweepSummary> {
    let items = sample_standardized(n, samples, seed)?;
    run(n, items.into_par_iter().map(Ok), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_sweeps_agree() {
        for n in 3..=5 {
            let s = sweep_exhaustive(n, &SweepOptions::default()).unwrap();
            assert_eq!(s.automata, count_standardized(n));
            assert_eq!(s.disagreements, 0);
        }
        let s = sweep_sampled(9, 50, 7, &SweepOptions::default()).unwrap();
        assert_eq!((s.automata, s.disagreements), (50, 0));
    }

    #[test]
    fn samples_are_reproducible() {
        let x = sample_standardized(10, 5, 3).unwrap();
        let y = sample_standardized(10, 5, 3).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert_eq!(a.a_row(), b.a_row());
        }
    }
}
