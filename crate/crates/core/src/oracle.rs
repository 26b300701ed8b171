//! Brute-force ground truth.
//!
//! Breadth-first search over the power automaton from the full state set,
//! enumeration of the transition monoid, and exhaustive generation of every
//! standardized automaton with a given number of states.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashSet;

use crate::arith::in_subgroup;
use crate::bitset::StateSet;
use crate::dfa::{BinaryDfa, Letter, Word, WordSummary};
use crate::error::{Error, Result};
use crate::standardize::StandardizedDfa;

pub const DEFAULT_STATE_LIMIT: usize = 22;
/// Hard ceiling on subset search: the visited table has `2^n` entries.
pub const MAX_ORACLE_STATES: usize = 26;
pub const DEFAULT_MONOID_LIMIT: usize = 10;
pub const DEFAULT_MONOID_CAP: usize = 10_000_000;

const UNSEEN: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;
const LETTER_B: u32 = 1 << 31;
const SAMPLE: usize = 10;

/// Per-letter lookup tables mapping each byte of a subset mask to its image.
struct ImageTables {
    tables: [Vec<[u32; 256]>; 2],
}

impl ImageTables {
    fn new(dfa: &BinaryDfa) -> Self {
        let n = dfa.n();
        let chunks = n.div_ceil(8);
        let build = |c: Letter| {
            let delta = dfa.delta(c);
            (0..chunks)
                .map(|chunk| {
                    let mut t = [0u32; 256];
                    for (byte, slot) in t.iter_mut().enumerate() {
                        for bit in 0..8 {
                            let q = chunk * 8 + bit;
                            if q < n && byte >> bit & 1 == 1 {
                                *slot |= 1 << delta[q];
                            }
                        }
                    }
                    t
                })
                .collect()
        };
        ImageTables {
            tables: [build(Letter::A), build(Letter::B)],
        }
    }

    #[inline]
    fn image(&self, mask: u32, c: Letter) -> u32 {
        self.tables[c.index()]
            .iter()
            .enumerate()
            .fold(0, |acc, (i, t)| acc | t[(mask >> (8 * i)) as usize & 0xff])
    }
}

#[derive(Debug, Clone)]
pub struct ReachabilityReport {
    pub n: usize,
    pub reachable_count: u64,
    pub complete: bool,
    /// The first few unreachable nonempty subsets in mask order.
    pub unreachable_sample: Vec<StateSet>,
    /// For each subset mask, its BFS predecessor and the letter taken.
    parents: Vec<u32>,
    dfa: BinaryDfa,
}

impl ReachabilityReport {
    pub fn is_reachable(&self, s: &StateSet) -> bool {
        s.universe() == self.n && !s.is_empty() && self.parents[s.to_mask() as usize] != UNSEEN
    }

    /// All reachable subsets in mask order.
    pub fn reachable(&self) -> impl Iterator<Item = StateSet> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != UNSEEN)
            .map(|(m, _)| StateSet::from_mask(self.n, m as u64))
    }
}

pub fn enumerate_reachable(dfa: &BinaryDfa, limit_n: usize) -> Result<ReachabilityReport> {
    let n = dfa.n();
    let cap = limit_n.min(MAX_ORACLE_STATES);
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "state count for subset search",
            cap,
        });
    }
    let tables = ImageTables::new(dfa);
    let full: u32 = (1u32 << n) - 1;
    let mut parents = vec![UNSEEN; 1usize << n];
    parents[full as usize] = ROOT;
    let mut queue = VecDeque::from([full]);
    let mut count = 1u64;
    while let Some(s) = queue.pop_front() {
        for c in Letter::ALL {
            let t = tables.image(s, c);
            if parents[t as usize] == UNSEEN {
                parents[t as usize] = s | if c == Letter::B { LETTER_B } else { 0 };
                count += 1;
                queue.push_back(t);
            }
        }
    }
    let total = (1u64 << n) - 1;
    let unreachable_sample = (1..=full as usize)
        .filter(|&m| parents[m] == UNSEEN)
        .take(SAMPLE)
        .map(|m| StateSet::from_mask(n, m as u64))
        .collect();
    Ok(ReachabilityReport {
        n,
        reachable_count: count,
        complete: count == total,
        unreachable_sample,
        parents,
        dfa: dfa.clone(),
    })
}

/// A shortest word `w` with `Q·w = target`, replayed before it is returned.
pub fn witness_word(report: &ReachabilityReport, target: &StateSet) -> Result<Word> {
    if target.universe() != report.n || target.is_empty() {
        return Err(Error::InvalidArgument(
            "target must be a nonempty subset of the states".into(),
        ));
    }
    if !report.is_reachable(target) {
        return Err(Error::Unreachable(target.to_string()));
    }
    let mut letters = Vec::new();
    let mut m = target.to_mask() as u32;
    loop {
        let p = report.parents[m as usize];
        if p == ROOT {
            break;
        }
        letters.push(if p & LETTER_B != 0 {
            Letter::B
        } else {
            Letter::A
        });
        m = p & !LETTER_B;
    }
    letters.reverse();
    let w = Word::from_letters(letters);
    if report.dfa.image(&w) != *target {
        return Err(Error::Internal(format!(
            "oracle witness {w} does not replay"
        )));
    }
    Ok(w)
}

/// Summaries of every element of the transition monoid.
pub fn enumerate_monoid_summaries(
    dfa: &BinaryDfa,
    limit_n: usize,
    element_cap: usize,
) -> Result<BTreeSet<WordSummary>> {
    monoid_summaries(dfa, limit_n, dfa.n(), element_cap)
}

/// Summaries of the monoid elements of defect at most `max_defect`. Every
/// prefix of such an element has defect at most `max_defect` too, so the
/// search can stop at anything larger.
pub fn enumerate_low_defect_summaries(
    dfa: &BinaryDfa,
    limit_n: usize,
    max_defect: usize,
    element_cap: usize,
) -> Result<BTreeSet<WordSummary>> {
    monoid_summaries(dfa, limit_n, max_defect, element_cap)
}

fn monoid_summaries(
    dfa: &BinaryDfa,
    limit_n: usize,
    max_defect: usize,
    element_cap: usize,
) -> Result<BTreeSet<WordSummary>> {
    let n = dfa.n();
    let cap = limit_n.min(16);
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "state count for monoid enumeration",
            cap,
        });
    }
    // one nibble per state
    let pack = |t: &[usize]| {
        t.iter()
            .enumerate()
            .fold(0u64, |acc, (q, &p)| acc | (p as u64) << (4 * q))
    };
    let gens: Vec<[u64; 16]> = Letter::ALL
        .iter()
        .map(|&c| {
            let mut g = [0u64; 16];
            for (q, &p) in dfa.delta(c).iter().enumerate() {
                g[q] = p as u64;
            }
            g
        })
        .collect();
    let compose = |x: u64, g: &[u64; 16]| {
        (0..n).fold(0u64, |acc, q| {
            acc | g[(x >> (4 * q) & 0xf) as usize] << (4 * q)
        })
    };
    let summary_masks = |x: u64| {
        let (mut seen, mut twice) = (0u64, 0u64);
        for q in 0..n {
            let bit = 1u64 << (x >> (4 * q) & 0xf);
            twice |= seen & bit;
            seen |= bit;
        }
        let full = (1u64 << n) - 1;
        (full & !seen, twice)
    };

    let identity = pack(&(0..n).collect::<Vec<_>>());
    let mut seen = FxHashSet::default();
    let mut summaries = FxHashSet::default();
    seen.insert(identity);
    summaries.insert(summary_masks(identity));
    let mut stack = vec![identity];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = compose(x, g);
            let masks = summary_masks(y);
            if masks.0.count_ones() as usize > max_defect {
                continue;
            }
            if seen.insert(y) {
                if seen.len() > element_cap {
                    return Err(Error::ResourceLimit {
                        what: "transition monoid size",
                        cap: element_cap,
                    });
                }
                summaries.insert(masks);
                stack.push(y);
            }
        }
    }
    Ok(summaries
        .into_iter()
        .map(|(excl, dupl)| WordSummary {
            excl: StateSet::from_mask(n, excl),
            dupl: StateSet::from_mask(n, dupl),
        })
        .collect())
}

/// Duplicate states of monoid elements with `excl = {0}`.
pub fn d1_from_summaries(n: usize, summaries: &BTreeSet<WordSummary>) -> StateSet {
    let zero = StateSet::singleton(n, 0);
    summaries
        .iter()
        .filter(|s| s.excl == zero)
        .fold(StateSet::empty(n), |acc, s| acc.union(&s.dupl))
}

/// Duplicate states of monoid elements with `0 ∈ excl ⊆ ⟨prev_gen⟩` and
/// `|excl| ≤ k`.
pub fn dk_from_summaries(
    n: usize,
    summaries: &BTreeSet<WordSummary>,
    k: usize,
    prev_gen: usize,
) -> StateSet {
    summaries
        .iter()
        .filter(|s| {
            s.excl.contains(0)
                && s.excl.len() <= k
                && s.excl.iter().all(|q| in_subgroup(q, prev_gen))
        })
        .fold(StateSet::empty(n), |acc, s| acc.union(&s.dupl))
}

pub const STANDARDIZED_RANGE: std::ops::RangeInclusive<usize> = 3..=9;

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// `(n−1)·(n−1)!`
pub fn count_standardized(n: usize) -> usize {
    (n - 1) * factorial(n - 1)
}

/// The standardized automaton at position `idx` of the lexicographic order:
/// `r` first, then the restriction of `a` to `{1, …, n−1}` by permutation rank.
pub fn nth_standardized(n: usize, idx: usize) -> Result<StandardizedDfa> {
    if !STANDARDIZED_RANGE.contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "exhaustive generation supports n in {}..={}, got {n}",
            STANDARDIZED_RANGE.start(),
            STANDARDIZED_RANGE.end()
        )));
    }
    let per_r = factorial(n - 1);
    if idx >= (n - 1) * per_r {
        return Err(Error::InvalidArgument(format!("index {idx} out of range")));
    }
    let r = idx / per_r + 1;
    let mut rank = idx % per_r;
    let mut pool: Vec<usize> = (1..n).collect();
    let mut a = vec![0usize; n];
    for (q, slot) in a.iter_mut().enumerate().skip(1) {
        let block = factorial(n - 1 - q);
        *slot = pool.remove(rank / block);
        rank %= block;
    }
    a[0] = a[r];
    StandardizedDfa::from_a_row(a)
}

/// Every standardized automaton with `n` states, exactly once, in
/// lexicographic order.
pub fn enumerate_standardized(n: usize) -> Result<impl Iterator<Item = StandardizedDfa>> {
    nth_standardized(n, 0)?;
    Ok((0..count_standardized(n)).map(move |i| nth_standardized(n, i).expect("index in range")))
}
