//! The subgroup chain `H_0 ⊆ H_1 ⊆ H_2 ⊆ …` of a standardized automaton.
//!
//! `D_k` collects every state in `dupl(w)` over words `w` with
//! `0 ∈ excl(w) ⊆ H_{k−1}` and `|excl(w)| ≤ k`, and `H_k = ⟨D_k⟩`, starting
//! from `H_0 = {0}`. The automaton is completely reachable exactly when the
//! chain reaches `Z_n`; if two consecutive subgroups coincide below `Z_n` it
//! never will.
//!
//! `D_k` is computed exactly by two breadth-first searches. The excluded set
//! of `wc` depends only on `excl(w)` and `c`, and it never shrinks, so the
//! reachable excluded sets of size at most `k` form a small closed graph.
//! A state `q` lies in `dupl(wc)` iff some `c`-preimage of `q` lies in
//! `dupl(w)` or two of them lie outside `excl(w)`; tracking one duplicate at
//! a time therefore needs only pairs `(excl, p)` with `p ∈ dupl`, never the
//! whole duplicate set.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::arith::{in_subgroup, subgroup_generator};
use crate::bitset::StateSet;
use crate::dfa::{Letter, Word};
use crate::error::{Error, Result};
use crate::standardize::StandardizedDfa;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainConfig {
    pub max_k: usize,
    /// Largest number of distinct summaries one level may visit.
    pub pair_cap: usize,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            max_k: 64,
            pair_cap: 50_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub k: usize,
    pub dk: StateSet,
    /// `H_k = ⟨hk_gen⟩`
    pub hk_gen: usize,
    /// One witness per element of `dk`, the first found in BFS order.
    pub witnesses: BTreeMap<usize, Word>,
    /// Distinct summaries visited while computing the level.
    pub pairs_visited: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainOutcome {
    /// `H_ℓ = Z_n`.
    ReachedFullGroup(usize),
    /// `H_ℓ = H_{ℓ+1} ≠ Z_n`.
    Stabilized(usize),
}

#[derive(Debug, Clone)]
pub struct ChainResult {
    n: usize,
    pub levels: Vec<ChainLevel>,
    pub outcome: ChainOutcome,
}

impl ChainResult {
    pub fn completely_reachable(&self) -> bool {
        matches!(self.outcome, ChainOutcome::ReachedFullGroup(_))
    }

    /// Generator of `H_k`; `H_0` is `⟨n⟩ = {0}`.
    pub fn generator(&self, k: usize) -> usize {
        if k == 0 {
            self.n
        } else {
            self.levels[k - 1].hk_gen
        }
    }

    pub fn level(&self, k: usize) -> Option<&ChainLevel> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }
}

pub fn compute_level(
    sdfa: &StandardizedDfa,
    k: usize,
    prev_gen: usize,
    pair_cap: usize,
) -> Result<ChainLevel> {
    if k == 0 {
        return Err(Error::InvalidArgument("chain levels start at k = 1".into()));
    }
    let n = sdfa.n();
    let dfa = sdfa.dfa();
    let over_cap = || Error::ResourceLimit {
        what: "chain search nodes",
        cap: pair_cap,
    };

    // per letter: states without preimages, and states with two or more
    let orphans: [Vec<usize>; 2] =
        Letter::ALL.map(|c| (0..n).filter(|&q| dfa.preimages(c, q).is_empty()).collect());
    let merges: [Vec<usize>; 2] =
        Letter::ALL.map(|c| (0..n).filter(|&q| dfa.preimages(c, q).len() >= 2).collect());

    // reachable excluded sets of size <= k, with successor table
    let mut excl_index: FxHashMap<StateSet, u32> = FxHashMap::default();
    let mut excls: Vec<StateSet> = vec![StateSet::empty(n)];
    let mut excl_parent: Vec<(u32, Letter)> = vec![(NONE, Letter::A)];
    let mut succ: Vec<[u32; 2]> = Vec::new();
    excl_index.insert(StateSet::empty(n), 0);
    let mut head = 0;
    while head < excls.len() {
        let mut next = [NONE; 2];
        for c in Letter::ALL {
            let e = &excls[head];
            let mut t = StateSet::from_states(n, orphans[c.index()].iter().copied());
            for p in e {
                let q = dfa.step(p, c);
                if dfa.preimages(c, q).iter().all(|&x| e.contains(x)) {
                    t.insert(q);
                }
            }
            if t.len() > k {
                continue;
            }
            next[c.index()] = match excl_index.get(&t) {
                Some(&i) => i,
                None => {
                    if excls.len() >= pair_cap {
                        return Err(over_cap());
                    }
                    let i = excls.len() as u32;
                    excl_index.insert(t.clone(), i);
                    excls.push(t);
                    excl_parent.push((head as u32, c));
                    i
                }
            };
        }
        succ.push(next);
        head += 1;
    }

    // (excluded set, one marked duplicate): a duplicate is born where two
    // preimages survive, and afterwards just follows the letters
    let mut marked_index: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    let mut marked: Vec<(u32, u32)> = Vec::new();
    let mut origin: Vec<Origin> = Vec::new();
    let mut push = |key: (u32, u32), from: Origin, marked: &mut Vec<(u32, u32)>| -> Result<()> {
        if marked_index.contains_key(&key) {
            return Ok(());
        }
        if excls.len() + marked.len() >= pair_cap {
            return Err(over_cap());
        }
        marked_index.insert(key, marked.len() as u32);
        marked.push(key);
        origin.push(from);
        Ok(())
    };
    for (e, next) in succ.iter().enumerate() {
        for c in Letter::ALL {
            let t = next[c.index()];
            if t == NONE {
                continue;
            }
            for &q in &merges[c.index()] {
                let alive = dfa
                    .preimages(c, q)
                    .iter()
                    .filter(|&&x| !excls[e].contains(x))
                    .count();
                if alive >= 2 {
                    push((t, q as u32), Origin::Born(e as u32, c), &mut marked)?;
                }
            }
        }
    }
    let mut head = 0;
    while head < marked.len() {
        let (e, p) = marked[head];
        for c in Letter::ALL {
            let t = succ[e as usize][c.index()];
            if t != NONE {
                let q = dfa.step(p as usize, c) as u32;
                push((t, q), Origin::Moved(head as u32, c), &mut marked)?;
            }
        }
        head += 1;
    }

    let qualifies: Vec<bool> = excls
        .iter()
        .map(|e| e.contains(0) && e.iter().all(|q| in_subgroup(q, prev_gen)))
        .collect();
    let mut dk = StateSet::empty(n);
    let mut found_at: BTreeMap<usize, u32> = BTreeMap::new();
    for (i, &(e, p)) in marked.iter().enumerate() {
        if qualifies[e as usize] && dk.insert(p as usize) {
            found_at.insert(p as usize, i as u32);
        }
    }

    let witnesses = found_at
        .into_iter()
        .map(|(p, node)| {
            let mut letters = Vec::new();
            let mut i = node;
            let mut e = loop {
                match origin[i as usize] {
                    Origin::Moved(up, c) => {
                        letters.push(c);
                        i = up;
                    }
                    Origin::Born(e, c) => {
                        letters.push(c);
                        break e;
                    }
                }
            };
            while excl_parent[e as usize].0 != NONE {
                let (up, c) = excl_parent[e as usize];
                letters.push(c);
                e = up;
            }
            letters.reverse();
            (p, Word::from_letters(letters))
        })
        .collect();
    let hk_gen = subgroup_generator(n, dk.iter());
    Ok(ChainLevel {
        k,
        dk,
        hk_gen,
        witnesses,
        pairs_visited: excls.len() + marked.len(),
    })
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
enum Origin {
    /// Created by letter `c` from the excluded set with this index.
    Born(u32, Letter),
    /// Moved along letter `c` from the marked pair with this index.
    Moved(u32, Letter),
}

pub fn compute_chain(sdfa: &StandardizedDfa, config: &ChainConfig) -> Result<ChainResult> {
    if config.max_k == 0 {
        return Err(Error::InvalidArgument("max_k must be at least 1".into()));
    }
    let n = sdfa.n();
    let mut levels: Vec<ChainLevel> = Vec::new();
    let mut prev_gen = n;
    for k in 1..=config.max_k {
        let level = compute_level(sdfa, k, prev_gen, config.pair_cap)?;
        let gen = level.hk_gen;
        levels.push(level);
        if gen == 1 {
            return Ok(ChainResult {
                n,
                levels,
                outcome: ChainOutcome::ReachedFullGroup(k),
            });
        }
        if k > 1 && gen == prev_gen {
            return Ok(ChainResult {
                n,
                levels,
                outcome: ChainOutcome::Stabilized(k - 1),
            });
        }
        prev_gen = gen;
    }
    Err(Error::LevelCap(config.max_k))
}

/// `s` is a union of cosets of `⟨g⟩`.
fn is_union_of_cosets(s: &StateSet, g: usize) -> bool {
    let n = s.universe();
    s.iter().all(|q| s.contains((q + g) % n))
}

/// Builds a word `w` with `Z_n·w = target`, growing a preimage of the target
/// one state at a time along the chain.
pub fn synthesize_witness_constructive(
    sdfa: &StandardizedDfa,
    chain: &ChainResult,
    target: &StateSet,
) -> Result<Word> {
    let ChainOutcome::ReachedFullGroup(top) = chain.outcome else {
        return Err(Error::NotCompletelyReachable);
    };
    let n = sdfa.n();
    if target.universe() != n || target.is_empty() {
        return Err(Error::InvalidArgument(
            "target must be a nonempty subset of the states".into(),
        ));
    }
    let dfa = sdfa.dfa();
    let mut s = target.clone();
    let mut suffixes: Vec<Word> = Vec::new();
    while !s.is_full() {
        let k = (1..=top)
            .rev()
            .find(|&k| is_union_of_cosets(&s, chain.generator(k - 1)))
            .expect("every set is a union of singletons");
        let level = chain.level(k).unwrap();
        let g = level.hk_gen;
        let outside = s.complement();
        let (q, p) = outside
            .iter()
            .find_map(|q| {
                s.iter()
                    .find(|&p| (p + n - q).is_multiple_of(g) && level.dk.contains((p + n - q) % n))
                    .map(|p| (q, p))
            })
            .ok_or_else(|| {
                Error::Internal(format!("no chain edge leaves the complement of {s}"))
            })?;

        let mut v = level.witnesses[&((p + n - q) % n)].clone();
        v.push_power(Letter::B, q);
        let t = dfa.transformation(&v);
        let mut pre_p = (0..n).filter(|&x| t[x] == p);
        let (p1, p2) = match (pre_p.next(), pre_p.next()) {
            (Some(p1), Some(p2)) => (p1, p2),
            _ => return Err(Error::Internal(format!("{p} is not duplicated by {v}"))),
        };
        let mut first_pre = vec![usize::MAX; n];
        for x in (0..n).rev() {
            first_pre[t[x]] = x;
        }
        let mut next = StateSet::from_states(n, [p1, p2]);
        for x in s.iter().filter(|&x| x != p) {
            if first_pre[x] == usize::MAX {
                return Err(Error::Internal(format!("{x} is excluded by {v}")));
            }
            next.insert(first_pre[x]);
        }
        if next.len() != s.len() + 1 {
            return Err(Error::Internal("preimage did not grow by one state".into()));
        }
        suffixes.push(v);
        s = next;
    }

    let mut word = Word::empty();
    for v in suffixes.iter().rev() {
        word.extend_from(v);
    }
    if dfa.image(&word) != *target {
        return Err(Error::Internal(format!(
            "witness {word} does not replay to {target}"
        )));
    }
    Ok(word)
}
