//! Deciding complete reachability.
//!
//! A standardized automaton is completely reachable iff no proper subgroup
//! `⟨d⟩` of `Z_n` is mapped into itself by `a`. Only nontrivial divisors `d`
//! of `n` need checking, and each check scans the `n/d` multiples of `d`, so
//! the whole test costs `σ(n) − n − 1 = O(n log log n)` evaluations of `a`.
//! An invariant subgroup must contain `0·a`, so it suffices to try the
//! divisors of `gcd(n, 0·a)`.

use std::fmt;

use crate::arith::{gcd, nontrivial_divisors};
use crate::chain::{compute_chain, ChainConfig, ChainResult};
use crate::dfa::BinaryDfa;
use crate::error::{Error, Result};
use crate::standardize::{classify, standardize, Shape, StandardizedDfa};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    FlipFlop,
    NoInvariantSubgroup,
    /// `⟨d⟩` is a proper `a`-invariant subgroup.
    InvariantSubgroup(usize),
    ShapeObstruction(String),
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub completely_reachable: bool,
    pub reason: Reason,
    pub invariant_divisor: Option<usize>,
    /// Chain levels certifying the verdict, when requested.
    pub chain: Option<ChainResult>,
}

impl Verdict {
    fn from_reason(reason: Reason) -> Self {
        let invariant_divisor = match reason {
            Reason::InvariantSubgroup(d) => Some(d),
            _ => None,
        };
        Verdict {
            completely_reachable: matches!(reason, Reason::FlipFlop | Reason::NoInvariantSubgroup),
            reason,
            invariant_divisor,
            chain: None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            Reason::FlipFlop | Reason::NoInvariantSubgroup => f.write_str("COMPLETELY_REACHABLE"),
            Reason::InvariantSubgroup(d) => {
                write!(f, "NOT_COMPLETELY_REACHABLE: invariant subgroup {d}Z_n")
            }
            Reason::ShapeObstruction(detail) => write!(f, "NOT_COMPLETELY_REACHABLE: {detail}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecideOptions {
    /// Only try divisors of `gcd(n, 0·a)`.
    pub remark9: bool,
    /// Attach the subgroup chain to the verdict.
    pub certify: Option<ChainConfig>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            remark9: true,
            certify: None,
        }
    }
}

/// Whether `⟨d⟩·a ⊆ ⟨d⟩`.
pub fn subgroup_a_invariant(sdfa: &StandardizedDfa, d: usize) -> Result<bool> {
    let n = sdfa.n();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::InvalidArgument(format!("{d} does not divide {n}")));
    }
    Ok((0..n).step_by(d).all(|q| sdfa.a(q).is_multiple_of(d)))
}

/// Smallest `d` such that `⟨d⟩` is a proper `a`-invariant subgroup.
pub fn smallest_invariant_divisor(sdfa: &StandardizedDfa, remark9: bool) -> Option<usize> {
    let n = sdfa.n();
    let candidates = if remark9 {
        // divisors of g = gcd(n, 0·a) that exceed 1; g < n since 0·a ≠ 0
        let g = gcd(n, sdfa.a(0));
        let mut ds = nontrivial_divisors(g);
        if g > 1 {
            ds.push(g);
        }
        ds
    } else {
        nontrivial_divisors(n)
    };
    candidates
        .into_iter()
        .find(|&d| (0..n).step_by(d).all(|q| sdfa.a(q).is_multiple_of(d)))
}

pub fn decide_standardized(sdfa: &StandardizedDfa, opts: &DecideOptions) -> Result<Verdict> {
    let reason = match smallest_invariant_divisor(sdfa, opts.remark9) {
        Some(d) => Reason::InvariantSubgroup(d),
        None => Reason::NoInvariantSubgroup,
    };
    let mut verdict = Verdict::from_reason(reason);
    if let Some(cfg) = &opts.certify {
        verdict.chain = Some(compute_chain(sdfa, cfg)?);
    }
    Ok(verdict)
}

pub fn decide(dfa: &BinaryDfa) -> Verdict {
    decide_with(dfa, &DecideOptions::default()).expect("no certificate requested")
}

pub fn decide_with(dfa: &BinaryDfa, opts: &DecideOptions) -> Result<Verdict> {
    let class = classify(dfa);
    match class.verdict {
        Shape::FlipFlop => Ok(Verdict::from_reason(Reason::FlipFlop)),
        // Z_1 has no proper subgroup at all
        Shape::TooSmallTrivial => Ok(Verdict::from_reason(Reason::NoInvariantSubgroup)),
        Shape::NotCompletelyReachableShape => {
            Ok(Verdict::from_reason(Reason::ShapeObstruction(class.detail)))
        }
        Shape::Standardizable => decide_standardized(&standardize(dfa)?, opts),
    }
}
