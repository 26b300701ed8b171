//! Reduction of a binary automaton to standardized form.
//!
//! A standardized automaton has states `Z_n`, letter `b` acting as `q ↦ q + 1`,
//! letter `a` of defect 1 with `excl(a) = {0}`, and `0·a = dupl(a)`. Any binary
//! automaton where one letter is an `n`-cycle and the other has defect 1 is
//! syntactically equivalent to a standardized one after relabeling the states
//! along the cycle and replacing the defect letter `a` by `b^k a`.

use std::collections::BTreeSet;
use std::fmt;

use crate::bitset::StateSet;
use crate::dfa::{BinaryDfa, Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    FlipFlop,
    Standardizable,
    NotCompletelyReachableShape,
    TooSmallTrivial,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::FlipFlop => "flip-flop",
            Shape::Standardizable => "standardizable",
            Shape::NotCompletelyReachableShape => "not completely reachable (shape)",
            Shape::TooSmallTrivial => "single state",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Shape,
    pub detail: String,
}

impl Classification {
    fn new(verdict: Shape, detail: impl Into<String>) -> Self {
        Classification {
            verdict,
            detail: detail.into(),
        }
    }
}

/// The flip-flop's monoid: identity and the two constant maps.
fn is_flip_flop(dfa: &BinaryDfa) -> bool {
    if dfa.n() != 2 {
        return false;
    }
    let gens: Vec<[usize; 2]> = Letter::ALL
        .iter()
        .map(|&c| [dfa.step(0, c), dfa.step(1, c)])
        .collect();
    let mut monoid = BTreeSet::from([[0usize, 1usize]]);
    let mut frontier = vec![[0usize, 1usize]];
    while let Some(t) = frontier.pop() {
        for g in &gens {
            let u = [g[t[0]], g[t[1]]];
            if monoid.insert(u) {
                frontier.push(u);
            }
        }
    }
    monoid == BTreeSet::from([[0, 1], [0, 0], [1, 1]])
}

pub fn classify(dfa: &BinaryDfa) -> Classification {
    let n = dfa.n();
    if n == 1 {
        return Classification::new(
            Shape::TooSmallTrivial,
            "one state; the only subset is Q itself",
        );
    }
    if is_flip_flop(dfa) {
        return Classification::new(Shape::FlipFlop, "two-state flip-flop");
    }
    let da = dfa.letter_defect(Letter::A);
    let db = dfa.letter_defect(Letter::B);
    if da != 1 && db != 1 {
        return Classification::new(
            Shape::NotCompletelyReachableShape,
            format!("no letter has defect 1 (defects {da} and {db}); no subset of size n-1 is reachable"),
        );
    }
    let (def, perm) = if da == 1 {
        (Letter::A, Letter::B)
    } else {
        (Letter::B, Letter::A)
    };
    let dp = if da == 1 { db } else { da };
    if dp != 0 {
        return Classification::new(
            Shape::NotCompletelyReachableShape,
            format!(
                "letter {} has defect {dp}; at most two subsets of size n-1 are reachable",
                perm.as_char()
            ),
        );
    }
    if !dfa.is_cyclic_permutation(perm) {
        return Classification::new(
            Shape::NotCompletelyReachableShape,
            format!(
                "permutation letter {} is not a single {n}-cycle",
                perm.as_char()
            ),
        );
    }
    Classification::new(
        Shape::Standardizable,
        format!(
            "letter {} is an {n}-cycle and letter {} has defect 1",
            perm.as_char(),
            def.as_char()
        ),
    )
}

/// A standardized automaton together with the way back to the input it was
/// derived from.
#[derive(Debug, Clone)]
pub struct StandardizedDfa {
    dfa: BinaryDfa,
    r: usize,
    dupl_a: usize,
    /// original state → standardized name
    relabeling: Vec<usize>,
    /// standardized name → original state
    inverse: Vec<usize>,
    /// the original letter `a` played the role of the cyclic letter
    letters_swapped: bool,
    /// standardized `a` is the original word `b^shift a` (after any swap)
    shift: usize,
}

impl StandardizedDfa {
    /// Wraps an automaton already in standardized form, with `b = +1` implied
    /// and `a` given as a row.
    pub fn from_a_row(delta_a: Vec<usize>) -> Result<Self> {
        let dfa = BinaryDfa::with_cyclic_b(delta_a)?;
        let n = dfa.n();
        Self::checked(dfa, (0..n).collect(), false, 0)
    }

    /// Checks every standardized-form invariant and computes `r`.
    fn checked(
        dfa: BinaryDfa,
        relabeling: Vec<usize>,
        letters_swapped: bool,
        shift: usize,
    ) -> Result<Self> {
        let n = dfa.n();
        let bad = |msg: String| Err(Error::NotStandardizable(msg));
        if n < 2 {
            return bad("standardized automata have at least two states".into());
        }
        if (0..n).any(|q| dfa.step(q, Letter::B) != (q + 1) % n) {
            return bad("letter b is not the +1 shift".into());
        }
        if !dfa.preimages(Letter::A, 0).is_empty() {
            return bad("state 0 lies in the image of a".into());
        }
        if dfa.letter_defect(Letter::A) != 1 {
            return bad("letter a does not have defect 1".into());
        }
        let dupl_a = dfa.step(0, Letter::A);
        let pre = dfa.preimages(Letter::A, dupl_a);
        if pre.len() != 2 || pre[0] != 0 {
            return bad("0·a is not the duplicate state of a".into());
        }
        let r = pre[1];
        let mut seen = vec![false; n];
        for q in 1..n {
            let p = dfa.step(q, Letter::A);
            if p == 0 || std::mem::replace(&mut seen[p], true) {
                return bad("a does not permute the nonzero states".into());
            }
        }
        let mut inverse = vec![0; n];
        for (orig, &new) in relabeling.iter().enumerate() {
            inverse[new] = orig;
        }
        Ok(StandardizedDfa {
            dfa,
            r,
            dupl_a,
            relabeling,
            inverse,
            letters_swapped,
            shift,
        })
    }

    pub fn dfa(&self) -> &BinaryDfa {
        &self.dfa
    }

    pub fn n(&self) -> usize {
        self.dfa.n()
    }

    /// The nonzero state with `r·a = dupl(a)`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// `dupl(a) = 0·a`.
    pub fn dupl_a(&self) -> usize {
        self.dupl_a
    }

    #[inline]
    pub fn a(&self, q: usize) -> usize {
        self.dfa.step(q, Letter::A)
    }

    pub fn a_row(&self) -> &[usize] {
        self.dfa.delta(Letter::A)
    }

    /// Original state → standardized name.
    pub fn relabeling(&self) -> &[usize] {
        &self.relabeling
    }

    pub fn letters_swapped(&self) -> bool {
        self.letters_swapped
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn to_standard_state(&self, orig: usize) -> usize {
        self.relabeling[orig]
    }

    pub fn to_original_state(&self, std: usize) -> usize {
        self.inverse[std]
    }

    pub fn to_standard_set(&self, orig: &StateSet) -> StateSet {
        orig.map(&self.relabeling)
    }

    pub fn to_original_set(&self, std: &StateSet) -> StateSet {
        std.map(&self.inverse)
    }

    /// Rewrites a word over the standardized letters into the input
    /// automaton's letters: `a ↦ c^shift d`, `b ↦ c`, where `c` is the cyclic
    /// letter and `d` the defect-1 letter of the input.
    pub fn to_original_word(&self, w: &Word) -> Word {
        let (cyc, def) = if self.letters_swapped {
            (Letter::A, Letter::B)
        } else {
            (Letter::B, Letter::A)
        };
        let mut out = Word::empty();
        for &c in w.letters() {
            match c {
                Letter::A => {
                    out.push_power(cyc, self.shift);
                    out.push(def);
                }
                Letter::B => out.push(cyc),
            }
        }
        out
    }
}

/// Brings a standardizable automaton into standardized form in `O(n)`.
pub fn standardize(dfa: &BinaryDfa) -> Result<StandardizedDfa> {
    let class = classify(dfa);
    if class.verdict != Shape::Standardizable {
        return Err(Error::NotStandardizable(class.detail));
    }
    let n = dfa.n();
    let letters_swapped = dfa.letter_defect(Letter::A) != 1;
    let (cyc, def) = if letters_swapped {
        (Letter::A, Letter::B)
    } else {
        (Letter::B, Letter::A)
    };
    let excluded = (0..n)
        .find(|&q| dfa.preimages(def, q).is_empty())
        .expect("defect-1 letter misses a state");

    // name the states along the cycle, starting at the excluded state
    let mut relabeling = vec![0usize; n];
    let mut inverse = vec![0usize; n];
    let mut q = excluded;
    for (i, slot) in inverse.iter_mut().enumerate() {
        relabeling[q] = i;
        *slot = q;
        q = dfa.step(q, cyc);
    }
    let relabeled: Vec<usize> = inverse
        .iter()
        .map(|&orig| relabeling[dfa.step(orig, def)])
        .collect();

    let mut hits = vec![0u8; n];
    let mut dup = None;
    for &p in &relabeled {
        hits[p] += 1;
        if hits[p] == 2 {
            dup = Some(p);
        }
    }
    let dup = dup.expect("defect-1 letter has a duplicate state");
    let mut pair = (0..n).filter(|&q| relabeled[q] == dup);
    let (q1, q2) = (pair.next().unwrap(), pair.next().unwrap());

    let a: Vec<usize> = (0..n).map(|q| relabeled[(q + q1) % n]).collect();
    let out = StandardizedDfa::checked(
        BinaryDfa::with_cyclic_b(a)?,
        relabeling,
        letters_swapped,
        q1,
    )?;
    debug_assert_eq!(out.r, q2 - q1);
    Ok(out)
}
