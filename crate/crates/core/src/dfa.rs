//! Binary automata, words, and the excluded/duplicate-set algebra.
//!
//! A word `w` acting on `Q = {0, …, n−1}` is summarized by the pair
//! `(excl(w), dupl(w))`: the states missing from `Q·w`, and the states with at
//! least two preimages under `w`. Appending a word `v` to `u` only needs the
//! summary of `u` and the preimage structure of `v`:
//!
//! ```text
//! excl(uv) = { q : q·v⁻¹ ⊆ excl(u) }
//! dupl(uv) = { q : q·v⁻¹ ∩ dupl(u) ≠ ∅  or  |q·v⁻¹ \ excl(u)| ≥ 2 }
//! ```
//!
//! so the summary of a word can be folded letter by letter without ever
//! composing transformations. [`BinaryDfa::step_summary`] is that fold step
//! and [`BinaryDfa::summarize_word`] is the direct route through the composed
//! transformation; the two always agree.

use std::fmt;
use std::str::FromStr;

use crate::bitset::StateSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::A, Letter::B];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Letter::A => 0,
            Letter::B => 1,
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A finite sequence of letters; the empty word is `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, c: Letter) {
        self.0.push(c);
    }

    pub fn push_power(&mut self, c: Letter, k: usize) {
        self.0.extend(std::iter::repeat_n(c, k));
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    /// Plain letter string, `abbba`.
    pub fn to_plain(&self) -> String {
        if self.0.is_empty() {
            return "ε".into();
        }
        self.0.iter().map(|c| c.as_char()).collect()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Run-length notation: `ab^3a`, or `ε` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let mut i = 0;
        while i < self.0.len() {
            let c = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == c).count();
            if run == 1 {
                write!(f, "{}", c.as_char())?;
            } else {
                write!(f, "{}^{}", c.as_char(), run)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Accepts plain letters with optional `^k` exponents (`ab^24ab^12ab^8`),
/// whitespace anywhere, and `ε` / `eps` / the empty string for the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "ε" || s == "eps" {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            let c = match ch {
                'a' => Letter::A,
                'b' => Letter::B,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unexpected character `{other}` in word"
                    )))
                }
            };
            let mut count = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                count = digits
                    .parse()
                    .map_err(|_| Error::InvalidArgument("missing exponent after `^`".into()))?;
            }
            out.extend(std::iter::repeat_n(c, count));
        }
        Ok(Word(out))
    }
}

/// The pair `(excl(w), dupl(w))` of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordSummary {
    pub excl: StateSet,
    pub dupl: StateSet,
}

impl WordSummary {
    /// Summary of the empty word.
    pub fn identity(n: usize) -> Self {
        WordSummary {
            excl: StateSet::empty(n),
            dupl: StateSet::empty(n),
        }
    }

    /// Summary read off a transformation `q ↦ t[q]` by counting preimages.
    pub fn of_transformation(t: &[usize]) -> Self {
        let n = t.len();
        let mut hits = vec![0u8; n];
        for &p in t {
            hits[p] = hits[p].saturating_add(1);
        }
        WordSummary {
            excl: StateSet::from_states(n, (0..n).filter(|&q| hits[q] == 0)),
            dupl: StateSet::from_states(n, (0..n).filter(|&q| hits[q] >= 2)),
        }
    }

    pub fn defect(&self) -> usize {
        self.excl.len()
    }
}

/// Compressed preimage lists for one letter: the preimages of `q` are
/// `flat[offsets[q]..offsets[q + 1]]`.
#[derive(Debug, Clone)]
struct Preimages {
    offsets: Vec<usize>,
    flat: Vec<usize>,
}

impl Preimages {
    fn build(delta: &[usize]) -> Self {
        let n = delta.len();
        let mut offsets = vec![0usize; n + 1];
        for &p in delta {
            offsets[p + 1] += 1;
        }
        for q in 0..n {
            offsets[q + 1] += offsets[q];
        }
        let mut fill = offsets.clone();
        let mut flat = vec![0usize; n];
        for (q, &p) in delta.iter().enumerate() {
            flat[fill[p]] = q;
            fill[p] += 1;
        }
        Preimages { offsets, flat }
    }

    #[inline]
    fn of(&self, q: usize) -> &[usize] {
        &self.flat[self.offsets[q]..self.offsets[q + 1]]
    }
}

/// A complete deterministic automaton over `{a, b}` with states `0..n`.
///
/// No initial or final states: only the action of words on subsets matters.
#[derive(Debug, Clone)]
pub struct BinaryDfa {
    delta: [Vec<usize>; 2],
    pre: [Preimages; 2],
}

impl PartialEq for BinaryDfa {
    fn eq(&self, other: &Self) -> bool {
        self.delta == other.delta
    }
}

impl Eq for BinaryDfa {}

impl BinaryDfa {
    pub fn new(delta_a: Vec<usize>, delta_b: Vec<usize>) -> Result<Self> {
        let n = delta_a.len();
        if n == 0 {
            return Err(Error::InvalidDfa(
                "an automaton needs at least one state".into(),
            ));
        }
        if delta_b.len() != n {
            return Err(Error::InvalidDfa(format!(
                "rows have different lengths ({} and {})",
                n,
                delta_b.len()
            )));
        }
        for (name, row) in [("a", &delta_a), ("b", &delta_b)] {
            if let Some((q, &p)) = row.iter().enumerate().find(|(_, &p)| p >= n) {
                return Err(Error::InvalidDfa(format!(
                    "{q}·{name} = {p} is out of range for {n} states"
                )));
            }
        }
        let pre = [Preimages::build(&delta_a), Preimages::build(&delta_b)];
        Ok(BinaryDfa {
            delta: [delta_a, delta_b],
            pre,
        })
    }

    /// Automaton whose letter `b` is the cyclic shift `q ↦ q + 1 (mod n)`.
    pub fn with_cyclic_b(delta_a: Vec<usize>) -> Result<Self> {
        let n = delta_a.len();
        Self::new(delta_a, (0..n).map(|q| (q + 1) % n.max(1)).collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.delta[0].len()
    }

    #[inline]
    pub fn delta(&self, c: Letter) -> &[usize] {
        &self.delta[c.index()]
    }

    #[inline]
    pub fn step(&self, q: usize, c: Letter) -> usize {
        self.delta[c.index()][q]
    }

    #[inline]
    pub fn preimages(&self, c: Letter, q: usize) -> &[usize] {
        self.pre[c.index()].of(q)
    }

    /// `q·c^k`.
    pub fn run_power(&self, q: usize, c: Letter, k: usize) -> usize {
        (0..k).fold(q, |q, _| self.step(q, c))
    }

    pub fn run(&self, q: usize, w: &Word) -> usize {
        w.letters().iter().fold(q, |q, &c| self.step(q, c))
    }

    /// Number of states missing from `Q·c`.
    pub fn letter_defect(&self, c: Letter) -> usize {
        let pre = &self.pre[c.index()];
        (0..self.n()).filter(|&q| pre.of(q).is_empty()).count()
    }

    /// True if the letter permutes all states in a single cycle.
    pub fn is_cyclic_permutation(&self, c: Letter) -> bool {
        let delta = self.delta(c);
        if self.letter_defect(c) != 0 {
            return false;
        }
        let mut q = delta[0];
        let mut len = 1;
        while q != 0 {
            q = delta[q];
            len += 1;
        }
        len == self.n()
    }

    pub fn apply_letter(&self, start: &StateSet, c: Letter) -> StateSet {
        start.map(self.delta(c))
    }

    /// `start · w`.
    pub fn apply_word(&self, start: &StateSet, w: &Word) -> StateSet {
        let mut s = start.clone();
        for &c in w.letters() {
            s = self.apply_letter(&s, c);
        }
        s
    }

    /// `Q · w`.
    pub fn image(&self, w: &Word) -> StateSet {
        self.apply_word(&StateSet::full(self.n()), w)
    }

    /// The transformation `q ↦ q·w` as a table.
    pub fn transformation(&self, w: &Word) -> Vec<usize> {
        let mut t: Vec<usize> = (0..self.n()).collect();
        for &c in w.letters() {
            let d = self.delta(c);
            for x in t.iter_mut() {
                *x = d[*x];
            }
        }
        t
    }

    /// Summary of `w` via its composed transformation.
    pub fn summarize_word(&self, w: &Word) -> WordSummary {
        WordSummary::of_transformation(&self.transformation(w))
    }

    /// Summary of `w` folded letter by letter with [`Self::step_summary`].
    pub fn summarize_word_folded(&self, w: &Word) -> WordSummary {
        w.letters()
            .iter()
            .fold(WordSummary::identity(self.n()), |s, &c| {
                self.step_summary(&s, c)
            })
    }

    /// Summary of `uc` from the summary of `u` alone.
    pub fn step_summary(&self, s: &WordSummary, c: Letter) -> WordSummary {
        let n = self.n();
        let pre = &self.pre[c.index()];
        let mut excl = StateSet::empty(n);
        let mut dupl = StateSet::empty(n);
        for q in 0..n {
            let ps = pre.of(q);
            let mut live = 0;
            let mut hit_dupl = false;
            for &p in ps {
                if !s.excl.contains(p) {
                    live += 1;
                }
                hit_dupl |= s.dupl.contains(p);
            }
            if live == 0 {
                excl.insert(q);
            }
            if hit_dupl || live >= 2 {
                dupl.insert(q);
            }
        }
        WordSummary { excl, dupl }
    }
}
