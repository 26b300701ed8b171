//! Fixed-width sets of states.

use std::fmt;

use smallvec::SmallVec;

const BITS: usize = 64;

/// A subset of `{0, …, n−1}` stored as a bit vector of width `n`.
///
/// Sets of different widths never compare equal. Up to 128 states fit inline
/// without a heap allocation, which keeps hashing cheap in the summary search.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    n: usize,
    words: SmallVec<[u64; 2]>,
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet {
            n,
            words: SmallVec::from_elem(0, n.div_ceil(BITS)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(n: usize, q: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(q);
        s
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(n: usize, states: I) -> Self {
        let mut s = Self::empty(n);
        for q in states {
            s.insert(q);
        }
        s
    }

    /// Builds a set from the low `n` bits of `mask` (`n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= BITS, "mask sets are limited to 64 states");
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The set as a bit mask; only defined for `n ≤ 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= BITS, "mask sets are limited to 64 states");
        self.words.first().copied().unwrap_or(0)
    }

    /// Width of the universe, not the cardinality.
    #[inline]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, q: usize) -> bool {
        q < self.n && self.words[q / BITS] >> (q % BITS) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, q: usize) -> bool {
        assert!(q < self.n, "state {q} out of range for {} states", self.n);
        let w = &mut self.words[q / BITS];
        let bit = 1u64 << (q % BITS);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, q: usize) -> bool {
        if q >= self.n {
            return false;
        }
        let w = &mut self.words[q / BITS];
        let bit = 1u64 << (q % BITS);
        let had = *w & bit != 0;
        *w &= !bit;
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Translation `q ↦ q + k (mod n)`.
    pub fn shift(&self, k: usize) -> Self {
        if self.n == 0 {
            return self.clone();
        }
        let k = k % self.n;
        if k == 0 {
            return self.clone();
        }
        Self::from_states(self.n, self.iter().map(|q| (q + k) % self.n))
    }

    /// Image of the set under a total map given as a table.
    pub fn map(&self, table: &[usize]) -> Self {
        debug_assert_eq!(table.len(), self.n);
        Self::from_states(self.n, self.iter().map(|q| table[q]))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        self.check_width(other);
        StateSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    #[inline]
    fn check_width(&self, other: &Self) {
        assert_eq!(self.n, other.n, "state sets over different universes");
    }

    fn trim(&mut self) {
        let rem = self.n % BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * BITS + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Sorted ascending, comma separated, in braces: `{4, 6, 10}`.
impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n)
    }
}
