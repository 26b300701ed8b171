//! The Rystsov graph of a standardized automaton.
//!
//! Edges of the graph are pairs `(excl(w), dupl(w))` over defect-1 words `w`.
//! For a standardized automaton the edge set is invariant under `q ↦ q + 1`,
//! so `(q, p)` is an edge exactly when `p − q` lies in the difference set
//! `D_1`, and the graph is the circulant digraph `Cay(Z_n, D_1)`. Its strongly
//! connected components are the cosets of `H_1 = ⟨D_1⟩`.
//!
//! `D_1` is the orbit of `dupl(a)` under the two maps `q ↦ q·a` and
//! `q ↦ (q + r)·a`, and every element `d` is realized by a word `a·v` with
//! `v ∈ {a, b^r a}*` whose summary is `({0}, {d})`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::arith::subgroup_generator;
use crate::bitset::StateSet;
use crate::dfa::{Letter, Word};
use crate::error::{Error, Result};
use crate::standardize::StandardizedDfa;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    A,
    ShiftA,
}

const UNSEEN: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct RystsovAnalysis {
    n: usize,
    r: usize,
    pub d1: StateSet,
    /// `H_1 = ⟨h1_gen⟩`
    pub h1_gen: usize,
    pub strongly_connected: bool,
    pub scc_count: usize,
    parent: Vec<usize>,
    via: Vec<Step>,
}

pub fn difference_set(sdfa: &StandardizedDfa) -> RystsovAnalysis {
    let n = sdfa.n();
    let r = sdfa.r();
    let root = sdfa.dupl_a();
    let mut d1 = StateSet::empty(n);
    let mut parent = vec![UNSEEN; n];
    let mut via = vec![Step::A; n];
    let mut queue = VecDeque::new();
    d1.insert(root);
    parent[root] = root;
    queue.push_back(root);
    while let Some(q) = queue.pop_front() {
        for (step, next) in [(Step::A, sdfa.a(q)), (Step::ShiftA, sdfa.a((q + r) % n))] {
            if d1.insert(next) {
                parent[next] = q;
                via[next] = step;
                queue.push_back(next);
            }
        }
    }
    // a permutes the nonzero states and dupl(a) ≠ 0
    assert!(!d1.contains(0), "0 entered the difference set");
    let h1_gen = subgroup_generator(n, d1.iter());
    RystsovAnalysis {
        n,
        r,
        d1,
        h1_gen,
        strongly_connected: h1_gen == 1,
        scc_count: h1_gen,
        parent,
        via,
    }
}

impl RystsovAnalysis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `D_1 ∪ {0}`.
    pub fn d1_zero(&self) -> StateSet {
        let mut s = self.d1.clone();
        s.insert(0);
        s
    }

    /// A word `w` with `excl(w) = {0}` and `dupl(w) = {d}`.
    pub fn witness(&self, d: usize) -> Option<Word> {
        if !self.d1.contains(d) {
            return None;
        }
        let mut steps = Vec::new();
        let mut q = d;
        while self.parent[q] != q {
            steps.push(self.via[q]);
            q = self.parent[q];
        }
        let mut w = Word::from_letters(vec![Letter::A]);
        for step in steps.into_iter().rev() {
            if step == Step::ShiftA {
                w.push_power(Letter::B, self.r);
            }
            w.push(Letter::A);
        }
        Some(w)
    }

    pub fn d1_witnesses(&self) -> BTreeMap<usize, Word> {
        self.d1
            .iter()
            .map(|d| (d, self.witness(d).unwrap()))
            .collect()
    }

    /// All `n·|D_1|` edges `(q, q + d)`.
    pub fn gamma1_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|q| self.d1.iter().map(move |d| (q, (q + d) % n)))
            .collect()
    }

    pub fn is_edge(&self, q: usize, p: usize) -> bool {
        self.d1.contains((p + self.n - q) % self.n)
    }

    /// Vertex sets of the strongly connected components: the cosets
    /// `t + H_1` for `t < h1_gen`.
    pub fn sccs(&self) -> Vec<StateSet> {
        let g = self.h1_gen;
        (0..g)
            .map(|t| StateSet::from_states(self.n, (t..self.n).step_by(g)))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gamma1 {\n");
        for (i, scc) in self.sccs().iter().enumerate() {
            writeln!(out, "  subgraph cluster_{i} {{").unwrap();
            writeln!(out, "    label=\"{i} + <{}>\";", self.h1_gen).unwrap();
            for q in scc {
                writeln!(out, "    {q};").unwrap();
            }
            out.push_str("  }\n");
        }
        for (q, p) in self.gamma1_edges() {
            writeln!(out, "  {q} -> {p};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn export_dot(analysis: &RystsovAnalysis, path: &Path) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(Error::InvalidArgument("empty output path".into()));
    }
    std::fs::write(path, analysis.to_dot())?;
    Ok(())
}

/// `D_1 ∪ {0}` is a union of cosets of `⟨r⟩`, and `⟨r⟩ ⊆ D_1 ∪ {0} ⊆ H_1`.
pub fn coset_structure_check(sdfa: &StandardizedDfa, analysis: &RystsovAnalysis) -> bool {
    let n = sdfa.n();
    let r = sdfa.r();
    let d10 = analysis.d1_zero();
    let closed_under_r = d10.iter().all(|x| d10.contains((x + r) % n));
    let mut x = 0;
    let mut r_subgroup_inside = true;
    loop {
        r_subgroup_inside &= d10.contains(x);
        x = (x + r) % n;
        if x == 0 {
            break;
        }
    }
    let inside_h1 = d10.iter().all(|x| x % analysis.h1_gen == 0);
    closed_under_r && r_subgroup_inside && inside_h1
}
