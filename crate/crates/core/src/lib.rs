//! Complete reachability of binary deterministic finite automata.
//!
//! An automaton is *completely reachable* when every nonempty subset of its
//! states is the image `Q·w` of the whole state set under some word `w`. For
//! two-letter automata this reduces to arithmetic on the cyclic group `Z_n`:
//! after [standardization](standardize), the automaton is completely
//! reachable exactly when no proper subgroup of `Z_n` is mapped into itself by
//! the defect-1 letter.
//!
//! Besides the [decider](decide) the crate computes the supporting structures
//! (the [difference set and Rystsov graph](rystsov), the
//! [subgroup chain](chain) with its witness words) and a brute-force
//! [oracle] used to cross-check everything on small automata.
//!
//! ```
//! use crareach::{corpus, decide};
//!
//! let e12 = corpus::preset("e12prime").unwrap();
//! assert!(decide(&e12.dfa).completely_reachable);
//! ```

pub mod arith;
pub mod bdf;
pub mod bitset;
pub mod chain;
pub mod corpus;
pub mod decider;
pub mod dfa;
pub mod error;
pub mod oracle;
pub mod rystsov;
pub mod standardize;
pub mod sweep;

pub use bdf::{parse_dfa, serialize_dfa};
pub use bitset::StateSet;
pub use chain::{
    compute_chain, compute_level, synthesize_witness_constructive, ChainConfig, ChainLevel,
    ChainOutcome, ChainResult,
};
pub use decider::{decide, decide_with, subgroup_a_invariant, DecideOptions, Reason, Verdict};
pub use dfa::{BinaryDfa, Letter, Word, WordSummary};
pub use error::{BdfError, Error, Result};
pub use rystsov::{coset_structure_check, difference_set, export_dot, RystsovAnalysis};
pub use standardize::{classify, standardize, Classification, Shape, StandardizedDfa};
