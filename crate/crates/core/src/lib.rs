//! Atoms of regular languages, atomic NFAs and NFA minimization.
//!
//! A [`Language`] is built from any NFA or DFA. It holds the minimal DFA
//! (whose states are the quotients), the atoms and the átomaton. From there:
//!
//! - [`is_atomic`] decides whether an NFA is atomic,
//! - [`AtomicEnumerator`] lists the trim atomic NFAs of a language,
//! - [`minimize_nfa`] finds a minimal NFA from grid covers of the
//!   quotient-atom matrix.

pub mod atomic;
pub mod atoms;
pub mod automaton;
pub mod dot;
pub mod error;
pub mod format;
pub mod kameda_weiner;
pub mod regex;

pub use atomic::{
    check_legality, enumerate_atomic_nfas, has_full_atomic_nfa, is_atomic, maximal_atomic_nfa,
    minimal_atomic_nfa_size, state_atom_decomposition, AtomicCandidate, AtomicEnumerator,
    Decomposition, EnumerationOptions, LegalityReport, Violation,
};
pub use atoms::{atom_name, label_name, AtomLabel, AtomSet, Atomaton, Language, QuotientDfa};
pub use automaton::{Alphabet, Dfa, Nfa, StateId, StateSet, SubsetDfa};
pub use dot::to_dot;
pub use error::{Error, Result};
pub use format::{parse_nfa, write_nfa};
pub use kameda_weiner::{
    maximal_grids, minimize_nfa, nfa_from_cover, Cover, CoverNfa, Grid, MinimizeOptions,
    QuotientAtomMatrix,
};
pub use regex::Regex;
