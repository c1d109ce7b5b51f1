//! Decision procedure for first-order statements about automatic sequences.
//!
//! Formulas over the naturals with addition, comparisons, indexing into
//! automatic words and calls to stored predicates are compiled to automata
//! over a numeration system (base `k` msd or lsd, or Zeckendorf). A closed
//! formula compiles to an automaton that accepts everything or nothing.

pub mod automata;
pub mod casebook;
pub mod christol;
pub mod error;
pub mod limits;
pub mod logic;
pub mod numeration;
pub mod oracles;
pub mod regex;
pub mod relation;
pub mod words;

pub use automata::{Alphabet, BoolOp, Cardinality, Dfa, Dfao, Nfa, Order, Verdict};
pub use error::{Error, Result};
pub use limits::Limits;
pub use numeration::{NumerationSystem, Representation};
pub use words::{Morphism, Word, WordRegistry};
pub use logic::{Outcome, Predicate, Session};
