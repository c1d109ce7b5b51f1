//! The query language: parsing, compilation to automata, and sessions.

mod ast;
mod compile;
mod parser;
mod session;

pub use ast::{Command, Formula, Query, RelOp, Term};
pub use parser::{parse_query, parse_script, Located};
pub use session::{Assignment, EvalResult, Outcome, Predicate, Session};
