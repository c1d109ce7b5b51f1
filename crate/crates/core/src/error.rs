use std::fmt;

/// Errors produced anywhere in the engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid track index {track} for an automaton with {tracks} tracks")]
    InvalidTrack { track: usize, tracks: usize },
    #[error("state budget of {limit} states exceeded")]
    StateLimit { limit: usize },
    #[error("timeout exceeded")]
    Timeout,
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("digit {digit} out of range for track {track}")]
    DigitOutOfRange { digit: u32, track: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("operator not applicable to two variables (`{op}` at position {pos})")]
    TwoVariableOperator { op: char, pos: usize },
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{0}` is already defined")]
    Redefinition(String),
    #[error("numeration mismatch for `{name}`: context is {context}, but it is defined over {found}")]
    SystemMismatch {
        name: String,
        context: String,
        found: String,
    },
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("no consistent automaton: {0}")]
    GuessFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl fmt::Display) -> Self {
        Error::Syntax {
            pos,
            msg: msg.to_string(),
        }
    }

    pub(crate) fn format(line: usize, msg: impl fmt::Display) -> Self {
        Error::Format {
            line,
            msg: msg.to_string(),
        }
    }
}
