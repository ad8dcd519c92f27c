use std::fmt;

use thiserror::Error;

/// Structural problems with an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("automaton has no states")]
    NoStates,
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("letter `{0}` declared twice")]
    DuplicateLetter(String),
    #[error("state set sized for a different automaton")]
    SetSizeMismatch,
    #[error("state index {0} out of range")]
    StateOutOfRange(u32),
    #[error("letter index {0} out of range")]
    LetterOutOfRange(u32),
    #[error("duplicate transition `{0}`")]
    DuplicateTransition(String),
    #[error("root `{0}` is not among the allowed states")]
    RootNotAllowed(String),
}

/// A malformed or inconsistent text file. `line` is 1-based; `None` means
/// the problem concerns the file as a whole (a missing section, for instance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn at(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            reason: reason.into(),
        }
    }

    pub(crate) fn whole(reason: impl Into<String>) -> Self {
        ParseError {
            line: None,
            reason: reason.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

/// A brute-force or exhaustive search refused to run past its configured bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{what}: size {actual} exceeds guard {limit}")]
pub struct GuardExceeded {
    pub what: &'static str,
    pub limit: usize,
    pub actual: usize,
}
