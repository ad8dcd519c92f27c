//! Emptiness checking for zero and nonzero automata on infinite binary
//! trees, with certificates that can be re-checked independently.
//!
//! * [`trivial`] decides the almost-sure and nonzero conditions alone in
//!   polynomial time and produces positional runs.
//! * [`jumping`] decides full emptiness through the jumping game and
//!   produces winning witnesses for either player.
//! * [`translate`] reduces zero automata to nonzero automata.
//! * [`verify`] re-checks every kind of certificate.

pub mod automaton;
pub mod catalog;
pub mod certificate;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod jumping;
pub mod priority;
pub mod translate;
pub mod trivial;
pub mod verdict;
pub mod verify;

pub use automaton::{
    Automaton, LetterId, NonzeroAutomaton, RootedAutomaton, RunSemantics, StateId, StateSet,
    Transition, ZeroAutomaton,
};
pub use error::{GuardExceeded, ModelError, ParseError};
pub use format::{parse_automaton, serialize_automaton, serialize_nonzero};
pub use jumping::{decide_emptiness, Emptiness};
pub use verdict::Verdict;
