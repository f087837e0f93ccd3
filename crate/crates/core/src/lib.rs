//! Decision rules over infinite sequences of alternatives.
//!
//! The crate covers eventually periodic sequences and their transformations
//! ([`seq`]), finite decision automata ([`automaton`]), the satisficing and
//! configuration-dependent rule families ([`heuristics`]), a two-tape Turing
//! machine interpreter ([`machines`]), and rule-agnostic stopping analysis,
//! axiom checking and parameter identification ([`analysis`]).

pub mod analysis;
pub mod automaton;
pub mod error;
pub mod heuristics;
pub mod machines;
pub mod seq;

pub use error::{Error, Result};
