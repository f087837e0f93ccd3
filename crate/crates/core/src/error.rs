use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid relabeling: {0}")]
    InvalidRelabeling(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("invalid turing machine: {0}")]
    InvalidMachine(String),
    /// The automaton never reaches a terminal state on this input.
    #[error("run diverges: state/phase cycle through {cycle:?} on {sequence}")]
    Diverges { sequence: String, cycle: Vec<String> },
    /// The automaton is not a stopping rule; analyses refuse to run.
    #[error("not a stopping rule: non-terminal cycle {cycle:?} reachable via `{reaching}`")]
    NotStopping { cycle: Vec<String>, reaching: String },
    #[error("turing machine exhausted its budget after {steps} steps")]
    BudgetExhausted { steps: usize },
    #[error("horizon {horizon} violated: {detail}")]
    HorizonViolation { horizon: usize, detail: String },
    #[error("not a choice rule: {0}")]
    NotAChoiceRule(String),
    #[error("rule is not a CSR: recovered spec disagrees on {sequence} (rule: {expected}, recovered: {found})")]
    NotCsr { sequence: String, expected: String, found: String },
    #[error("rule is not an OSR: {0}")]
    NotOsr(String),
    #[error("too many decision labels for analysis ({0}, limit 64)")]
    TooManyDecisions(usize),
}
