use std::fmt;
use std::fs;
use std::path::Path;

use seqdec::analysis::{Analyzer, RuleHandle};
use seqdec::automaton::DecisionAutomaton;
use seqdec::heuristics::RuleSpec;
use seqdec::machines::{synthesize_automaton, TwoTapeTm};
use seqdec::seq::Alphabet;
use seqdec::Error;
use serde_json::Value;

/// Exit codes: 1 axiom failure or identification mismatch, 2 input error,
/// 3 divergence, budget, horizon or stopping assumption.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotCsr { .. } | Error::NotOsr(_) => 1,
            Error::Diverges { .. }
            | Error::BudgetExhausted { .. }
            | Error::HorizonViolation { .. }
            | Error::NotStopping { .. } => 3,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub enum Loaded {
    Spec(RuleSpec),
    Automaton(DecisionAutomaton),
    Tm(TwoTapeTm),
}

/// Resource limits for machine-backed rules.
#[derive(Copy, Clone, Debug)]
pub struct Limits {
    pub horizon: Option<usize>,
    pub budget: Option<usize>,
}

pub const DEFAULT_BUDGET: usize = 100_000;

impl Loaded {
    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let kind = value.get("kind").and_then(Value::as_str).map(str::to_string);
        let loaded = match kind.as_deref() {
            Some("csr" | "osr" | "config") => Loaded::Spec(RuleSpec::from_value(value)?),
            Some("automaton") => Loaded::Automaton(DecisionAutomaton::from_json(&text)?),
            Some("tm") => Loaded::Tm(TwoTapeTm::from_json(&text)?),
            Some(other) => return Err(CliError::input(format!("{}: unknown kind `{other}`", path.display()))),
            None if value.get("input_alphabet").is_some() => Loaded::Tm(TwoTapeTm::from_json(&text)?),
            None if value.get("transitions").is_some() => Loaded::Automaton(DecisionAutomaton::from_json(&text)?),
            None => return Err(CliError::input(format!("{}: cannot tell the rule kind", path.display()))),
        };
        Ok(loaded)
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Loaded::Spec(s) => s.alphabet(),
            Loaded::Automaton(a) => a.alphabet(),
            Loaded::Tm(t) => t.input_alphabet(),
        }
    }

    /// Specs compile to their automaton. Machines go through the uniform
    /// bound search within `--horizon` first, then a segment tree is built
    /// from their decisions on every prefix of that bound's length.
    pub fn automaton(&self, limits: Limits) -> CliResult<DecisionAutomaton> {
        match self {
            Loaded::Spec(s) => Ok(s.compile()),
            Loaded::Automaton(a) => Ok(a.clone()),
            Loaded::Tm(t) => {
                let bound = Analyzer::new(self.handle(limits)?)?.uniform_bound();
                Ok(synthesize_automaton(t, bound, limits.budget.unwrap_or(DEFAULT_BUDGET))?)
            }
        }
    }

    pub fn handle(&self, limits: Limits) -> CliResult<RuleHandle> {
        match self {
            Loaded::Spec(s) => Ok(RuleHandle::Automaton(s.compile())),
            Loaded::Automaton(a) => Ok(RuleHandle::Automaton(a.clone())),
            Loaded::Tm(t) => {
                let horizon = require_horizon(limits)?;
                let budget = limits
                    .budget
                    .ok_or_else(|| CliError::input("machine rules need --budget"))?;
                Ok(RuleHandle::from_tm(t, horizon, budget)?)
            }
        }
    }
}

fn require_horizon(limits: Limits) -> CliResult<usize> {
    limits.horizon.ok_or_else(|| CliError::input("machine rules need --horizon"))
}

pub fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}
