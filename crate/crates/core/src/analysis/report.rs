use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use super::RuleHandle;
use crate::error::{Error, Result};
use crate::heuristics::config_encode;
use crate::seq::{Alphabet, Relabeling, Segment, SeqSpec, Symbol};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Monotonicity,
    InformationalDominance,
    Replacement,
    SequentialAlpha,
    #[serde(rename = "s-nbc")]
    Snbc,
    Neutrality,
    Acyclicity,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Monotonicity,
        Axiom::InformationalDominance,
        Axiom::Replacement,
        Axiom::SequentialAlpha,
        Axiom::Snbc,
        Axiom::Neutrality,
        Axiom::Acyclicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Monotonicity => "monotonicity",
            Axiom::InformationalDominance => "informational-dominance",
            Axiom::Replacement => "replacement",
            Axiom::SequentialAlpha => "sequential-alpha",
            Axiom::Snbc => "s-nbc",
            Axiom::Neutrality => "neutrality",
            Axiom::Acyclicity => "acyclicity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Axiom groups characterizing each rule family.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    Csr,
    Osr,
    Config,
    All,
}

impl Suite {
    pub fn axioms(self) -> &'static [Axiom] {
        match self {
            Suite::Csr => &[Axiom::Monotonicity, Axiom::InformationalDominance],
            Suite::Osr => &[Axiom::Replacement, Axiom::SequentialAlpha, Axiom::Snbc],
            Suite::Config => &[Axiom::Neutrality, Axiom::Acyclicity],
            Suite::All => &Axiom::ALL,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csr" => Ok(Suite::Csr),
            "osr" => Ok(Suite::Osr),
            "config" => Ok(Suite::Config),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite `{s}` (csr, osr, config, all)"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transformation {
    /// Swap positions `k` and `k+1`, moving the chosen symbol forward.
    Shift(usize),
    /// Drop position `k`, which does not hold the chosen symbol.
    Deletion(usize),
}

impl Transformation {
    pub fn apply(self, seq: &SeqSpec) -> SeqSpec {
        match self {
            Transformation::Shift(k) => seq.favorable_shift(k),
            Transformation::Deletion(k) => seq.favorable_deletion(k),
        }
    }

    fn is_favorable(self, seq: &SeqSpec, x: Symbol) -> bool {
        match self {
            Transformation::Shift(k) => k >= 1 && seq.at(k + 1) == x,
            Transformation::Deletion(k) => k >= 1 && seq.at(k) != x,
        }
    }
}

/// One edge of the revealed configuration relation: on `sequence` the rule
/// chose `chosen` (configuration `from`) over `other` (configuration `to`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RevealedEdge {
    pub from: String,
    pub to: String,
    pub sequence: SeqSpec,
    pub chosen: String,
    pub other: String,
}

/// Counterexample to an axiom. Symbols are stored by name so witnesses
/// serialize and replay without the analysis state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Witness {
    Monotonicity {
        sequence: SeqSpec,
        decision: String,
        transformation: Transformation,
        transformed: SeqSpec,
        transformed_decision: String,
    },
    InformationalDominance {
        minimal: Segment,
        decision: String,
        k: usize,
        dominated: Segment,
        dominated_decision: String,
        sequence: SeqSpec,
        sequence_decision: String,
    },
    Replacement {
        minimal: Segment,
        decision: String,
        position: usize,
        replacement: String,
        replaced: Segment,
        first: SeqSpec,
        first_decision: String,
        second: SeqSpec,
        second_decision: String,
    },
    SequentialAlpha {
        smaller: Segment,
        smaller_decision: String,
        larger: Segment,
        larger_decision: String,
    },
    #[serde(rename = "s-nbc")]
    Snbc {
        first: Segment,
        first_decision: String,
        second: Segment,
        second_decision: String,
        third: Segment,
        third_decision: String,
    },
    Neutrality {
        sequence: SeqSpec,
        decision: String,
        /// Image of each alphabet symbol, in alphabet order.
        relabeling: Vec<String>,
        relabeled: SeqSpec,
        relabeled_decision: String,
    },
    Acyclicity {
        cycle: Vec<RevealedEdge>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Box<Witness>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    /// Instances of the axiom's quantifier examined, in enumeration order up to
    /// and including the first counterexample.
    pub checked: usize,
    pub horizon: usize,
    /// Acyclicity only: a best-first linear extension of the revealed relation.
    pub extension: Option<Vec<String>>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = serde_json::json!({
            "axiom": self.axiom,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "witness": self.witness(),
            "checked": self.checked,
            "horizon": self.horizon,
        });
        if let Some(ext) = &self.extension {
            v["extension"] = serde_json::json!(ext);
        }
        v
    }
}

/// Decision on every tail of `seg` from the tail basis at `horizon`, if they agree.
fn sufficient(rule: &RuleHandle, seg: &Segment, horizon: usize) -> Result<Option<Symbol>> {
    let rest = horizon.saturating_sub(seg.len());
    let mut decision = None;
    for tail in crate::seq::witness_family(seg.alphabet(), rest) {
        let y = rule.evaluate(&seg.concat(&tail)?)?;
        match decision {
            None => decision = Some(y),
            Some(d) if d != y => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(decision)
}

fn minimal_sufficient(rule: &RuleHandle, seg: &Segment, horizon: usize) -> Result<Option<Symbol>> {
    if seg.is_empty() {
        return Ok(None);
    }
    for k in 1..seg.len() {
        if sufficient(rule, &seg.prefix(k), horizon)?.is_some() {
            return Ok(None);
        }
    }
    sufficient(rule, seg, horizon)
}

impl Witness {
    /// Re-evaluates every recorded sequence through the rule's own evaluator
    /// (no analysis tables) and confirms the violation. Sufficiency claims are
    /// re-checked over the tail basis at `horizon`.
    pub fn replay(&self, rule: &RuleHandle, horizon: usize) -> Result<bool> {
        let x = rule.alphabet();
        let y = rule.decisions();
        let eval = |s: &SeqSpec| rule.evaluate(s);
        let is = |d: Option<Symbol>, name: &str| -> Result<bool> { Ok(d == Some(y.symbol(name)?)) };
        match self {
            Witness::Monotonicity { sequence, decision, transformation, transformed, transformed_decision } => {
                let d = x.symbol(decision)?;
                Ok(eval(sequence)? == d
                    && transformation.is_favorable(sequence, d)
                    && transformation.apply(sequence) == *transformed
                    && eval(transformed)? == y.symbol(transformed_decision)?
                    && transformed_decision != decision)
            }
            Witness::InformationalDominance {
                minimal,
                decision,
                k,
                dominated,
                dominated_decision,
                sequence,
                sequence_decision,
            } => {
                let head = minimal.prefix(*k).appended(dominated)?;
                Ok(is(minimal_sufficient(rule, minimal, horizon)?, decision)?
                    && is(sufficient(rule, dominated, horizon)?, dominated_decision)?
                    && !dominated.contains(x.symbol(decision)?)
                    && *k < minimal.len()
                    && sequence.prefix_of(head.len()) == head
                    && eval(sequence)? == y.symbol(sequence_decision)?
                    && sequence_decision == decision)
            }
            Witness::Replacement {
                minimal,
                decision,
                position,
                replacement,
                replaced,
                first,
                first_decision,
                second,
                second_decision,
            } => Ok(is(minimal_sufficient(rule, minimal, horizon)?, decision)?
                && minimal.with_replaced(*position, x.symbol(replacement)?) == *replaced
                && first.prefix_of(replaced.len()) == *replaced
                && second.prefix_of(replaced.len()) == *replaced
                && eval(first)? == y.symbol(first_decision)?
                && eval(second)? == y.symbol(second_decision)?
                && first_decision != second_decision),
            Witness::SequentialAlpha { smaller, smaller_decision, larger, larger_decision } => {
                let small_set = smaller.symbol_set();
                Ok(is(minimal_sufficient(rule, smaller, horizon)?, smaller_decision)?
                    && is(minimal_sufficient(rule, larger, horizon)?, larger_decision)?
                    && small_set.is_subset(&larger.symbol_set())
                    && small_set.contains(&x.symbol(larger_decision)?)
                    && smaller_decision != larger_decision)
            }
            Witness::Snbc { first, first_decision, second, second_decision, third, third_decision } => {
                let sets = [first.symbol_set(), second.symbol_set(), third.symbol_set()];
                let names = |s: &BTreeSet<Symbol>| s.iter().map(|&v| x.name(v).to_string()).collect::<BTreeSet<_>>();
                let (fx, sy, tz) = (first_decision, second_decision, third_decision);
                let expect = |a: &str, b: &str| BTreeSet::from([a.to_string(), b.to_string()]);
                Ok(is(minimal_sufficient(rule, first, horizon)?, fx)?
                    && is(minimal_sufficient(rule, second, horizon)?, sy)?
                    && is(minimal_sufficient(rule, third, horizon)?, tz)?
                    && fx != sy
                    && sy != tz
                    && fx != tz
                    && names(&sets[0]) == expect(fx, sy)
                    && names(&sets[1]) == expect(sy, tz)
                    && names(&sets[2]) == expect(fx, tz))
            }
            Witness::Neutrality { sequence, decision, relabeling, relabeled, relabeled_decision } => {
                let sigma = parse_relabeling(x, relabeling)?;
                let d = eval(sequence)?;
                let e = eval(relabeled)?;
                Ok(d == x.symbol(decision)?
                    && sequence.relabel(&sigma)? == *relabeled
                    && e == x.symbol(relabeled_decision)?
                    && e != sigma.apply(d))
            }
            Witness::Acyclicity { cycle } => {
                if cycle.is_empty() {
                    return Ok(false);
                }
                for (i, edge) in cycle.iter().enumerate() {
                    let window = edge.from.len();
                    let chosen = x.symbol(&edge.chosen)?;
                    let other = x.symbol(&edge.other)?;
                    let ok = eval(&edge.sequence)? == chosen
                        && chosen != other
                        && config_encode(&edge.sequence, chosen, window).to_string() == edge.from
                        && config_encode(&edge.sequence, other, window).to_string() == edge.to
                        && edge.to == cycle[(i + 1) % cycle.len()].from;
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

pub(crate) fn relabeling_names(alphabet: &Alphabet, sigma: &Relabeling) -> Vec<String> {
    alphabet.symbols().map(|s| alphabet.name(sigma.apply(s)).to_string()).collect()
}

fn parse_relabeling(alphabet: &Alphabet, names: &[String]) -> Result<Relabeling> {
    Relabeling::new(names.iter().map(|n| alphabet.symbol(n)).collect::<Result<_>>()?)
}
