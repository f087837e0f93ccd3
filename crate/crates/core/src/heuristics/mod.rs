//! Parameterized rule families with direct evaluators and compilers to
//! decision automata.

mod config;
mod csr;
mod osr;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use config::{config_encode, BitWord, BitstreamCollection, Comparator, ConfigRuleSpec, MAX_TABLE_WINDOW, MAX_WINDOW};
pub use csr::{CsrChoice, CsrSpec};
pub use osr::OsrSpec;

use crate::automaton::DecisionAutomaton;
use crate::error::{Error, Result};
use crate::seq::{Alphabet, SeqSpec, Symbol};

/// Any of the parameterized rule families.
#[derive(Clone, Debug, PartialEq)]
pub enum RuleSpec {
    Csr(CsrSpec),
    Osr(OsrSpec),
    Config(ConfigRuleSpec),
}

impl RuleSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            RuleSpec::Csr(_) => "csr",
            RuleSpec::Osr(_) => "osr",
            RuleSpec::Config(_) => "config",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            RuleSpec::Csr(s) => s.alphabet(),
            RuleSpec::Osr(s) => s.alphabet(),
            RuleSpec::Config(s) => s.alphabet(),
        }
    }

    pub fn evaluate(&self, seq: &SeqSpec) -> Result<Symbol> {
        match self {
            RuleSpec::Csr(s) => s.evaluate(seq).map(|c| c.choice),
            RuleSpec::Osr(s) => s.evaluate(seq),
            RuleSpec::Config(s) => s.evaluate(seq),
        }
    }

    pub fn compile(&self) -> DecisionAutomaton {
        match self {
            RuleSpec::Csr(s) => s.compile(),
            RuleSpec::Osr(s) => s.compile(),
            RuleSpec::Config(s) => s.compile(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("rule JSON: {e}")))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        let kind = value.get("kind").and_then(Value::as_str).unwrap_or_default().to_string();
        let parse_err = |e: serde_json::Error| Error::Parse(format!("{kind} rule: {e}"));
        match kind.as_str() {
            "csr" => {
                let f: CsrFile = serde_json::from_value(value).map_err(parse_err)?;
                let alphabet = Alphabet::new(f.alphabet.iter().cloned())?;
                for name in f.weights.keys() {
                    alphabet.symbol(name)?;
                }
                let weights = alphabet
                    .symbols()
                    .map(|x| {
                        let name = alphabet.name(x);
                        f.weights
                            .get(name)
                            .ok_or_else(|| Error::InvalidRule(format!("no weight for `{name}`")))
                            .and_then(RationalText::to_rational)
                    })
                    .collect::<Result<_>>()?;
                Ok(RuleSpec::Csr(CsrSpec::new(&alphabet, weights, f.threshold.to_rational()?)?))
            }
            "osr" => {
                let f: OsrFile = serde_json::from_value(value).map_err(parse_err)?;
                let alphabet = Alphabet::new(f.alphabet.iter().cloned())?;
                let order = f.order.iter().map(|n| alphabet.symbol(n)).collect::<Result<_>>()?;
                let threshold = alphabet.symbol(&f.threshold_alt)?;
                Ok(RuleSpec::Osr(OsrSpec::new(&alphabet, order, threshold, f.span)?))
            }
            "config" => {
                let f: ConfigFile = serde_json::from_value(value).map_err(parse_err)?;
                let alphabet = Alphabet::new(f.alphabet.iter().cloned())?;
                let spec = match f.comparator {
                    ComparatorFile::Table { table } => ConfigRuleSpec::from_table(&alphabet, f.window, &table)?,
                    ComparatorFile::Builtin { builtin } => {
                        ConfigRuleSpec::new(&alphabet, f.window, Comparator::builtin(&builtin)?)?
                    }
                };
                Ok(RuleSpec::Config(spec))
            }
            "" => Err(Error::Parse("rule JSON lacks a `kind`".into())),
            other => Err(Error::Parse(format!("unknown rule kind `{other}`"))),
        }
    }

    pub fn to_value(&self) -> Value {
        let alphabet = self.alphabet().names().to_vec();
        let value = match self {
            RuleSpec::Csr(s) => serde_json::to_value(CsrFile {
                kind: "csr".into(),
                weights: s
                    .alphabet()
                    .symbols()
                    .map(|x| (s.alphabet().name(x).to_string(), RationalText::Text(s.weight(x).to_string())))
                    .collect(),
                threshold: RationalText::Text(s.threshold().to_string()),
                alphabet,
            }),
            RuleSpec::Osr(s) => serde_json::to_value(OsrFile {
                kind: "osr".into(),
                order: s.order().iter().map(|&x| s.alphabet().name(x).to_string()).collect(),
                threshold_alt: s.alphabet().name(s.threshold_alt()).to_string(),
                span: s.span(),
                alphabet,
            }),
            RuleSpec::Config(s) => serde_json::to_value(ConfigFile {
                kind: "config".into(),
                window: s.window(),
                comparator: match s.comparator().builtin_name() {
                    Some(name) => ComparatorFile::Builtin { builtin: name.into() },
                    None => ComparatorFile::Table {
                        table: BitWord::all(s.window())
                            .map(|w| (w.to_string(), s.rank(w) as i64))
                            .collect(),
                    },
                },
                alphabet,
            }),
        };
        value.expect("rule serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("rule serializes")
    }
}

/// Rationals are written `"p/q"` or `"p"`; bare JSON integers are accepted too.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RationalText {
    Text(String),
    Integer(i64),
}

impl RationalText {
    fn to_rational(&self) -> Result<BigRational> {
        match self {
            RationalText::Text(t) => t
                .trim()
                .parse::<BigRational>()
                .map_err(|e| Error::Parse(format!("rational `{t}`: {e}"))),
            RationalText::Integer(n) => Ok(BigRational::from_integer((*n).into())),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CsrFile {
    kind: String,
    alphabet: Vec<String>,
    weights: BTreeMap<String, RationalText>,
    threshold: RationalText,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OsrFile {
    kind: String,
    alphabet: Vec<String>,
    order: Vec<String>,
    threshold_alt: String,
    span: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    kind: String,
    alphabet: Vec<String>,
    window: usize,
    comparator: ComparatorFile,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum ComparatorFile {
    Table { table: BTreeMap<String, i64> },
    Builtin { builtin: String },
}
