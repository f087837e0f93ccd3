use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::DecisionAutomaton;
use crate::error::{Error, Result};
use crate::seq::Alphabet;

/// On-disk automaton format:
/// `{"alphabet": [...], "states": [...], "initial": q, "transitions": {q: {sym: q'}}, "terminal": {q: label}}`.
///
/// `decisions` is optional; when absent the decision alphabet is the input
/// alphabet if every terminal label is an input symbol, otherwise the sorted
/// set of terminal labels. Transitions of terminal states may be omitted.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decisions: Option<Vec<String>>,
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: BTreeMap<String, BTreeMap<String, String>>,
    pub terminal: BTreeMap<String, String>,
}

impl DecisionAutomaton {
    pub fn to_file(&self) -> AutomatonFile {
        let transitions = (0..self.num_states())
            .map(|q| {
                let row = self
                    .alphabet
                    .symbols()
                    .map(|s| (self.alphabet.name(s).to_string(), self.names[self.next(q, s)].clone()))
                    .collect();
                (self.names[q].clone(), row)
            })
            .collect();
        let terminal = self
            .terminal_states()
            .map(|q| (self.names[q].clone(), self.decisions.name(self.output[q].unwrap()).to_string()))
            .collect();
        AutomatonFile {
            kind: None,
            alphabet: self.alphabet.names().to_vec(),
            decisions: (!self.is_choice_automaton()).then(|| self.decisions.names().to_vec()),
            states: self.names.clone(),
            initial: self.names[self.initial].clone(),
            transitions,
            terminal,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("automaton serializes")
    }

    pub fn from_file(file: &AutomatonFile) -> Result<Self> {
        if let Some(kind) = &file.kind {
            if kind != "automaton" {
                return Err(Error::InvalidAutomaton(format!("unexpected kind `{kind}`")));
            }
        }
        let alphabet = Alphabet::new(file.alphabet.iter().cloned())?;
        let decisions = match &file.decisions {
            Some(d) => Alphabet::new(d.iter().cloned())?,
            None if file.terminal.values().all(|y| alphabet.contains_name(y)) => alphabet.clone(),
            None => {
                let labels: BTreeSet<&String> = file.terminal.values().collect();
                Alphabet::new(labels.into_iter().cloned())?
            }
        };
        let index = |name: &str| {
            file.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{name}`")))
        };
        for name in file.transitions.keys().chain(file.terminal.keys()) {
            index(name)?;
        }
        let initial = index(&file.initial)?;
        let mut output = vec![None; file.states.len()];
        for (q, y) in &file.terminal {
            output[index(q)?] = Some(decisions.symbol(y)?);
        }
        let mut transitions = Vec::with_capacity(file.states.len());
        for (q, name) in file.states.iter().enumerate() {
            let row = file.transitions.get(name);
            if let Some(row) = row {
                for sym in row.keys() {
                    alphabet.symbol(sym)?;
                }
            }
            let mut targets = Vec::with_capacity(alphabet.len());
            for s in alphabet.symbols() {
                let sym = alphabet.name(s);
                match row.and_then(|r| r.get(sym)) {
                    Some(t) => targets.push(index(t)?),
                    None if output[q].is_some() => targets.push(q),
                    None => {
                        return Err(Error::InvalidAutomaton(format!(
                            "state `{name}` has no transition on `{sym}`"
                        )))
                    }
                }
            }
            transitions.push(targets);
        }
        DecisionAutomaton::new(&alphabet, &decisions, file.states.clone(), initial, transitions, output)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AutomatonFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("automaton JSON: {e}")))?;
        Self::from_file(&file)
    }
}
