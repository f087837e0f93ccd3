//! Two-tape Turing machines deciding over sequences, and the embedding of
//! stopping automata into them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Decidedness, DecisionAutomaton};
use crate::error::{Error, Result};
use crate::seq::{Alphabet, SeqSpec, Symbol};

/// Start-of-tape marker; occupies cell 0 of both tapes and nothing else.
pub const START: &str = "◁";
pub const BLANK: &str = "_";
/// Wildcard accepted in JSON transitions for the read symbols and the written symbol.
pub const ANY: &str = "*";

const START_ID: usize = 0;
const BLANK_ID: usize = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    fn apply(self, pos: usize) -> usize {
        match self {
            Move::L => pos - 1,
            Move::S => pos,
            Move::R => pos + 1,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `δ(q, input, output) = (next, write, input move, output move)`; the
/// written symbol goes to the output tape.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub next: usize,
    pub write: usize,
    pub input_move: Move,
    pub output_move: Move,
}

#[derive(Clone, Debug)]
pub struct TwoTapeTm {
    input_alphabet: Alphabet,
    decisions: Alphabet,
    /// `◁`, `_`, the input alphabet, decision labels not already present, extras.
    tape: Vec<String>,
    states: Vec<String>,
    initial: usize,
    terminal: Vec<bool>,
    /// Indexed by `(state * |Σ| + input) * |Σ| + output`; `None` exactly on terminal states.
    delta: Vec<Option<Action>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TmRun {
    pub decision: Symbol,
    pub steps: usize,
    pub halted: bool,
}

/// One transition by name, as stored in JSON:
/// `[state, input, output, next, write, input_move, output_move]`.
pub type NamedTransition = (String, String, String, String, String, Move, Move);

impl TwoTapeTm {
    /// Builds a machine from named transitions. `*` as a read symbol matches
    /// any symbol not covered by a more specific entry; `*` as the written
    /// symbol rewrites the symbol read from the output tape.
    pub fn new(
        input_alphabet: &Alphabet,
        decisions: &Alphabet,
        extra_tape: &[String],
        states: Vec<String>,
        initial: &str,
        terminal: &[String],
        transitions: &[NamedTransition],
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidMachine(m));
        let mut tape = vec![START.to_string(), BLANK.to_string()];
        for name in input_alphabet.names().iter().chain(decisions.names()).chain(extra_tape) {
            if name == ANY {
                return bad(format!("`{ANY}` is reserved"));
            }
            if !tape.contains(name) {
                tape.push(name.clone());
            } else if tape[..2].contains(name) && !extra_tape.contains(name) {
                return bad(format!("`{name}` is reserved for the tape"));
            }
        }
        let t = tape.len();
        let tape_id = |name: &str| {
            tape.iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::InvalidMachine(format!("unknown tape symbol `{name}`")))
        };
        let mut unique = HashSet::new();
        if let Some(dup) = states.iter().find(|s| !unique.insert(*s)) {
            return bad(format!("duplicate state `{dup}`"));
        }
        let state_id = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::InvalidMachine(format!("unknown state `{name}`")))
        };
        let initial = state_id(initial)?;
        let mut is_terminal = vec![false; states.len()];
        for q in terminal {
            is_terminal[state_id(q)?] = true;
        }
        if is_terminal[initial] {
            return bad("initial state must not be terminal".into());
        }

        // Specificity: exact entries beat one wildcard, which beats two.
        let mut delta: Vec<Option<(u8, Action)>> = vec![None; states.len() * t * t];
        for (q, i, o, next, write, mi, mo) in transitions {
            let q = state_id(q)?;
            if is_terminal[q] {
                return bad(format!("terminal state `{}` has outgoing transitions", states[q]));
            }
            let reads = |sym: &str| -> Result<Vec<usize>> {
                if sym == ANY {
                    Ok((0..t).collect())
                } else {
                    Ok(vec![tape_id(sym)?])
                }
            };
            let spec = u8::from(i == ANY) + u8::from(o == ANY);
            let next = state_id(next)?;
            let write_id = if write == ANY { None } else { Some(tape_id(write)?) };
            for a in reads(i)? {
                for b in reads(o)? {
                    let action = Action {
                        next,
                        write: write_id.unwrap_or(b),
                        input_move: *mi,
                        output_move: *mo,
                    };
                    let slot = &mut delta[(q * t + a) * t + b];
                    match slot {
                        Some((s, existing)) if *s == spec && *existing != action => {
                            return bad(format!(
                                "conflicting transitions for ({}, {}, {})",
                                states[q], tape[a], tape[b]
                            ))
                        }
                        Some((s, _)) if *s <= spec => {}
                        _ => *slot = Some((spec, action)),
                    }
                }
            }
        }
        let delta: Vec<Option<Action>> = delta.into_iter().map(|e| e.map(|(_, a)| a)).collect();
        for q in (0..states.len()).filter(|&q| !is_terminal[q]) {
            for a in 0..t {
                for b in 0..t {
                    let Some(act) = delta[(q * t + a) * t + b] else {
                        return bad(format!("δ undefined on ({}, {}, {})", states[q], tape[a], tape[b]));
                    };
                    // ◁ marks cell 0 exactly, so reading it is the only way to be at the left end.
                    if (a == START_ID && act.input_move == Move::L) || (b == START_ID && act.output_move == Move::L) {
                        return bad(format!("({}, {}, {}) moves left of the start cell", states[q], tape[a], tape[b]));
                    }
                    if (b == START_ID) != (act.write == START_ID) {
                        return bad(format!("({}, {}, {}) must keep ◁ in cell 0 only", states[q], tape[a], tape[b]));
                    }
                }
            }
        }
        Ok(TwoTapeTm {
            input_alphabet: input_alphabet.clone(),
            decisions: decisions.clone(),
            tape,
            states,
            initial,
            terminal: is_terminal,
            delta,
        })
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input_alphabet
    }

    pub fn decisions(&self) -> &Alphabet {
        &self.decisions
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn tape_alphabet(&self) -> &[String] {
        &self.tape
    }

    fn action(&self, q: usize, a: usize, b: usize) -> Option<Action> {
        let t = self.tape.len();
        self.delta[(q * t + a) * t + b]
    }

    /// Runs on `◁ S(1) S(2) …`; the input cells are read from `seq` on demand.
    /// One δ application is one step.
    pub fn run(&self, seq: &SeqSpec, budget: usize) -> Result<TmRun> {
        self.input_alphabet.check_same(seq.alphabet(), "tm run")?;
        if budget == 0 {
            return Err(Error::InvalidMachine("budget must be at least 1".into()));
        }
        // Input symbol `x` sits at tape index of its name.
        let input_ids: Vec<usize> = self
            .input_alphabet
            .names()
            .iter()
            .map(|n| self.tape.iter().position(|s| s == n).unwrap())
            .collect();
        let mut output = vec![START_ID];
        let (mut q, mut ih, mut oh, mut steps) = (self.initial, 0usize, 0usize, 0usize);
        while !self.terminal[q] {
            if steps == budget {
                return Err(Error::BudgetExhausted { steps });
            }
            let a = if ih == 0 { START_ID } else { input_ids[seq.at(ih).0] };
            if oh >= output.len() {
                output.resize(oh + 1, BLANK_ID);
            }
            let act = self.action(q, a, output[oh]).expect("δ total on non-terminal states");
            output[oh] = act.write;
            ih = act.input_move.apply(ih);
            oh = act.output_move.apply(oh);
            q = act.next;
            steps += 1;
        }
        let under = output.get(oh).copied().unwrap_or(BLANK_ID);
        let decision = self.decisions.symbol(&self.tape[under]).map_err(|_| {
            Error::InvalidMachine(format!(
                "halted in `{}` with `{}` under the output head",
                self.states[q], self.tape[under]
            ))
        })?;
        Ok(TmRun { decision, steps, halted: true })
    }

    pub fn to_file(&self) -> TmFile {
        let t = self.tape.len();
        let mut transitions = Vec::new();
        for q in (0..self.states.len()).filter(|&q| !self.terminal[q]) {
            for a in 0..t {
                for b in 0..t {
                    let act = self.action(q, a, b).unwrap();
                    transitions.push((
                        self.states[q].clone(),
                        self.tape[a].clone(),
                        self.tape[b].clone(),
                        self.states[act.next].clone(),
                        self.tape[act.write].clone(),
                        act.input_move,
                        act.output_move,
                    ));
                }
            }
        }
        let listed: HashSet<&String> = self
            .input_alphabet
            .names()
            .iter()
            .chain(self.decisions.names())
            .collect();
        TmFile {
            kind: Some("tm".into()),
            input_alphabet: self.input_alphabet.names().to_vec(),
            decisions: (self.decisions != self.input_alphabet).then(|| self.decisions.names().to_vec()),
            tape_alphabet: self.tape[2..].iter().filter(|s| !listed.contains(s)).cloned().collect(),
            states: self.states.clone(),
            initial: self.states[self.initial].clone(),
            terminal: (0..self.states.len())
                .filter(|&q| self.terminal[q])
                .map(|q| self.states[q].clone())
                .collect(),
            transitions,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("machine serializes")
    }

    pub fn from_file(file: &TmFile) -> Result<Self> {
        if let Some(kind) = &file.kind {
            if kind != "tm" {
                return Err(Error::InvalidMachine(format!("unexpected kind `{kind}`")));
            }
        }
        let input = Alphabet::new(file.input_alphabet.iter().cloned())?;
        let decisions = match &file.decisions {
            Some(d) => Alphabet::new(d.iter().cloned())?,
            None => input.clone(),
        };
        TwoTapeTm::new(
            &input,
            &decisions,
            &file.tape_alphabet,
            file.states.clone(),
            &file.initial,
            &file.terminal,
            &file.transitions,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TmFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("machine JSON: {e}")))?;
        Self::from_file(&file)
    }
}

/// On-disk machine format. Transitions are
/// `[state, input, output, next, write, input_move, output_move]` with moves `"L"`, `"S"`, `"R"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TmFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub input_alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decisions: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tape_alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub terminal: Vec<String>,
    pub transitions: Vec<NamedTransition>,
}

/// Construction constant: the embedded machine halts after `k + 2 ≤ 3·k`
/// steps, `k` being the stopping time.
pub const EMBEDDING_STEP_FACTOR: usize = 3;

/// Embeds a stopping automaton: one step moves both heads off `◁`, each
/// automaton transition is one right-moving read, and entering a decided
/// state writes its decision and steps back onto it before halting.
pub fn automaton_to_tm(aut: &DecisionAutomaton) -> Result<TwoTapeTm> {
    aut.require_stopping()?;
    let x = aut.alphabet();
    let y = aut.decisions();
    let mut taken: HashSet<String> = HashSet::new();
    let mut names: HashMap<usize, String> = HashMap::new();
    let mut order = Vec::new();
    for q in (0..aut.num_states()).filter(|&q| !aut.is_terminal(q)) {
        taken.insert(aut.name(q).to_string());
        names.insert(q, aut.name(q).to_string());
        order.push(aut.name(q).to_string());
    }
    let fresh = |base: &str, taken: &mut HashSet<String>| {
        let mut name = base.to_string();
        while !taken.insert(name.clone()) {
            name.push('\'');
        }
        name
    };
    let write = fresh("write", &mut taken);
    let halt = fresh("halt", &mut taken);
    order.push(write.clone());
    order.push(halt.clone());

    let decided = aut.decidedness();
    let any = || ANY.to_string();
    let mut transitions: Vec<NamedTransition> = Vec::new();
    for q in (0..aut.num_states()).filter(|&q| !aut.is_terminal(q)) {
        let name = &names[&q];
        // Unreachable combinations stay put.
        transitions.push((name.clone(), any(), any(), name.clone(), any(), Move::S, Move::S));
        if q == aut.initial() {
            transitions.push((name.clone(), START.into(), START.into(), name.clone(), START.into(), Move::R, Move::R));
        }
        for s in x.symbols() {
            let t = aut.next(q, s);
            let sym = x.name(s).to_string();
            transitions.push(match decided[t] {
                Decidedness::Undecided => {
                    (name.clone(), sym, BLANK.into(), names[&t].clone(), BLANK.into(), Move::R, Move::S)
                }
                Decidedness::Decided(d) => {
                    (name.clone(), sym, BLANK.into(), write.clone(), y.name(d).into(), Move::S, Move::R)
                }
            });
        }
    }
    transitions.push((write.clone(), any(), any(), halt.clone(), any(), Move::S, Move::L));
    transitions.push((write.clone(), any(), START.into(), halt.clone(), START.into(), Move::S, Move::S));
    TwoTapeTm::new(x, y, &[], order, aut.name(aut.initial()), &[halt], &transitions)
}

/// Decision tree of depth `horizon` built from a machine's observed decisions on
/// every `horizon`-prefix closed with a constant tail. Only meaningful when
/// the machine's decisions depend on at most `horizon` positions.
pub fn synthesize_automaton(tm: &TwoTapeTm, horizon: usize, budget: usize) -> Result<DecisionAutomaton> {
    let x = tm.input_alphabet().clone();
    let mut observed: BTreeMap<Vec<Symbol>, Symbol> = BTreeMap::new();
    for seg in crate::seq::enumerate_segments(&x, horizon) {
        let d = tm.run(&seg.closed_with(Symbol(0)), budget)?.decision;
        observed.insert(seg.into_word(), d);
    }
    DecisionAutomaton::from_prefix_rule(&x, tm.decisions(), horizon, |w| observed[w])
}
