//! Finite decision automata with absorbing, labelled terminal states.
//!
//! An automaton reads a sequence one symbol at a time from its initial state
//! and stops as soon as it enters a terminal state; the terminal's output label
//! is the decision. Terminal states are absorbing, so running past the stop
//! position never changes the state.

mod dot;
mod json;
mod minimize;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::seq::{Alphabet, Segment, SeqSpec, Symbol};

pub use json::AutomatonFile;

pub type StateId = usize;

#[derive(Clone, Debug)]
pub struct DecisionAutomaton {
    alphabet: Alphabet,
    decisions: Alphabet,
    names: Vec<String>,
    initial: StateId,
    /// Row-major `state * |X| + symbol`.
    delta: Vec<StateId>,
    output: Vec<Option<Symbol>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub decision: Symbol,
    /// 1-based position at which a terminal state was entered.
    pub stop: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Decidedness {
    Undecided,
    Decided(Symbol),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sufficiency {
    NotSufficient,
    Sufficient(Symbol),
    MinimalSufficient(Symbol),
}

impl Sufficiency {
    pub fn decision(self) -> Option<Symbol> {
        match self {
            Sufficiency::NotSufficient => None,
            Sufficiency::Sufficient(y) | Sufficiency::MinimalSufficient(y) => Some(y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopVerdict {
    /// Every run is decided after this many symbols, and some run needs all of them.
    UniformBound(usize),
    NonStopping {
        /// Non-terminal states forming a cycle, in traversal order.
        cycle: Vec<StateId>,
        /// Segment leading from the initial state to `cycle[0]`.
        reaching: Segment,
    },
}

impl StopVerdict {
    pub fn bound(&self) -> Option<usize> {
        match self {
            StopVerdict::UniformBound(k) => Some(*k),
            StopVerdict::NonStopping { .. } => None,
        }
    }
}

impl DecisionAutomaton {
    /// Builds and validates an automaton. `transitions[q][s]` is the successor of
    /// `q` on symbol `s`; `output[q]` is `Some` exactly for terminal states.
    pub fn new(
        alphabet: &Alphabet,
        decisions: &Alphabet,
        names: Vec<String>,
        initial: StateId,
        transitions: Vec<Vec<StateId>>,
        output: Vec<Option<Symbol>>,
    ) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Err(Error::InvalidAutomaton(msg));
        if n == 0 {
            return bad("no states".into());
        }
        if transitions.len() != n || output.len() != n {
            return bad(format!(
                "{n} states but {} transition rows and {} outputs",
                transitions.len(),
                output.len()
            ));
        }
        let mut seen = HashMap::new();
        for (q, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), q).is_some() {
                return bad(format!("duplicate state name `{name}`"));
            }
        }
        if initial >= n {
            return bad(format!("initial state {initial} out of range"));
        }
        if output[initial].is_some() {
            return bad(format!("initial state `{}` must not be terminal", names[initial]));
        }
        let mut delta = Vec::with_capacity(n * alphabet.len());
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return bad(format!(
                    "state `{}` has {} transitions, expected {}",
                    names[q],
                    row.len(),
                    alphabet.len()
                ));
            }
            for (s, &t) in row.iter().enumerate() {
                if t >= n {
                    return bad(format!("transition target {t} out of range"));
                }
                if output[q].is_some() && t != q {
                    return bad(format!(
                        "terminal state `{}` is not absorbing on `{}`",
                        names[q],
                        alphabet.name(Symbol(s))
                    ));
                }
            }
            delta.extend_from_slice(row);
        }
        if let Some(y) = output.iter().flatten().find(|y| y.0 >= decisions.len()) {
            return bad(format!("output index {} outside the decision alphabet", y.0));
        }
        Ok(DecisionAutomaton {
            alphabet: alphabet.clone(),
            decisions: decisions.clone(),
            names,
            initial,
            delta,
            output,
        })
    }

    /// Segment-tree automaton for a rule that reads exactly `depth` symbols.
    /// A node becomes the terminal for `y` as soon as every completion of its
    /// word decides `y`, so terminals sit at the minimal sufficient segments.
    pub fn from_prefix_rule<F>(
        alphabet: &Alphabet,
        decisions: &Alphabet,
        depth: usize,
        rule: F,
    ) -> Result<Self>
    where
        F: Fn(&[Symbol]) -> Symbol,
    {
        if depth == 0 {
            return Err(Error::InvalidAutomaton("prefix rule depth must be at least 1".into()));
        }
        let x = alphabet.len();
        // Leaf decisions, position 1 most significant: the completions of a
        // length-l word form one contiguous block of x^(depth-l) entries.
        let mut leaves = Vec::with_capacity(x.pow(depth as u32));
        let mut word = vec![Symbol(0); depth];
        loop {
            let y = rule(&word);
            if y.0 >= decisions.len() {
                return Err(Error::InvalidRule(format!("decision index {} out of range", y.0)));
            }
            leaves.push(y);
            let Some(i) = word.iter().rposition(|s| s.0 + 1 < x) else { break };
            word[i].0 += 1;
            word[i + 1..].iter_mut().for_each(|s| *s = Symbol(0));
        }
        let settled = |w: &[Symbol]| -> Option<Symbol> {
            let size = x.pow((depth - w.len()) as u32);
            let start = w.iter().fold(0, |acc, s| acc * x + s.0) * size;
            let block = &leaves[start..start + size];
            block.iter().all(|&y| y == block[0]).then_some(block[0])
        };

        let mut names = vec!["q0".to_string()];
        let mut words: Vec<Vec<Symbol>> = vec![Vec::new()];
        let mut transitions: Vec<Vec<StateId>> = Vec::new();
        let mut output = vec![None];
        let mut terminal_of: HashMap<Symbol, StateId> = HashMap::new();
        let mut q = 0;
        while q < words.len() {
            let word = words[q].clone();
            let mut row = Vec::with_capacity(x);
            for s in alphabet.symbols() {
                let mut next = word.clone();
                next.push(s);
                if let Some(y) = settled(&next) {
                    let t = *terminal_of.entry(y).or_insert_with(|| {
                        names.push(format!("out:{}", decisions.name(y)));
                        words.push(Vec::new());
                        output.push(Some(y));
                        names.len() - 1
                    });
                    row.push(t);
                } else {
                    names.push(format!("[{}]", alphabet.render(&next)));
                    words.push(next);
                    output.push(None);
                    row.push(names.len() - 1);
                }
            }
            transitions.push(row);
            q += 1;
            // Terminal states are appended lazily; give each its self-loops.
            while q < words.len() && output[q].is_some() {
                transitions.push(vec![q; x]);
                q += 1;
            }
        }
        DecisionAutomaton::new(alphabet, decisions, names, 0, transitions, output)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn decisions(&self) -> &Alphabet {
        &self.decisions
    }

    /// Whether decision labels are the input alphabet itself.
    pub fn is_choice_automaton(&self) -> bool {
        self.decisions == self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn next(&self, q: StateId, s: Symbol) -> StateId {
        self.delta[q * self.alphabet.len() + s.0]
    }

    pub fn is_terminal(&self, q: StateId) -> bool {
        self.output[q].is_some()
    }

    pub fn output(&self, q: StateId) -> Option<Symbol> {
        self.output[q]
    }

    pub fn terminal_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.is_terminal(q))
    }

    pub fn run_word(&self, word: &[Symbol]) -> StateId {
        word.iter().fold(self.initial, |q, &s| self.next(q, s))
    }

    pub fn run(&self, seg: &Segment) -> Result<StateId> {
        self.alphabet.check_same(seg.alphabet(), "run")?;
        Ok(self.run_word(seg.word()))
    }

    /// Simulates until a terminal state is entered. Divergence is detected
    /// exactly: once inside the cycle, a repeated (state, cycle phase) pair
    /// without reaching a terminal means the run never stops.
    pub fn evaluate(&self, seq: &SeqSpec) -> Result<Evaluation> {
        self.alphabet.check_same(seq.alphabet(), "evaluate")?;
        let mut q = self.initial;
        let mut pos = 0;
        for &s in seq.prefix_word() {
            q = self.next(q, s);
            pos += 1;
            if let Some(decision) = self.output[q] {
                return Ok(Evaluation { decision, stop: pos });
            }
        }
        let cycle = seq.cycle_word();
        let mut first_seen: HashMap<(StateId, usize), usize> = HashMap::new();
        let mut trace: Vec<StateId> = Vec::new();
        for phase in (0..cycle.len()).cycle() {
            if let Some(&at) = first_seen.get(&(q, phase)) {
                let names = trace[at..].iter().map(|&t| self.names[t].clone()).collect();
                return Err(Error::Diverges { sequence: seq.to_string(), cycle: names });
            }
            first_seen.insert((q, phase), trace.len());
            trace.push(q);
            q = self.next(q, cycle[phase]);
            pos += 1;
            if let Some(decision) = self.output[q] {
                return Ok(Evaluation { decision, stop: pos });
            }
        }
        unreachable!("cycle is nonempty")
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for s in self.alphabet.symbols() {
                let t = self.next(q, s);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Terminal and non-terminal states from which every run is finite, in an
    /// order where each state comes after all of its successors.
    fn safe_order(&self) -> (Vec<bool>, Vec<StateId>) {
        let n = self.num_states();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        let mut pending = vec![0usize; n];
        for q in 0..n {
            if self.is_terminal(q) {
                continue;
            }
            for s in self.alphabet.symbols() {
                preds[self.next(q, s)].push(q);
                pending[q] += 1;
            }
        }
        let mut safe = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<StateId> = self.terminal_states().collect();
        for &t in &queue {
            safe[t] = true;
        }
        while let Some(t) = queue.pop_front() {
            order.push(t);
            for &p in &preds[t] {
                pending[p] -= 1;
                if pending[p] == 0 && !safe[p] {
                    safe[p] = true;
                    queue.push_back(p);
                }
            }
        }
        (safe, order)
    }

    /// A state is `Decided(y)` iff every run from it terminates and every
    /// terminal reachable from it outputs `y`.
    pub fn decidedness(&self) -> Vec<Decidedness> {
        #[derive(Copy, Clone, PartialEq)]
        enum Agg {
            None,
            One(Symbol),
            Many,
        }
        let (safe, order) = self.safe_order();
        let mut agg = vec![Agg::None; self.num_states()];
        for &q in &order {
            agg[q] = match self.output[q] {
                Some(y) => Agg::One(y),
                None => self.alphabet.symbols().fold(Agg::None, |acc, s| {
                    match (acc, agg[self.next(q, s)]) {
                        (Agg::None, b) => b,
                        (a, Agg::None) => a,
                        (Agg::One(a), Agg::One(b)) if a == b => Agg::One(a),
                        _ => Agg::Many,
                    }
                }),
            };
        }
        (0..self.num_states())
            .map(|q| match agg[q] {
                Agg::One(y) if safe[q] => Decidedness::Decided(y),
                _ => Decidedness::Undecided,
            })
            .collect()
    }

    /// Sufficiency of a segment: `Sufficient(y)` iff its run ends in a state
    /// decided for `y`; minimal when no nonempty proper prefix is sufficient.
    pub fn sufficiency(&self, seg: &Segment) -> Result<Sufficiency> {
        self.alphabet.check_same(seg.alphabet(), "sufficiency")?;
        Ok(self.sufficiency_with(&self.decidedness(), seg.word()))
    }

    pub(crate) fn sufficiency_with(&self, table: &[Decidedness], word: &[Symbol]) -> Sufficiency {
        let mut q = self.initial;
        let mut earlier = false;
        for (i, &s) in word.iter().enumerate() {
            if i >= 1 && table[q] != Decidedness::Undecided {
                earlier = true;
            }
            q = self.next(q, s);
        }
        match table[q] {
            Decidedness::Undecided => Sufficiency::NotSufficient,
            Decidedness::Decided(y) if earlier || word.is_empty() => Sufficiency::Sufficient(y),
            Decidedness::Decided(y) => Sufficiency::MinimalSufficient(y),
        }
    }

    /// Uniform bound, the largest stopping time over all sequences: `1 +` the
    /// longest path from the initial state through undecided states. A
    /// reachable cycle of non-terminal states means the automaton does not stop.
    pub fn verify_stopping(&self) -> StopVerdict {
        let n = self.num_states();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        let mut longest = vec![0usize; n];
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n];
        let mut stack: Vec<(StateId, usize)> = vec![(self.initial, 0)];
        color[self.initial] = 1;
        while let Some(&mut (q, ref mut next_sym)) = stack.last_mut() {
            if *next_sym == self.alphabet.len() {
                color[q] = 2;
                stack.pop();
                continue;
            }
            let s = Symbol(*next_sym);
            *next_sym += 1;
            let t = self.next(q, s);
            if self.is_terminal(t) {
                continue;
            }
            match color[t] {
                0 => {
                    color[t] = 1;
                    parent[t] = Some((q, s));
                    stack.push((t, 0));
                }
                1 => {
                    let on_stack: Vec<StateId> = stack.iter().map(|&(p, _)| p).collect();
                    let start = on_stack.iter().position(|&p| p == t).unwrap();
                    let cycle = on_stack[start..].to_vec();
                    let mut word = Vec::new();
                    let mut cur = t;
                    while let Some((p, sym)) = parent[cur] {
                        word.push(sym);
                        cur = p;
                    }
                    word.reverse();
                    return StopVerdict::NonStopping {
                        cycle,
                        reaching: Segment::from_trusted(&self.alphabet, word),
                    };
                }
                _ => {}
            }
        }
        // Reachable states are safe now, and `order` lists successors first.
        let (_, order) = self.safe_order();
        let decided = self.decidedness();
        let open = |q: StateId| decided[q] == Decidedness::Undecided;
        for &q in order.iter().filter(|&&q| open(q)) {
            longest[q] = self
                .alphabet
                .symbols()
                .map(|s| self.next(q, s))
                .filter(|&t| open(t))
                .map(|t| longest[t] + 1)
                .max()
                .unwrap_or(0);
        }
        // A decided initial state still reads one symbol.
        StopVerdict::UniformBound(longest[self.initial] + 1)
    }

    pub(crate) fn require_stopping(&self) -> Result<usize> {
        match self.verify_stopping() {
            StopVerdict::UniformBound(k) => Ok(k),
            StopVerdict::NonStopping { cycle, reaching } => Err(Error::NotStopping {
                cycle: cycle.iter().map(|&q| self.names[q].clone()).collect(),
                reaching: reaching.to_string(),
            }),
        }
    }

    /// Structural isomorphism of the reachable parts, matching the initial
    /// states, symbol labels, terminal flags and output labels.
    pub fn is_isomorphic(&self, other: &DecisionAutomaton) -> bool {
        if self.alphabet != other.alphabet || self.decisions != other.decisions {
            return false;
        }
        let mut map: HashMap<StateId, StateId> = HashMap::new();
        let mut back: HashMap<StateId, StateId> = HashMap::new();
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        map.insert(self.initial, other.initial);
        back.insert(other.initial, self.initial);
        while let Some((a, b)) = queue.pop_front() {
            if self.output[a] != other.output[b] {
                return false;
            }
            for s in self.alphabet.symbols() {
                let (ta, tb) = (self.next(a, s), other.next(b, s));
                match (map.get(&ta), back.get(&tb)) {
                    (None, None) => {
                        map.insert(ta, tb);
                        back.insert(tb, ta);
                        queue.push_back((ta, tb));
                    }
                    (Some(&x), Some(&y)) if x == tb && y == ta => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    /// Six states: two unit-weight alternatives, threshold 2.
    pub(crate) fn first_to_two() -> DecisionAutomaton {
        let a = xy();
        let names = ["q0", "1_x", "1_y", "1_x1_y", "2_x", "2_y"].map(String::from).to_vec();
        DecisionAutomaton::new(
            &a,
            &a,
            names,
            0,
            vec![vec![1, 2], vec![4, 3], vec![3, 5], vec![4, 5], vec![4, 4], vec![5, 5]],
            vec![None, None, None, None, Some(Symbol(0)), Some(Symbol(1))],
        )
        .unwrap()
    }

    fn seg(text: &str) -> Segment {
        Segment::parse(&xy(), text).unwrap()
    }

    #[test]
    fn construction_rejects_non_absorbing_terminal() {
        let a = xy();
        let err = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "t".into()],
            0,
            vec![vec![1, 1], vec![0, 1]],
            vec![None, Some(Symbol(0))],
        );
        assert!(matches!(err, Err(Error::InvalidAutomaton(_))));
    }

    #[test]
    fn construction_rejects_terminal_initial() {
        let a = xy();
        let err = DecisionAutomaton::new(
            &a,
            &a,
            vec!["t".into()],
            0,
            vec![vec![0, 0]],
            vec![Some(Symbol(0))],
        );
        assert!(err.is_err());
    }

    #[test]
    fn run_follows_first_to_two_edges() {
        let aut = first_to_two();
        assert_eq!(aut.name(aut.run(&seg("x x")).unwrap()), "2_x");
        assert_eq!(aut.run(&seg("")).unwrap(), aut.initial());
        assert_eq!(aut.name(aut.run(&seg("x y x")).unwrap()), "2_x");
        assert_eq!(aut.name(aut.run(&seg("x x y y")).unwrap()), "2_x");
        let other = Alphabet::new(["x", "z"]).unwrap();
        assert!(aut.run(&Segment::parse(&other, "z").unwrap()).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let aut = first_to_two();
        let x = SeqSpec::parse(&xy(), "|x").unwrap();
        assert_eq!(aut.evaluate(&x).unwrap(), Evaluation { decision: Symbol(0), stop: 2 });
        let alt = SeqSpec::parse(&xy(), "|x y").unwrap();
        assert_eq!(aut.evaluate(&alt).unwrap(), Evaluation { decision: Symbol(0), stop: 3 });
    }

    #[test]
    fn evaluate_detects_divergence() {
        let a = xy();
        let aut = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "t".into()],
            0,
            vec![vec![0, 0], vec![1, 1]],
            vec![None, Some(Symbol(0))],
        )
        .unwrap();
        let s = SeqSpec::parse(&a, "x y|x y y").unwrap();
        match aut.evaluate(&s) {
            Err(Error::Diverges { cycle, .. }) => assert!(!cycle.is_empty()),
            other => panic!("expected divergence, got {other:?}"),
        }
        assert!(matches!(aut.verify_stopping(), StopVerdict::NonStopping { .. }));
    }

    #[test]
    fn decidedness_examples() {
        let aut = first_to_two();
        let d = aut.decidedness();
        assert_eq!(d[aut.state("2_x").unwrap()], Decidedness::Decided(Symbol(0)));
        assert_eq!(d[aut.state("2_y").unwrap()], Decidedness::Decided(Symbol(1)));
        assert_eq!(d[aut.state("1_x1_y").unwrap()], Decidedness::Undecided);
        assert_eq!(d[aut.initial()], Decidedness::Undecided);

        // Three states where every terminal says `y`: everything is decided.
        let a = xy();
        let aut = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "m".into(), "t".into()],
            0,
            vec![vec![1, 2], vec![2, 2], vec![2, 2]],
            vec![None, None, Some(Symbol(1))],
        )
        .unwrap();
        assert!(aut.decidedness().iter().all(|&d| d == Decidedness::Decided(Symbol(1))));
    }

    #[test]
    fn decidedness_is_monotone_along_runs() {
        let aut = first_to_two();
        let table = aut.decidedness();
        for q in 0..aut.num_states() {
            if let Decidedness::Decided(y) = table[q] {
                for s in aut.alphabet().symbols() {
                    assert_eq!(table[aut.next(q, s)], Decidedness::Decided(y));
                }
            }
        }
    }

    #[test]
    fn first_to_two_sufficiency() {
        let aut = first_to_two();
        assert_eq!(aut.sufficiency(&seg("x")).unwrap(), Sufficiency::NotSufficient);
        assert_eq!(aut.sufficiency(&seg("x y")).unwrap(), Sufficiency::NotSufficient);
        assert_eq!(aut.sufficiency(&seg("x x")).unwrap(), Sufficiency::MinimalSufficient(Symbol(0)));
        assert_eq!(aut.sufficiency(&seg("x y x")).unwrap(), Sufficiency::MinimalSufficient(Symbol(0)));
        assert_eq!(aut.sufficiency(&seg("x x y")).unwrap(), Sufficiency::Sufficient(Symbol(0)));
    }

    #[test]
    fn verify_stopping_examples() {
        assert_eq!(first_to_two().verify_stopping(), StopVerdict::UniformBound(3));

        let a = xy();
        let one_step = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "t".into()],
            0,
            vec![vec![1, 1], vec![1, 1]],
            vec![None, Some(Symbol(0))],
        )
        .unwrap();
        assert_eq!(one_step.verify_stopping(), StopVerdict::UniformBound(1));

        let two_cycle = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "p".into(), "r".into(), "t".into()],
            0,
            vec![vec![1, 3], vec![2, 3], vec![1, 3], vec![3, 3]],
            vec![None, None, None, Some(Symbol(0))],
        )
        .unwrap();
        match two_cycle.verify_stopping() {
            StopVerdict::NonStopping { cycle, reaching } => {
                let mut names: Vec<&str> = cycle.iter().map(|&q| two_cycle.name(q)).collect();
                names.sort();
                assert_eq!(names, ["p", "r"]);
                assert_eq!(two_cycle.run(&reaching).unwrap(), cycle[0]);
            }
            v => panic!("expected non-stopping, got {v:?}"),
        }
    }

    #[test]
    fn verify_stopping_bound_is_tight_on_first_to_two() {
        let aut = first_to_two();
        let k = aut.verify_stopping().bound().unwrap();
        let max = crate::seq::enumerate_segments(aut.alphabet(), k)
            .map(|s| aut.evaluate(&s.closed_with(Symbol(0))).unwrap().stop)
            .max()
            .unwrap();
        assert_eq!(max, k);
    }

    #[test]
    fn prefix_rule_tree() {
        let a = xy();
        let second = DecisionAutomaton::from_prefix_rule(&a, &a, 2, |w| w[1]).unwrap();
        assert_eq!(second.verify_stopping(), StopVerdict::UniformBound(2));
        let s = SeqSpec::parse(&a, "x|y").unwrap();
        assert_eq!(second.evaluate(&s).unwrap().decision, Symbol(1));
        assert_eq!(second.num_states(), 1 + 2 + 2);
    }

    #[test]
    fn prefix_rule_stops_at_settled_words() {
        let a = xy();
        let first = DecisionAutomaton::from_prefix_rule(&a, &a, 3, |w| w[0]).unwrap();
        assert_eq!(first.num_states(), 1 + 2);
        assert_eq!(first.verify_stopping(), StopVerdict::UniformBound(1));
        // x settles at once; y needs the second symbol.
        let mixed = DecisionAutomaton::from_prefix_rule(&a, &a, 3, |w| if w[0] == Symbol(0) { w[0] } else { w[1] }).unwrap();
        assert_eq!(mixed.num_states(), 1 + 1 + 2);
        assert_eq!(mixed.verify_stopping(), StopVerdict::UniformBound(2));
    }

    /// `p` and `s` are decided for x but not terminal.
    pub(crate) fn redundant() -> DecisionAutomaton {
        let a = xy();
        let names = ["q0", "p", "r", "s", "t_x", "t_y"].map(String::from).to_vec();
        DecisionAutomaton::new(
            &a,
            &a,
            names,
            0,
            vec![vec![1, 2], vec![3, 3], vec![4, 5], vec![4, 4], vec![4, 4], vec![5, 5]],
            vec![None, None, None, None, Some(Symbol(0)), Some(Symbol(1))],
        )
        .unwrap()
    }

    #[test]
    fn verify_stopping_counts_decided_states() {
        let aut = redundant();
        assert_eq!(aut.evaluate(&SeqSpec::parse(&xy(), "|x").unwrap()).unwrap().stop, 3);
        assert_eq!(aut.verify_stopping(), StopVerdict::UniformBound(2));
    }

    #[test]
    fn isomorphism_detects_relabeled_states() {
        let a = first_to_two();
        let mut names: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
        names.swap(1, 2);
        let b = DecisionAutomaton::new(
            a.alphabet(),
            a.decisions(),
            names,
            0,
            (0..6).map(|q| a.alphabet().symbols().map(|s| a.next(q, s)).collect()).collect(),
            (0..6).map(|q| a.output(q)).collect(),
        )
        .unwrap();
        assert!(a.is_isomorphic(&b));
        let c = DecisionAutomaton::from_prefix_rule(a.alphabet(), a.decisions(), 2, |w| w[0]).unwrap();
        assert!(!a.is_isomorphic(&c));
    }
}
