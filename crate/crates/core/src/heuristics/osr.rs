use std::collections::{HashMap, VecDeque};

use crate::automaton::DecisionAutomaton;
use crate::error::{Error, Result};
use crate::seq::{Alphabet, SeqSpec, Symbol};

/// Ordinal satisficing with attention span `k`: the first alternative in the
/// first `k` positions ranked strictly above the threshold alternative, else
/// the best alternative seen in those positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsrSpec {
    alphabet: Alphabet,
    /// Best first.
    order: Vec<Symbol>,
    /// `rank[x]` is the position of `x` in `order`; lower is better.
    rank: Vec<usize>,
    threshold_alt: Symbol,
    span: usize,
}

impl OsrSpec {
    pub fn new(alphabet: &Alphabet, order: Vec<Symbol>, threshold_alt: Symbol, span: usize) -> Result<Self> {
        let n = alphabet.len();
        if order.len() != n {
            return Err(Error::InvalidRule(format!("order ranks {} of {n} symbols", order.len())));
        }
        let mut rank = vec![usize::MAX; n];
        for (r, s) in order.iter().enumerate() {
            if s.0 >= n || rank[s.0] != usize::MAX {
                return Err(Error::InvalidRule("order must rank every symbol exactly once".into()));
            }
            rank[s.0] = r;
        }
        if threshold_alt.0 >= n {
            return Err(Error::InvalidRule("threshold alternative outside the alphabet".into()));
        }
        if span == 0 {
            return Err(Error::InvalidRule("attention span must be at least 1".into()));
        }
        Ok(OsrSpec { alphabet: alphabet.clone(), order, rank, threshold_alt, span })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &[Symbol] {
        &self.order
    }

    pub fn threshold_alt(&self) -> Symbol {
        self.threshold_alt
    }

    pub fn span(&self) -> usize {
        self.span
    }

    /// `a ≻ b`
    pub fn prefers(&self, a: Symbol, b: Symbol) -> bool {
        self.rank[a.0] < self.rank[b.0]
    }

    fn better(&self, a: Symbol, b: Symbol) -> Symbol {
        if self.prefers(a, b) {
            a
        } else {
            b
        }
    }

    pub fn evaluate(&self, seq: &SeqSpec) -> Result<Symbol> {
        self.alphabet.check_same(seq.alphabet(), "osr evaluate")?;
        let mut best: Option<Symbol> = None;
        for s in seq.positions().take(self.span) {
            if self.prefers(s, self.threshold_alt) {
                return Ok(s);
            }
            best = Some(best.map_or(s, |b| self.better(b, s)));
        }
        Ok(best.expect("span is at least 1"))
    }

    /// States track the number of positions read and the best symbol seen so
    /// far; an above-threshold symbol or the `k`-th read moves to a terminal.
    pub fn compile(&self) -> DecisionAutomaton {
        let n = self.alphabet.len();
        let mut index: HashMap<(usize, Option<Symbol>), usize> = HashMap::new();
        let mut keys = vec![(0usize, None)];
        index.insert((0, None), 0);
        let mut queue = VecDeque::from([(0usize, None::<Symbol>)]);
        let mut rows: Vec<Vec<Result<usize, Symbol>>> = Vec::new();
        while let Some((read, best)) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for s in self.alphabet.symbols() {
                if self.prefers(s, self.threshold_alt) {
                    row.push(Err(s));
                    continue;
                }
                let nb = best.map_or(s, |b| self.better(b, s));
                if read + 1 == self.span {
                    row.push(Err(nb));
                    continue;
                }
                let key = (read + 1, Some(nb));
                let id = *index.entry(key).or_insert_with(|| {
                    keys.push(key);
                    queue.push_back(key);
                    keys.len() - 1
                });
                row.push(Ok(id));
            }
            rows.push(row);
        }
        let inner = keys.len();
        let mut names: Vec<String> = keys
            .iter()
            .map(|&(read, best)| match best {
                None => "q0".to_string(),
                Some(b) => format!("{read}/{}", self.alphabet.name(b)),
            })
            .collect();
        let mut transitions: Vec<Vec<usize>> = rows
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or_else(|s| inner + s.0)).collect())
            .collect();
        let mut output = vec![None; inner];
        for s in self.alphabet.symbols() {
            names.push(format!("pick_{}", self.alphabet.name(s)));
            transitions.push(vec![inner + s.0; n]);
            output.push(Some(s));
        }
        let aut = DecisionAutomaton::new(&self.alphabet, &self.alphabet, names, 0, transitions, output)
            .expect("osr automaton is well formed");
        // Drop terminals no input can reach (e.g. symbols never chosen).
        if aut.reachable().iter().all(|&r| r) {
            aut
        } else {
            prune_unreachable(&aut)
        }
    }
}

fn prune_unreachable(aut: &DecisionAutomaton) -> DecisionAutomaton {
    let reachable = aut.reachable();
    let keep: Vec<usize> = (0..aut.num_states()).filter(|&q| reachable[q]).collect();
    let mut new_id = vec![usize::MAX; aut.num_states()];
    for (i, &q) in keep.iter().enumerate() {
        new_id[q] = i;
    }
    DecisionAutomaton::new(
        aut.alphabet(),
        aut.decisions(),
        keep.iter().map(|&q| aut.name(q).to_string()).collect(),
        new_id[aut.initial()],
        keep.iter()
            .map(|&q| aut.alphabet().symbols().map(|s| new_id[aut.next(q, s)]).collect())
            .collect(),
        keep.iter().map(|&q| aut.output(q)).collect(),
    )
    .expect("pruning keeps the automaton well formed")
}
