use std::collections::{HashMap, VecDeque};

use super::{Decidedness, DecisionAutomaton, StateId};
use crate::error::Result;

impl DecisionAutomaton {
    /// Moore partition refinement over reachable states, starting from the
    /// partition {Decided(y) for each y} ∪ {Undecided}. Each decided class
    /// collapses into one absorbing terminal, so the result stops as soon as
    /// the decision is forced. Decisions are preserved on every sequence; stop
    /// positions can only move earlier.
    pub fn minimize(&self) -> Result<DecisionAutomaton> {
        self.require_stopping()?;
        let table = self.decidedness();
        let reachable = self.reachable();
        let states: Vec<StateId> = (0..self.num_states()).filter(|&q| reachable[q]).collect();

        let mut block: Vec<usize> = vec![usize::MAX; self.num_states()];
        let mut count = {
            let mut ids: HashMap<Option<usize>, usize> = HashMap::new();
            for &q in &states {
                let key = match table[q] {
                    Decidedness::Decided(y) => Some(y.0),
                    Decidedness::Undecided => None,
                };
                let next = ids.len();
                block[q] = *ids.entry(key).or_insert(next);
            }
            ids.len()
        };
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut refined = vec![usize::MAX; self.num_states()];
            for &q in &states {
                let succ = self.alphabet.symbols().map(|s| block[self.next(q, s)]).collect();
                let next = ids.len();
                refined[q] = *ids.entry((block[q], succ)).or_insert(next);
            }
            block = refined;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }

        // Representative per block: prefer a terminal state's name for decided classes.
        let mut rep: Vec<Option<StateId>> = vec![None; count];
        for &q in &states {
            let b = block[q];
            match rep[b] {
                None => rep[b] = Some(q),
                Some(r) if !self.is_terminal(r) && self.is_terminal(q) => rep[b] = Some(q),
                _ => {}
            }
        }
        let decided = |b: usize| match table[rep[b].unwrap()] {
            Decidedness::Decided(y) => Some(y),
            Decidedness::Undecided => None,
        };

        // Number blocks in BFS order from the initial block.
        let init_block = block[self.initial];
        let mut number: Vec<Option<usize>> = vec![None; count];
        let mut order = Vec::with_capacity(count + 1);
        let mut names = Vec::new();
        let mut output = Vec::new();
        // A decided initial block would make the initial state terminal; keep a
        // separate reading state in front of it instead.
        let fresh_initial = decided(init_block).is_some();
        if fresh_initial {
            names.push(self.names[self.initial].clone());
            output.push(None);
        }
        let mut queue = VecDeque::from([init_block]);
        number[init_block] = Some(names.len());
        while let Some(b) = queue.pop_front() {
            order.push(b);
            names.push(self.names[rep[b].unwrap()].clone());
            output.push(decided(b));
            for s in self.alphabet.symbols() {
                let t = block[self.next(rep[b].unwrap(), s)];
                if number[t].is_none() {
                    number[t] = Some(number.iter().flatten().count() + usize::from(fresh_initial));
                    queue.push_back(t);
                }
            }
        }
        let mut transitions = Vec::with_capacity(names.len());
        if fresh_initial {
            transitions.push(vec![number[init_block].unwrap(); self.alphabet.len()]);
        }
        for &b in &order {
            let row: Vec<usize> = if decided(b).is_some() {
                vec![number[b].unwrap(); self.alphabet.len()]
            } else {
                self.alphabet
                    .symbols()
                    .map(|s| number[block[self.next(rep[b].unwrap(), s)]].unwrap())
                    .collect()
            };
            transitions.push(row);
        }
        DecisionAutomaton::new(&self.alphabet, &self.decisions, names, 0, transitions, output)
    }
}
