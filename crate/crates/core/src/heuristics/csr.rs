use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::automaton::DecisionAutomaton;
use crate::error::{Error, Result};
use crate::seq::{Alphabet, SeqSpec, Symbol};

/// Largest critical count accepted; keeps compiled automata and bounds finite in practice.
const MAX_CRITICAL_COUNT: usize = 1 << 20;

/// Cardinal satisficing: choose the first alternative whose cumulative weight
/// `#x(S|_N) · w(x)` reaches the threshold `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrSpec {
    alphabet: Alphabet,
    weights: Vec<BigRational>,
    threshold: BigRational,
    critical: Vec<usize>,
}

/// Result of a direct CSR evaluation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CsrChoice {
    pub choice: Symbol,
    pub stop: usize,
}

impl CsrSpec {
    pub fn new(alphabet: &Alphabet, weights: Vec<BigRational>, threshold: BigRational) -> Result<Self> {
        if weights.len() != alphabet.len() {
            return Err(Error::InvalidRule(format!(
                "{} weights for {} symbols",
                weights.len(),
                alphabet.len()
            )));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::InvalidRule(format!(
                "weight of `{}` must be positive, got {w}",
                alphabet.name(Symbol(i))
            )));
        }
        if !threshold.is_positive() {
            return Err(Error::InvalidRule(format!("threshold must be positive, got {threshold}")));
        }
        let critical = weights
            .iter()
            .map(|w| {
                (&threshold / w)
                    .ceil()
                    .to_integer()
                    .to_usize()
                    .filter(|&n| n <= MAX_CRITICAL_COUNT)
                    .ok_or_else(|| Error::InvalidRule(format!("critical count v/w = {} too large", &threshold / w)))
            })
            .collect::<Result<_>>()?;
        Ok(CsrSpec { alphabet: alphabet.clone(), weights, threshold, critical })
    }

    /// Convenience constructor from integer weights and threshold.
    pub fn from_integers(alphabet: &Alphabet, weights: &[i64], threshold: i64) -> Result<Self> {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        CsrSpec::new(alphabet, weights.iter().map(|&w| r(w)).collect(), r(threshold))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn weight(&self, x: Symbol) -> &BigRational {
        &self.weights[x.0]
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn threshold(&self) -> &BigRational {
        &self.threshold
    }

    /// Scans positions accumulating exact weights; the first symbol to reach
    /// the threshold is the only one whose total changed at that position, so
    /// it is the unique chooser.
    pub fn evaluate(&self, seq: &SeqSpec) -> Result<CsrChoice> {
        self.alphabet.check_same(seq.alphabet(), "csr evaluate")?;
        let mut totals = vec![BigRational::zero(); self.alphabet.len()];
        for (i, s) in seq.positions().enumerate().take(self.uniform_bound()) {
            totals[s.0] += &self.weights[s.0];
            if totals[s.0] >= self.threshold {
                debug_assert!(totals
                    .iter()
                    .enumerate()
                    .all(|(y, t)| y == s.0 || *t < self.threshold));
                return Ok(CsrChoice { choice: s, stop: i + 1 });
            }
        }
        unreachable!("some symbol crosses the threshold within the uniform bound")
    }

    /// `n_x = ⌈v / w(x)⌉`: occurrences of `x` needed to reach the threshold.
    pub fn critical_counts(&self) -> &[usize] {
        &self.critical
    }

    /// Worst case: every symbol one occurrence short, then one more symbol.
    pub fn uniform_bound(&self) -> usize {
        1 + self.critical.iter().map(|n| n - 1).sum::<usize>()
    }

    /// Occurrence-count automaton: one state per vector `(c_x)` with
    /// `c_x < n_x` reachable from zero, plus one absorbing terminal per symbol.
    pub fn compile(&self) -> DecisionAutomaton {
        let n = self.alphabet.len();
        let name_of = |counts: &[usize]| -> String {
            let parts: String = counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(x, c)| format!("{c}_{}", self.alphabet.name(Symbol(x))))
                .collect();
            if parts.is_empty() {
                "q0".to_string()
            } else {
                parts
            }
        };
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut vectors: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        let zero = vec![0; n];
        index.insert(zero.clone(), 0);
        vectors.push(zero.clone());
        queue.push_back(zero);
        let mut edges: Vec<Vec<Result<usize, Symbol>>> = Vec::new();
        while let Some(counts) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for s in self.alphabet.symbols() {
                if counts[s.0] + 1 >= self.critical[s.0] {
                    row.push(Err(s));
                    continue;
                }
                let mut next = counts.clone();
                next[s.0] += 1;
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    vectors.push(next.clone());
                    queue.push_back(next);
                    vectors.len() - 1
                });
                row.push(Ok(id));
            }
            edges.push(row);
        }
        let inner = vectors.len();
        let mut names: Vec<String> = vectors.iter().map(|c| name_of(c)).collect();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for s in self.alphabet.symbols() {
            let mut name = format!("{}_{}", self.critical[s.0], self.alphabet.name(s));
            while !taken.insert(name.clone()) {
                name.push('\'');
            }
            names.push(name);
        }
        let mut transitions: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or_else(|s| inner + s.0)).collect())
            .collect();
        let mut output = vec![None; inner];
        for s in self.alphabet.symbols() {
            transitions.push(vec![inner + s.0; n]);
            output.push(Some(s));
        }
        DecisionAutomaton::new(&self.alphabet, &self.alphabet, names, 0, transitions, output)
            .expect("count-vector automaton is well formed")
    }
}
