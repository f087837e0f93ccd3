use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::{Analyzer, MinimalSufficient, RuleHandle};
use crate::error::{Error, Result};
use crate::heuristics::{CsrSpec, OsrSpec};
use crate::seq::{SeqSpec, Symbol};

/// Decisive alternatives `D` are chosen by every minimal sufficient segment
/// containing them; `complement` is `D' = X \ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisiveSet {
    pub decisive: BTreeSet<Symbol>,
    pub complement: BTreeSet<Symbol>,
    /// For each `x ∈ D'`, the first minimal sufficient segment containing `x` that does not choose it.
    pub witnesses: BTreeMap<Symbol, MinimalSufficient>,
}

/// A recovered spec and the number of witness-family sequences it was verified on.
#[derive(Clone, Debug, PartialEq)]
pub struct Identification<T> {
    pub spec: T,
    pub checked: usize,
}

struct Mismatch {
    sequence: SeqSpec,
    rule: Symbol,
    recovered: Symbol,
}

impl Analyzer {
    pub fn decisive_set(&self) -> Result<DecisiveSet> {
        self.require_choice()?;
        let mut witnesses = BTreeMap::new();
        for m in &self.minimal {
            for x in m.segment.symbol_set() {
                if x != m.decision {
                    witnesses.entry(x).or_insert_with(|| m.clone());
                }
            }
        }
        let complement: BTreeSet<Symbol> = witnesses.keys().copied().collect();
        let decisive = self.alphabet().symbols().filter(|x| !complement.contains(x)).collect();
        Ok(DecisiveSet { decisive, complement, witnesses })
    }

    /// Compares the rule with a recovered spec on the `K`-prefix family. When
    /// the recovered spec needs more than `K` positions, some `K`-prefix is
    /// not sufficient for it and one of its two continuations disagrees.
    fn verify<F>(&self, recovered: &RuleHandle, eval: F) -> Result<std::result::Result<usize, Mismatch>>
    where
        F: Fn(&SeqSpec) -> Result<Symbol> + Sync,
    {
        let family = self.family(self.bound);
        let first = family
            .par_iter()
            .map(|s| -> Result<Option<Mismatch>> {
                let (rule, found) = (self.decision_of_seq(s), eval(s)?);
                Ok((rule != found).then(|| Mismatch { sequence: s.clone(), rule, recovered: found }))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        if let Some(m) = first {
            return Ok(Err(m));
        }
        let other = Analyzer::new(recovered.clone())?;
        if other.uniform_bound() > self.bound {
            for s in &family {
                let word = s.prefix_of(self.bound).into_word();
                let mask = other.mask_of(&word);
                if mask.count_ones() > 1 {
                    for y in (0..64).filter(|b| mask >> b & 1 == 1).map(|b| Symbol(b as usize)) {
                        let seq = other.sequence_deciding(&word, y).expect("reachable");
                        let (rule, found) = (self.decision_of_seq(&seq), eval(&seq)?);
                        if rule != found {
                            return Ok(Err(Mismatch { sequence: seq, rule, recovered: found }));
                        }
                    }
                }
            }
            unreachable!("a K-prefix the recovered rule cannot decide yields a disagreement");
        }
        Ok(Ok(family.len()))
    }

    fn decision_of_seq(&self, s: &SeqSpec) -> Symbol {
        self.stop_and_decide(s).1
    }

    /// `n_x` is the stopping time on the constant-`x` sequence; the candidate
    /// is `v = 1`, `w(x) = 1/n_x`, verified before it is returned.
    pub fn identify_csr(&self) -> Result<Identification<CsrSpec>> {
        self.require_choice()?;
        let x = self.alphabet().clone();
        let mut weights = Vec::with_capacity(x.len());
        for s in x.symbols() {
            let constant = SeqSpec::constant(&x, s);
            let (n, d) = self.stop_and_decide(&constant);
            if d != s {
                return Err(Error::NotCsr {
                    sequence: constant.to_string(),
                    expected: x.name(d).to_string(),
                    found: x.name(s).to_string(),
                });
            }
            weights.push(BigRational::new(1.into(), n.into()));
        }
        let spec = CsrSpec::new(&x, weights, BigRational::one())?;
        let handle = RuleHandle::Automaton(spec.compile());
        match self.verify(&handle, |s| Ok(spec.evaluate(s)?.choice))? {
            Ok(checked) => Ok(Identification { spec, checked }),
            Err(Mismatch { sequence, rule, recovered }) => Err(Error::NotCsr {
                sequence: sequence.to_string(),
                expected: x.name(rule).to_string(),
                found: x.name(recovered).to_string(),
            }),
        }
    }

    /// Span `k = K`; `D` ranks first in alphabet order, then `D'` in the order
    /// revealed by minimal sufficient segments over `D'`; the threshold is the
    /// best of `D'` (the worst symbol overall when `D'` is empty).
    pub fn identify_osr(&self) -> Result<Identification<OsrSpec>> {
        let x = self.alphabet().clone();
        let ds = self.decisive_set()?;
        let mut beats: BTreeMap<Symbol, BTreeSet<Symbol>> = ds.complement.iter().map(|&s| (s, BTreeSet::new())).collect();
        for m in self.minimal_within_set(&ds.complement) {
            for y in m.segment.symbol_set() {
                if y != m.decision {
                    beats.get_mut(&m.decision).unwrap().insert(y);
                }
            }
        }
        let mut indegree: BTreeMap<Symbol, usize> = beats.keys().map(|&s| (s, 0)).collect();
        for losers in beats.values() {
            for l in losers {
                *indegree.get_mut(l).unwrap() += 1;
            }
        }
        let mut ready: BTreeSet<Symbol> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&s, _)| s).collect();
        let mut revealed = Vec::new();
        while let Some(s) = ready.pop_first() {
            revealed.push(s);
            for l in &beats[&s] {
                let d = indegree.get_mut(l).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(*l);
                }
            }
        }
        if revealed.len() != ds.complement.len() {
            return Err(Error::NotOsr("revealed preference among undecisive alternatives is cyclic".into()));
        }
        let mut order: Vec<Symbol> = ds.decisive.iter().copied().collect();
        order.extend(&revealed);
        let threshold = revealed.first().copied().unwrap_or(*order.last().unwrap());
        let spec = OsrSpec::new(&x, order, threshold, self.bound)?;
        let handle = RuleHandle::Automaton(spec.compile());
        match self.verify(&handle, |s| spec.evaluate(s))? {
            Ok(checked) => Ok(Identification { spec, checked }),
            Err(Mismatch { sequence, rule, recovered }) => Err(Error::NotOsr(format!(
                "disagreement on {sequence}: rule chooses {}, recovered OSR chooses {}",
                x.name(rule),
                x.name(recovered)
            ))),
        }
    }

    fn minimal_within_set<'a>(&'a self, allowed: &'a BTreeSet<Symbol>) -> impl Iterator<Item = &'a MinimalSufficient> {
        self.minimal.iter().filter(move |m| m.segment.symbol_set().is_subset(allowed))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{abc, csr3, osr_example, prefix_rule};
    use super::*;
    use crate::automaton::tests::{first_to_two, xy};
    use crate::heuristics::RuleSpec;
    use crate::seq::Alphabet;
    use num_bigint::BigInt;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn decisive_set_examples() {
        let an = Analyzer::new(RuleHandle::Automaton(osr_example().compile())).unwrap();
        let ds = an.decisive_set().unwrap();
        assert_eq!(ds.decisive, BTreeSet::from([Symbol(0)]));
        assert_eq!(ds.complement, BTreeSet::from([Symbol(1), Symbol(2)]));

        let a = abc();
        let k1 = OsrSpec::new(&a, vec![Symbol(0), Symbol(1), Symbol(2)], Symbol(2), 1).unwrap();
        let ds = Analyzer::new(RuleHandle::Automaton(k1.compile())).unwrap().decisive_set().unwrap();
        assert_eq!(ds.decisive.len(), 3);

        let ds = Analyzer::new(RuleHandle::Automaton(first_to_two())).unwrap().decisive_set().unwrap();
        assert!(ds.decisive.is_empty());
        let w = &ds.witnesses[&Symbol(1)];
        assert!(w.segment.contains(Symbol(1)) && w.decision == Symbol(0));
    }

    #[test]
    fn identify_csr_examples() {
        let x = xy();
        let fig = RuleHandle::black_box(&x, &x, 3, move |s| Ok(first_to_two().evaluate(s)?.decision)).unwrap();
        let id = Analyzer::new(fig).unwrap().identify_csr().unwrap();
        assert_eq!(id.spec.weights(), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(id.spec.threshold(), &ratio(1, 1));
        assert_eq!(id.checked, 8 * 2);

        let ab = Alphabet::new(["a", "b"]).unwrap();
        let src = CsrSpec::from_integers(&ab, &[1, 2], 3).unwrap();
        let id = Analyzer::new(RuleHandle::from_spec(&RuleSpec::Csr(src)).unwrap())
            .unwrap()
            .identify_csr()
            .unwrap();
        assert_eq!(id.spec.weights(), &[ratio(1, 3), ratio(1, 2)]);

        let first = Analyzer::new(prefix_rule(&abc(), 1, |w| w[0])).unwrap().identify_csr().unwrap();
        assert_eq!(first.spec.critical_counts(), &[1, 1, 1]);
    }

    #[test]
    fn identify_csr_rejects_non_csr() {
        let an = Analyzer::new(prefix_rule(&abc(), 2, |w| w[1])).unwrap();
        assert!(matches!(an.identify_csr(), Err(Error::NotCsr { .. })));
        let an = Analyzer::new(RuleHandle::Automaton(osr_example().compile())).unwrap();
        assert!(matches!(an.identify_csr(), Err(Error::NotCsr { .. })));
    }

    #[test]
    fn identify_osr_examples() {
        let a = abc();
        let src = osr_example();
        let id = Analyzer::new(RuleHandle::from_spec(&RuleSpec::Osr(src.clone())).unwrap())
            .unwrap()
            .identify_osr()
            .unwrap();
        assert_eq!(id.spec, src);

        let maximizer = OsrSpec::new(&a, vec![Symbol(1), Symbol(2), Symbol(0)], Symbol(1), 3).unwrap();
        let id = Analyzer::new(RuleHandle::Automaton(maximizer.compile())).unwrap().identify_osr().unwrap();
        assert_eq!(id.spec.order(), &[Symbol(1), Symbol(2), Symbol(0)]);
        assert_eq!(id.spec.threshold_alt(), Symbol(2));

        let k1 = OsrSpec::new(&a, vec![Symbol(2), Symbol(1), Symbol(0)], Symbol(1), 1).unwrap();
        let id = Analyzer::new(RuleHandle::Automaton(k1.compile())).unwrap().identify_osr().unwrap();
        assert_eq!(id.spec.span(), 1);
        assert_eq!(id.spec.order(), &[Symbol(0), Symbol(1), Symbol(2)]);
    }

    #[test]
    fn identify_osr_rejects_csr() {
        let an = Analyzer::new(RuleHandle::Automaton(csr3().compile())).unwrap();
        assert!(matches!(an.identify_osr(), Err(Error::NotOsr(_))));
    }
}
