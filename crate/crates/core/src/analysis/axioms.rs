use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use super::report::relabeling_names;
use super::{bit, single, Analyzer, Axiom, AxiomReport, MinimalSufficient, RevealedEdge, Suite, Transformation, Verdict, Witness};
use crate::error::Result;
use crate::heuristics::{config_encode, BitWord};
use crate::seq::{Relabeling, Segment, SeqSpec, Symbol};

/// Runs `f` over `items` in parallel and keeps the first counterexample in
/// enumeration order. Each call returns how many instances it examined, up to
/// and including its own counterexample.
fn first_violation<T, F>(items: &[T], f: F) -> (usize, Option<Witness>)
where
    T: Sync,
    F: Fn(&T) -> (usize, Option<Witness>) + Sync + Send,
{
    let results: Vec<(usize, Option<Witness>)> = items.par_iter().map(f).collect();
    let mut checked = 0;
    for (n, w) in results {
        checked += n;
        if w.is_some() {
            return (checked, w);
        }
    }
    (checked, None)
}

impl Analyzer {
    fn name(&self, s: Symbol) -> String {
        self.decisions().name(s).to_string()
    }

    fn report(&self, axiom: Axiom, (checked, witness): (usize, Option<Witness>)) -> AxiomReport {
        AxiomReport {
            axiom,
            verdict: witness.map_or(Verdict::Pass, |w| Verdict::Fail(Box::new(w))),
            checked,
            horizon: self.bound,
            extension: None,
        }
    }

    fn decision_of(&self, seq: &SeqSpec) -> Symbol {
        self.stop_and_decide(seq).1
    }

    /// Minimal sufficient segments whose symbols all lie in `allowed`.
    fn minimal_within<'a>(&'a self, allowed: &'a BTreeSet<Symbol>) -> Vec<&'a MinimalSufficient> {
        self.minimal
            .iter()
            .filter(|m| m.segment.symbol_set().is_subset(allowed))
            .collect()
    }

    pub fn check(&self, axiom: Axiom) -> Result<AxiomReport> {
        match axiom {
            Axiom::Monotonicity => self.check_monotonicity(),
            Axiom::InformationalDominance => self.check_informational_dominance(),
            Axiom::Replacement => self.check_replacement(),
            Axiom::SequentialAlpha => self.check_sequential_alpha(),
            Axiom::Snbc => self.check_snbc(),
            Axiom::Neutrality => self.check_neutrality(),
            Axiom::Acyclicity => self.check_acyclicity(),
        }
    }

    pub fn run_suite(&self, suite: Suite) -> Result<Vec<AxiomReport>> {
        suite.axioms().iter().map(|&a| self.check(a)).collect()
    }

    /// Favorable shifts and deletions at positions `1..=K` over the
    /// `(K+1)`-prefix family; a deletion pulls position `K+1` into the window.
    pub fn check_monotonicity(&self) -> Result<AxiomReport> {
        self.require_choice()?;
        let k = self.bound;
        let family = self.family(k + 1);
        let result = first_violation(&family, |s| {
            let x = self.decision_of(s);
            let mut n = 0;
            for i in 1..=k {
                let mut moves = Vec::with_capacity(2);
                if s.at(i + 1) == x && s.at(i) != x {
                    moves.push(Transformation::Shift(i));
                }
                if s.at(i) != x {
                    moves.push(Transformation::Deletion(i));
                }
                for t in moves {
                    n += 1;
                    let moved = t.apply(s);
                    let y = self.decision_of(&moved);
                    if y != x {
                        return (
                            n,
                            Some(Witness::Monotonicity {
                                sequence: s.clone(),
                                decision: self.name(x),
                                transformation: t,
                                transformed: moved,
                                transformed_decision: self.name(y),
                            }),
                        );
                    }
                }
            }
            (n, None)
        });
        Ok(self.report(Axiom::Monotonicity, result))
    }

    /// For minimal sufficient `M ↦ x`, `k < |M|` and sufficient `N` without
    /// `x`, no continuation of `M|_k · N` may decide `x`. Sufficiency is
    /// inherited by extensions and reachable decisions only shrink along
    /// them, so taking `N` minimal sufficient loses no counterexample.
    pub fn check_informational_dominance(&self) -> Result<AxiomReport> {
        self.require_choice()?;
        let mut seen = HashSet::new();
        let heads: Vec<(&MinimalSufficient, usize)> = self
            .minimal
            .iter()
            .flat_map(|m| (1..m.segment.len()).map(move |k| (m, k)))
            .filter(|(m, k)| seen.insert((m.segment.word()[..*k].to_vec(), m.decision)))
            .collect();
        let result = first_violation(&heads, |&(m, k)| {
            let x = m.decision;
            let head = &m.segment.word()[..k];
            let at_head = self.cursor(head);
            let mut n = 0;
            for dom in self.minimal.iter().filter(|d| !d.segment.contains(x)) {
                n += 1;
                let c = dom.segment.word().iter().fold(at_head, |c, &s| self.engine.advance(c, s));
                if self.engine.mask(c) & bit(x) != 0 {
                    let mut word = head.to_vec();
                    word.extend_from_slice(dom.segment.word());
                    let sequence = self.sequence_deciding(&word, x).expect("x is reachable");
                    return (
                        n,
                        Some(Witness::InformationalDominance {
                            minimal: m.segment.clone(),
                            decision: self.name(x),
                            k,
                            dominated: dom.segment.clone(),
                            dominated_decision: self.name(dom.decision),
                            sequence,
                            sequence_decision: self.name(x),
                        }),
                    );
                }
            }
            (n, None)
        });
        Ok(self.report(Axiom::InformationalDominance, result))
    }

    /// Substituting any single position of a minimal sufficient segment over
    /// `D'` by another `D'` symbol keeps it sufficient.
    pub fn check_replacement(&self) -> Result<AxiomReport> {
        let complement = self.decisive_set()?.complement;
        let candidates = self.minimal_within(&complement);
        let result = first_violation(&candidates, |m| {
            let mut n = 0;
            for p in 1..=m.segment.len() {
                for &y in complement.iter().filter(|&&y| y != m.segment.at(p)) {
                    n += 1;
                    let replaced = m.segment.with_replaced(p, y);
                    let mask = self.mask_of(replaced.word());
                    if single(mask).is_none() {
                        let first_y = Symbol(mask.trailing_zeros() as usize);
                        let second_y = Symbol((mask & !bit(first_y)).trailing_zeros() as usize);
                        let first = self.sequence_deciding(replaced.word(), first_y).expect("reachable");
                        let second = self.sequence_deciding(replaced.word(), second_y).expect("reachable");
                        return (
                            n,
                            Some(Witness::Replacement {
                                minimal: m.segment.clone(),
                                decision: self.name(m.decision),
                                position: p,
                                replacement: self.alphabet().name(y).to_string(),
                                replaced,
                                first,
                                first_decision: self.name(first_y),
                                second,
                                second_decision: self.name(second_y),
                            }),
                        );
                    }
                }
            }
            (n, None)
        });
        Ok(self.report(Axiom::Replacement, result))
    }

    /// Minimal sufficient segments over `D'`, one representative per
    /// (symbol set, decision), in enumeration order.
    fn groups<'a>(&'a self, within: &[&'a MinimalSufficient]) -> Vec<(BTreeSet<Symbol>, &'a MinimalSufficient)> {
        let mut seen = HashSet::new();
        within
            .iter()
            .map(|m| (m.segment.symbol_set(), *m))
            .filter(|(set, m)| seen.insert((set.clone(), m.decision)))
            .collect()
    }

    /// `M(X) ⊆ M'(X)` and `d(M') ∈ M(X)` force `d(M') = d(M)` within `D'`.
    pub fn check_sequential_alpha(&self) -> Result<AxiomReport> {
        let complement = self.decisive_set()?.complement;
        let within = self.minimal_within(&complement);
        let groups = self.groups(&within);
        let result = first_violation(&within, |larger| {
            let big = larger.segment.symbol_set();
            let mut n = 0;
            for (set, smaller) in &groups {
                if !set.is_subset(&big) || !set.contains(&larger.decision) {
                    continue;
                }
                n += 1;
                if smaller.decision != larger.decision {
                    return (
                        n,
                        Some(Witness::SequentialAlpha {
                            smaller: smaller.segment.clone(),
                            smaller_decision: self.name(smaller.decision),
                            larger: larger.segment.clone(),
                            larger_decision: self.name(larger.decision),
                        }),
                    );
                }
            }
            (n, None)
        });
        Ok(self.report(Axiom::SequentialAlpha, result))
    }

    /// No binary cycle: `{x,y} ↦ x` and `{y,z} ↦ y` exclude `{x,z} ↦ z` within `D'`.
    pub fn check_snbc(&self) -> Result<AxiomReport> {
        let complement = self.decisive_set()?.complement;
        let within = self.minimal_within(&complement);
        let pairs: BTreeMap<(BTreeSet<Symbol>, Symbol), &MinimalSufficient> = self
            .groups(&within)
            .into_iter()
            .filter(|(set, _)| set.len() == 2)
            .map(|(set, m)| ((set, m.decision), m))
            .collect();
        let find = |a: Symbol, b: Symbol, d: Symbol| pairs.get(&(BTreeSet::from([a, b]), d)).copied();
        let mut checked = 0;
        for &x in &complement {
            for &y in complement.iter().filter(|&&y| y != x) {
                for &z in complement.iter().filter(|&&z| z != x && z != y) {
                    let (Some(first), Some(second)) = (find(x, y, x), find(y, z, y)) else {
                        continue;
                    };
                    checked += 1;
                    if let Some(third) = find(x, z, z) {
                        let witness = Witness::Snbc {
                            first: first.segment.clone(),
                            first_decision: self.name(x),
                            second: second.segment.clone(),
                            second_decision: self.name(y),
                            third: third.segment.clone(),
                            third_decision: self.name(z),
                        };
                        return Ok(self.report(Axiom::Snbc, (checked, Some(witness))));
                    }
                }
            }
        }
        Ok(self.report(Axiom::Snbc, (checked, None)))
    }

    /// `d(σS) = σ(d(S))` for every relabeling over the `K`-prefix family.
    pub fn check_neutrality(&self) -> Result<AxiomReport> {
        self.require_choice()?;
        let family = self.family(self.bound);
        let sigmas: Vec<Relabeling> = Relabeling::all(self.alphabet().len()).into_iter().skip(1).collect();
        let result = first_violation(&family, |s| {
            let x = self.decision_of(s);
            let mut n = 0;
            for sigma in &sigmas {
                n += 1;
                let relabeled = s.relabel(sigma).expect("relabeling matches the alphabet");
                let y = self.decision_of(&relabeled);
                if y != sigma.apply(x) {
                    return (
                        n,
                        Some(Witness::Neutrality {
                            sequence: s.clone(),
                            decision: self.name(x),
                            relabeling: relabeling_names(self.alphabet(), sigma),
                            relabeled,
                            relabeled_decision: self.name(y),
                        }),
                    );
                }
            }
            (n, None)
        });
        Ok(self.report(Axiom::Neutrality, result))
    }

    /// Revealed relation on window-`K` configurations: the chosen symbol's
    /// configuration beats every other occurring symbol's. Passes iff acyclic;
    /// the report then carries a best-first linear extension.
    pub fn check_acyclicity(&self) -> Result<AxiomReport> {
        self.require_choice()?;
        let k = self.bound;
        let family = self.family(k);
        let per_seq: Vec<Vec<(BitWord, BitWord, Symbol, Symbol)>> = family
            .par_iter()
            .map(|s| {
                let x = self.decision_of(s);
                let window: Segment = s.prefix_of(k);
                if !window.contains(x) {
                    return Vec::new();
                }
                let from = config_encode(s, x, k);
                window
                    .symbol_set()
                    .into_iter()
                    .filter(|&y| y != x)
                    .map(|y| (from, config_encode(s, y, k), x, y))
                    .collect()
            })
            .collect();
        let mut edges: BTreeMap<(BitWord, BitWord), (usize, Symbol, Symbol)> = BTreeMap::new();
        for (i, list) in per_seq.iter().enumerate() {
            for &(a, b, x, y) in list {
                edges.entry((a, b)).or_insert((i, x, y));
            }
        }
        let mut adjacency: BTreeMap<BitWord, Vec<BitWord>> = BTreeMap::new();
        for &(a, b) in edges.keys() {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default();
        }
        let checked = family.len();
        match find_cycle(&adjacency) {
            Some(cycle) => {
                let cycle = (0..cycle.len())
                    .map(|i| {
                        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                        let (seq, x, y) = edges[&(a, b)];
                        RevealedEdge {
                            from: a.to_string(),
                            to: b.to_string(),
                            sequence: family[seq].clone(),
                            chosen: self.name(x),
                            other: self.name(y),
                        }
                    })
                    .collect();
                Ok(self.report(Axiom::Acyclicity, (checked, Some(Witness::Acyclicity { cycle }))))
            }
            None => {
                let mut report = self.report(Axiom::Acyclicity, (checked, None));
                report.extension = Some(topological_order(&adjacency).iter().map(ToString::to_string).collect());
                Ok(report)
            }
        }
    }
}

/// First cycle found by iterative depth-first search in key order.
fn find_cycle<N: Ord + Copy>(adjacency: &BTreeMap<N, Vec<N>>) -> Option<Vec<N>> {
    #[derive(Copy, Clone, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark: BTreeMap<N, Mark> = adjacency.keys().map(|&n| (n, Mark::New)).collect();
    for &start in adjacency.keys() {
        if mark[&start] != Mark::New {
            continue;
        }
        let mut stack: Vec<(N, usize)> = vec![(start, 0)];
        mark.insert(start, Mark::Active);
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            let children = &adjacency[&node];
            if *next == children.len() {
                mark.insert(node, Mark::Done);
                stack.pop();
                continue;
            }
            let child = children[*next];
            *next += 1;
            match mark[&child] {
                Mark::New => {
                    mark.insert(child, Mark::Active);
                    stack.push((child, 0));
                }
                Mark::Active => {
                    let from = stack.iter().position(|&(n, _)| n == child).unwrap();
                    return Some(stack[from..].iter().map(|&(n, _)| n).collect());
                }
                Mark::Done => {}
            }
        }
    }
    None
}

/// Kahn's algorithm, smallest ready node first.
fn topological_order<N: Ord + Copy>(adjacency: &BTreeMap<N, Vec<N>>) -> Vec<N> {
    let mut indegree: BTreeMap<N, usize> = adjacency.keys().map(|&n| (n, 0)).collect();
    for children in adjacency.values() {
        for c in children {
            *indegree.get_mut(c).unwrap() += 1;
        }
    }
    let mut ready: BTreeSet<N> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&n, _)| n).collect();
    let mut order = Vec::with_capacity(adjacency.len());
    while let Some(n) = ready.pop_first() {
        order.push(n);
        for c in &adjacency[&n] {
            let d = indegree.get_mut(c).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(*c);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::super::tests::{abc, csr3, osr_example, prefix_rule};
    use super::super::RuleHandle;
    use super::*;
    use crate::automaton::tests::xy;
    use crate::heuristics::{Comparator, ConfigRuleSpec, CsrSpec, OsrSpec, RuleSpec};
    use crate::seq::Alphabet;

    fn analyzer(rule: RuleHandle) -> Analyzer {
        Analyzer::new(rule).unwrap()
    }

    fn assert_fails_and_replays(an: &Analyzer, report: &AxiomReport) {
        let w = report.witness().unwrap_or_else(|| panic!("{} should fail", report.axiom));
        assert!(w.replay(an.rule(), an.uniform_bound()).unwrap(), "{w:?} does not replay");
    }

    /// Chooses the second position.
    fn second(a: &Alphabet) -> RuleHandle {
        prefix_rule(a, 2, |w| w[1])
    }

    #[test]
    fn csr_passes_its_axioms() {
        for spec in [csr3(), CsrSpec::from_integers(&abc(), &[2, 1, 3], 4).unwrap()] {
            let an = analyzer(RuleHandle::Automaton(spec.compile()));
            for r in an.run_suite(Suite::Csr).unwrap() {
                assert!(r.passed(), "{:?}", r);
                assert!(r.checked > 0);
            }
        }
    }

    #[test]
    fn monotonicity_rejects_second_position_rule() {
        let an = analyzer(second(&abc()));
        let r = an.check_monotonicity().unwrap();
        assert_fails_and_replays(&an, &r);
        // Deleting position 1 of (a b c ...) with d = b exposes c.
        let a = abc();
        let deletion = Witness::Monotonicity {
            sequence: SeqSpec::parse(&a, "a b c|c").unwrap(),
            decision: "b".into(),
            transformation: Transformation::Deletion(1),
            transformed: SeqSpec::parse(&a, "b c|c").unwrap(),
            transformed_decision: "c".into(),
        };
        assert!(deletion.replay(an.rule(), an.uniform_bound()).unwrap());
    }

    #[test]
    fn monotonicity_accepts_first_position_rule() {
        let x = xy();
        // Window 3 so that K = 1 is derived, not declared.
        let rule = RuleHandle::black_box(&x, &x, 3, |s| Ok(s.at(1))).unwrap();
        assert!(analyzer(rule).check_monotonicity().unwrap().passed());
    }

    #[test]
    fn informational_dominance_example() {
        let an = analyzer(RuleHandle::Automaton(csr3().compile()));
        let a = abc();
        let word = Segment::parse(&a, "a b c a b c b b c b b").unwrap();
        assert_eq!(an.decided(word.word()), Some(Symbol(1)));
        assert!(an.check_informational_dominance().unwrap().passed());
    }

    #[test]
    fn informational_dominance_rejects_first_unless_repeated() {
        // S(1) unless S(1) = S(2), then S(3).
        let an = analyzer(prefix_rule(&abc(), 3, |w| if w[0] == w[1] { w[2] } else { w[0] }));
        let r = an.check_informational_dominance().unwrap();
        assert_fails_and_replays(&an, &r);
    }

    #[test]
    fn osr_passes_its_axioms() {
        let a = abc();
        let specs = [
            osr_example(),
            OsrSpec::new(&a, vec![Symbol(2), Symbol(0), Symbol(1)], Symbol(1), 3).unwrap(),
            OsrSpec::new(&a, vec![Symbol(0), Symbol(1), Symbol(2)], Symbol(0), 3).unwrap(),
        ];
        for spec in specs {
            let an = analyzer(RuleHandle::from_spec(&RuleSpec::Osr(spec)).unwrap());
            for r in an.run_suite(Suite::Osr).unwrap() {
                assert!(r.passed(), "{:?}", r);
            }
        }
    }

    #[test]
    fn replacement_rejects_csr_with_unequal_counts() {
        // n_a = 1, n_b = n_c = 3.
        let spec = CsrSpec::from_integers(&abc(), &[3, 1, 1], 3).unwrap();
        let an = analyzer(RuleHandle::Automaton(spec.compile()));
        let r = an.check_replacement().unwrap();
        assert_fails_and_replays(&an, &r);
        let a = abc();
        assert_eq!(an.decided(Segment::parse(&a, "b b c").unwrap().word()), None);
    }

    #[test]
    fn replacement_is_vacuous_with_one_undecisive_symbol() {
        let a = abc();
        // D' = {c}: a and b are above the threshold.
        let spec = OsrSpec::new(&a, vec![Symbol(0), Symbol(1), Symbol(2)], Symbol(2), 2).unwrap();
        let an = analyzer(RuleHandle::Automaton(spec.compile()));
        assert_eq!(an.decisive_set().unwrap().complement.len(), 1);
        let r = an.check_replacement().unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 0);
    }

    #[test]
    fn sequential_alpha_rejects_second_position_rule() {
        let an = analyzer(second(&abc()));
        let r = an.check_sequential_alpha().unwrap();
        assert_fails_and_replays(&an, &r);
    }

    #[test]
    fn snbc_rejects_binary_cycle() {
        // a beats b, b beats c, c beats a.
        let beats = |p: Symbol, q: Symbol| matches!((p.0, q.0), (0, 1) | (1, 2) | (2, 0));
        let an = analyzer(prefix_rule(&abc(), 2, |w| if w[0] == w[1] || beats(w[0], w[1]) { w[0] } else { w[1] }));
        let r = an.check_snbc().unwrap();
        assert_fails_and_replays(&an, &r);
        assert!(an.check_snbc().unwrap() == r, "deterministic");
    }

    #[test]
    fn snbc_is_vacuous_on_two_symbols() {
        let an = analyzer(prefix_rule(&xy(), 2, |w| w[1]));
        let r = an.check_snbc().unwrap();
        assert!(r.passed() && r.checked == 0);
    }

    #[test]
    fn neutrality_rejects_unequal_weights() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let spec = CsrSpec::from_integers(&ab, &[3, 1], 3).unwrap();
        let an = analyzer(RuleHandle::Automaton(spec.compile()));
        let r = an.check_neutrality().unwrap();
        assert_fails_and_replays(&an, &r);
        let s = SeqSpec::parse(&ab, "b a|a").unwrap();
        let swapped = s.relabel(&Relabeling::swap(2, Symbol(0), Symbol(1))).unwrap();
        assert_eq!(an.decision_of(&s), Symbol(0));
        assert_eq!(an.decision_of(&swapped), Symbol(0));
    }

    #[test]
    fn neutrality_is_vacuous_on_one_symbol() {
        let one = Alphabet::new(["a"]).unwrap();
        let r = analyzer(prefix_rule(&one, 2, |w| w[0])).check_neutrality().unwrap();
        assert!(r.passed() && r.checked == 0);
    }

    #[test]
    fn config_rules_pass_their_axioms() {
        for comparator in [Comparator::FirstPositionPriority, Comparator::NumericValue] {
            let spec = ConfigRuleSpec::new(&abc(), 3, comparator).unwrap();
            let an = analyzer(RuleHandle::Automaton(spec.compile()));
            for r in an.run_suite(Suite::Config).unwrap() {
                assert!(r.passed(), "{:?}", r);
            }
        }
    }

    #[test]
    fn first_position_priority_relation_embeds_in_comparator() {
        let x = xy();
        let spec = ConfigRuleSpec::new(&x, 3, Comparator::FirstPositionPriority).unwrap();
        // Declared horizon 3, so K = 1 and the window is one position.
        let rule = RuleHandle::from_spec(&RuleSpec::Config(spec.clone())).unwrap();
        let an = analyzer(rule);
        let r = an.check_acyclicity().unwrap();
        assert!(r.passed());
        let ext = r.extension.unwrap();
        let ranks: Vec<i128> = ext
            .iter()
            .map(|w| {
                let w: BitWord = w.parse().unwrap();
                ConfigRuleSpec::new(&x, w.len(), Comparator::FirstPositionPriority).unwrap().rank(w)
            })
            .collect();
        assert!(ranks.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn acyclicity_rejects_three_cycle() {
        let an = analyzer(three_cycle_rule());
        let r = an.check_acyclicity().unwrap();
        assert_fails_and_replays(&an, &r);
        let Some(Witness::Acyclicity { cycle }) = r.witness() else { unreachable!() };
        assert_eq!(cycle.len(), 3);
        // The neutral construction passes neutrality.
        assert!(an.check_neutrality().unwrap().passed());
    }

    /// Neutral window-4 rule: choose S(1), except that configuration triples
    /// {1001, 0100, 0010} choose 0100 and {1000, 0010, 0101} choose 0010,
    /// closing 1000 ▷ 0100 ▷ 0010 ▷ 1000.
    pub(crate) fn three_cycle_rule() -> RuleHandle {
        let a = abc();
        prefix_rule(&a, 4, |w| {
            let config = |x: Symbol| w.iter().enumerate().filter(|(_, &s)| s == x).fold(0u8, |m, (i, _)| m | 1 << i);
            let present: BTreeSet<u8> = w.iter().map(|&s| config(s)).collect();
            let pick = |target: u8| *w.iter().find(|&&s| config(s) == target).unwrap();
            // Bits are position-1-first: 1001 is positions 1 and 4.
            if present == BTreeSet::from([0b1001, 0b0010, 0b0100]) {
                pick(0b0010)
            } else if present == BTreeSet::from([0b0001, 0b0100, 0b1010]) {
                pick(0b0100)
            } else {
                w[0]
            }
        })
    }
}
