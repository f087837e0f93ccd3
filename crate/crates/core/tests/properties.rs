use proptest::prelude::*;

use seqdec::analysis::{Analyzer, RuleHandle};
use seqdec::automaton::{DecisionAutomaton, Sufficiency};
use seqdec::heuristics::{Comparator, ConfigRuleSpec, CsrSpec, OsrSpec, RuleSpec};
use seqdec::machines::automaton_to_tm;
use seqdec::seq::{Alphabet, Relabeling, SeqSpec, Symbol};

fn alphabet(n: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"][..n].iter().copied()).unwrap()
}

fn csr() -> impl Strategy<Value = RuleSpec> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(1i64..=3, n), 1i64..=4))
        .prop_map(|(n, w, v)| RuleSpec::Csr(CsrSpec::from_integers(&alphabet(n), &w, v).unwrap()))
}

fn osr() -> impl Strategy<Value = RuleSpec> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 0..n, 1usize..=4))
        .prop_map(|(n, order, t, k)| {
            let order: Vec<Symbol> = order.into_iter().map(Symbol).collect();
            RuleSpec::Osr(OsrSpec::new(&alphabet(n), order, Symbol(t), k).unwrap())
        })
}

fn config() -> impl Strategy<Value = RuleSpec> {
    (2usize..=3, 1usize..=3, 0usize..3).prop_map(|(n, window, c)| {
        let comparator = match c {
            0 => Comparator::FirstPositionPriority,
            1 => Comparator::NumericValue,
            _ => Comparator::Table((0..1i64 << window).rev().collect()),
        };
        RuleSpec::Config(ConfigRuleSpec::new(&alphabet(n), window, comparator).unwrap())
    })
}

fn rule() -> impl Strategy<Value = RuleSpec> {
    prop_oneof![csr(), osr(), config()]
}

/// A random eventually periodic sequence over the rule's alphabet.
fn with_sequence(rule: RuleSpec) -> impl Strategy<Value = (RuleSpec, SeqSpec)> {
    let n = rule.alphabet().len();
    (Just(rule), prop::collection::vec(0..n, 0..6), prop::collection::vec(0..n, 1..4)).prop_map(|(r, p, c)| {
        let x = r.alphabet().clone();
        let seq = SeqSpec::new(&x, p.into_iter().map(Symbol).collect(), c.into_iter().map(Symbol).collect()).unwrap();
        (r, seq)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compiled_automaton_agrees_with_evaluator((rule, seq) in rule().prop_flat_map(with_sequence)) {
        let aut = rule.compile();
        prop_assert_eq!(aut.evaluate(&seq).unwrap().decision, rule.evaluate(&seq).unwrap());
    }

    #[test]
    fn minimization_preserves_decisions((rule, seq) in rule().prop_flat_map(with_sequence)) {
        let aut = rule.compile();
        let min = aut.minimize().unwrap();
        prop_assert!(min.num_states() <= aut.num_states());
        prop_assert_eq!(min.evaluate(&seq).unwrap().decision, aut.evaluate(&seq).unwrap().decision);
        prop_assert_eq!(min.verify_stopping(), aut.verify_stopping());
        prop_assert!(min.minimize().unwrap().is_isomorphic(&min));
    }

    #[test]
    fn automaton_json_round_trips(rule in rule()) {
        let aut = rule.compile();
        let back = DecisionAutomaton::from_json(&aut.to_json()).unwrap();
        prop_assert!(back.is_isomorphic(&aut));
    }

    #[test]
    fn rule_json_round_trips(rule in rule()) {
        let back = RuleSpec::from_json(&rule.to_json()).unwrap();
        prop_assert_eq!(back.to_value(), rule.to_value());
    }

    #[test]
    fn stopping_prefix_is_minimal_sufficient((rule, seq) in rule().prop_flat_map(with_sequence)) {
        let an = Analyzer::new(RuleHandle::Automaton(rule.compile())).unwrap();
        let k = an.stopping_time(&seq).unwrap();
        prop_assert!(k >= 1 && k <= an.uniform_bound());
        let d = an.decide(&seq).unwrap();
        prop_assert_eq!(an.sufficiency(&seq.prefix_of(k)).unwrap(), Sufficiency::MinimalSufficient(d));
        if k > 1 {
            prop_assert_eq!(an.sufficiency(&seq.prefix_of(k - 1)).unwrap(), Sufficiency::NotSufficient);
        }
    }

    #[test]
    fn config_rules_commute_with_relabeling(
        (rule, seq) in config().prop_flat_map(with_sequence),
        swap in (0usize..3, 0usize..3),
    ) {
        let n = rule.alphabet().len();
        let sigma = Relabeling::swap(n, Symbol(swap.0 % n), Symbol(swap.1 % n));
        let relabeled = seq.relabel(&sigma).unwrap();
        prop_assert_eq!(rule.evaluate(&relabeled).unwrap(), sigma.apply(rule.evaluate(&seq).unwrap()));
    }

    #[test]
    fn embedded_machine_agrees((rule, seq) in rule().prop_flat_map(with_sequence)) {
        let aut = rule.compile();
        let tm = automaton_to_tm(&aut).unwrap();
        let k = aut.verify_stopping().bound().unwrap();
        let run = tm.run(&seq, 3 * k).unwrap();
        prop_assert_eq!(run.decision, rule.evaluate(&seq).unwrap());
    }
}
