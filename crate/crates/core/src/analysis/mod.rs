//! Rule-agnostic stopping analysis, axiom checking and parameter
//! identification.
//!
//! Every "for all tails" quantifier is discharged exactly: a rule whose
//! decisions are fixed by the first `K` positions is fully described by its
//! decisions on `K`-prefixes, so the analyses work on the segment tree up to
//! depth `K`.

mod axioms;
mod identify;
mod report;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

pub use identify::{DecisiveSet, Identification};
pub use report::{Axiom, AxiomReport, RevealedEdge, Suite, Transformation, Verdict, Witness};

use crate::automaton::{DecisionAutomaton, Sufficiency};
use crate::error::{Error, Result};
use crate::heuristics::RuleSpec;
use crate::machines::TwoTapeTm;
use crate::seq::{enumerate_segments, Alphabet, Segment, SeqSpec, Symbol};

/// Decision masks are `u64` bitsets over the decision alphabet.
pub const MAX_DECISIONS: usize = 64;
/// Largest black-box table (`|X|^H` leaves) built for analysis.
pub const MAX_TABLE_LEAVES: usize = 1 << 22;

pub type Evaluator = Arc<dyn Fn(&SeqSpec) -> Result<Symbol> + Send + Sync>;

/// A rule under analysis: an automaton, or a pure evaluator whose decisions
/// are asserted to depend on the first `horizon` positions only.
#[derive(Clone)]
pub enum RuleHandle {
    Automaton(DecisionAutomaton),
    BlackBox {
        alphabet: Alphabet,
        decisions: Alphabet,
        horizon: usize,
        evaluator: Evaluator,
    },
}

impl fmt::Debug for RuleHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleHandle::Automaton(a) => f.debug_tuple("Automaton").field(&a.num_states()).finish(),
            RuleHandle::BlackBox { alphabet, horizon, .. } => f
                .debug_struct("BlackBox")
                .field("alphabet", alphabet)
                .field("horizon", horizon)
                .finish_non_exhaustive(),
        }
    }
}

impl RuleHandle {
    pub fn black_box<F>(alphabet: &Alphabet, decisions: &Alphabet, horizon: usize, evaluator: F) -> Result<Self>
    where
        F: Fn(&SeqSpec) -> Result<Symbol> + Send + Sync + 'static,
    {
        if horizon == 0 {
            return Err(Error::InvalidRule("black-box horizon must be at least 1".into()));
        }
        Ok(RuleHandle::BlackBox {
            alphabet: alphabet.clone(),
            decisions: decisions.clone(),
            horizon,
            evaluator: Arc::new(evaluator),
        })
    }

    /// The rule's direct evaluator as a black box; the horizon is the
    /// compiled automaton's uniform bound.
    pub fn from_spec(spec: &RuleSpec) -> Result<Self> {
        let horizon = spec.compile().require_stopping()?;
        let owned = spec.clone();
        RuleHandle::black_box(spec.alphabet(), spec.alphabet(), horizon, move |s| owned.evaluate(s))
    }

    pub fn from_tm(tm: &TwoTapeTm, horizon: usize, budget: usize) -> Result<Self> {
        let owned = tm.clone();
        RuleHandle::black_box(tm.input_alphabet(), tm.decisions(), horizon, move |s| {
            owned.run(s, budget).map(|r| r.decision)
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            RuleHandle::Automaton(a) => a.alphabet(),
            RuleHandle::BlackBox { alphabet, .. } => alphabet,
        }
    }

    pub fn decisions(&self) -> &Alphabet {
        match self {
            RuleHandle::Automaton(a) => a.decisions(),
            RuleHandle::BlackBox { decisions, .. } => decisions,
        }
    }

    pub fn is_choice_rule(&self) -> bool {
        self.alphabet() == self.decisions()
    }

    pub fn evaluate(&self, seq: &SeqSpec) -> Result<Symbol> {
        match self {
            RuleHandle::Automaton(a) => a.evaluate(seq).map(|e| e.decision),
            RuleHandle::BlackBox { evaluator, .. } => evaluator(seq),
        }
    }
}

/// Position in the segment tree; for automata `node` is a state, for tables
/// it indexes the words of length `min(depth, H)` in base `|X|`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cursor {
    depth: usize,
    node: usize,
}

enum Engine {
    Automaton {
        aut: DecisionAutomaton,
        /// Decisions reachable from each state.
        masks: Vec<u64>,
    },
    Table {
        n: usize,
        horizon: usize,
        /// `levels[d][w]`: decisions over all extensions of the depth-`d` word `w`.
        levels: Vec<Vec<u64>>,
    },
}

fn bit(y: Symbol) -> u64 {
    1 << y.0
}

fn single(mask: u64) -> Option<Symbol> {
    (mask.count_ones() == 1).then(|| Symbol(mask.trailing_zeros() as usize))
}

impl Engine {
    fn new(rule: &RuleHandle) -> Result<Self> {
        if rule.decisions().len() > MAX_DECISIONS {
            return Err(Error::TooManyDecisions(rule.decisions().len()));
        }
        match rule {
            RuleHandle::Automaton(aut) => {
                aut.require_stopping()?;
                let mut masks: Vec<u64> = (0..aut.num_states()).map(|q| aut.output(q).map_or(0, bit)).collect();
                loop {
                    let mut changed = false;
                    for q in 0..aut.num_states() {
                        let m = aut.alphabet().symbols().fold(masks[q], |m, s| m | masks[aut.next(q, s)]);
                        changed |= m != masks[q];
                        masks[q] = m;
                    }
                    if !changed {
                        break;
                    }
                }
                Ok(Engine::Automaton { aut: aut.clone(), masks })
            }
            RuleHandle::BlackBox { alphabet, decisions, horizon, evaluator } => {
                let n = alphabet.len();
                let leaves = n
                    .checked_pow(*horizon as u32)
                    .filter(|&l| l <= MAX_TABLE_LEAVES)
                    .ok_or_else(|| Error::InvalidRule(format!("horizon {horizon} too large for |X| = {n}")))?;
                let words: Vec<Segment> = enumerate_segments(alphabet, *horizon).collect();
                debug_assert_eq!(words.len(), leaves);
                let leaf: Vec<u64> = words
                    .par_iter()
                    .map(|w| {
                        let mut first: Option<(Symbol, SeqSpec)> = None;
                        for c in alphabet.symbols() {
                            let s = w.closed_with(c);
                            let y = evaluator(&s)?;
                            if y.0 >= decisions.len() {
                                return Err(Error::InvalidRule(format!("decision index {} out of range", y.0)));
                            }
                            match &first {
                                None => first = Some((y, s)),
                                Some((y0, s0)) if *y0 != y => {
                                    return Err(Error::HorizonViolation {
                                        horizon: *horizon,
                                        detail: format!(
                                            "{s0} ↦ {} but {s} ↦ {}",
                                            decisions.name(*y0),
                                            decisions.name(y)
                                        ),
                                    })
                                }
                                Some(_) => {}
                            }
                        }
                        Ok(bit(first.expect("alphabet is nonempty").0))
                    })
                    .collect::<Vec<Result<u64>>>()
                    .into_iter()
                    .collect::<Result<_>>()?;
                let mut levels = vec![leaf];
                for _ in 0..*horizon {
                    let below = levels.last().unwrap();
                    let up: Vec<u64> = below.chunks(n).map(|c| c.iter().fold(0, |m, x| m | x)).collect();
                    levels.push(up);
                }
                levels.reverse();
                Ok(Engine::Table { n, horizon: *horizon, levels })
            }
        }
    }

    fn root(&self) -> Cursor {
        match self {
            Engine::Automaton { aut, .. } => Cursor { depth: 0, node: aut.initial() },
            Engine::Table { .. } => Cursor { depth: 0, node: 0 },
        }
    }

    fn advance(&self, c: Cursor, s: Symbol) -> Cursor {
        match self {
            Engine::Automaton { aut, .. } => Cursor { depth: c.depth + 1, node: aut.next(c.node, s) },
            Engine::Table { n, horizon, .. } => {
                if c.depth >= *horizon {
                    Cursor { depth: c.depth + 1, node: c.node }
                } else {
                    Cursor { depth: c.depth + 1, node: c.node * n + s.0 }
                }
            }
        }
    }

    fn mask(&self, c: Cursor) -> u64 {
        match self {
            Engine::Automaton { masks, .. } => masks[c.node],
            Engine::Table { horizon, levels, .. } => levels[c.depth.min(*horizon)][c.node],
        }
    }

    fn walk(&self, word: &[Symbol]) -> Cursor {
        word.iter().fold(self.root(), |c, &s| self.advance(c, s))
    }
}

/// A minimal sufficient segment and the decision it enforces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSufficient {
    pub segment: Segment,
    pub decision: Symbol,
}

/// Shared analysis state for one rule: the decision engine, the uniform
/// bound `K`, and the minimal sufficient segments in breadth-first,
/// lexicographic order.
pub struct Analyzer {
    rule: RuleHandle,
    engine: Engine,
    bound: usize,
    minimal: Vec<MinimalSufficient>,
}

impl Analyzer {
    pub fn new(rule: RuleHandle) -> Result<Self> {
        let engine = Engine::new(&rule)?;
        let alphabet = rule.alphabet().clone();
        let mut minimal = Vec::new();
        let mut deepest = 0;
        // Breadth-first over non-sufficient segments; the empty segment is never minimal.
        let mut frontier: Vec<(Vec<Symbol>, Cursor)> = vec![(Vec::new(), engine.root())];
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for (word, c) in &frontier {
                let root_decided = depth == 1 && single(engine.mask(*c)).is_some();
                for s in alphabet.symbols() {
                    let child = engine.advance(*c, s);
                    let mut w = word.clone();
                    w.push(s);
                    match single(engine.mask(child)) {
                        Some(y) => minimal.push(MinimalSufficient {
                            segment: Segment::from_trusted(&alphabet, w),
                            decision: y,
                        }),
                        None if root_decided => unreachable!("children of a decided node are decided"),
                        None => {
                            deepest = depth;
                            next.push((w, child));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(Analyzer { rule, engine, bound: deepest + 1, minimal })
    }

    pub fn rule(&self) -> &RuleHandle {
        &self.rule
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.rule.alphabet()
    }

    pub fn decisions(&self) -> &Alphabet {
        self.rule.decisions()
    }

    /// Uniform bound `K`: one more than the deepest non-sufficient nonempty segment.
    pub fn uniform_bound(&self) -> usize {
        self.bound
    }

    pub fn minimal_sufficient(&self) -> &[MinimalSufficient] {
        &self.minimal
    }

    /// Smallest `k ≥ 1` such that `S|_k` is sufficient.
    pub fn stopping_time(&self, seq: &SeqSpec) -> Result<usize> {
        self.alphabet().check_same(seq.alphabet(), "stopping time")?;
        Ok(self.stop_and_decide(seq).0)
    }

    /// Decision via the engine; agrees with the rule's own evaluator.
    pub fn decide(&self, seq: &SeqSpec) -> Result<Symbol> {
        self.alphabet().check_same(seq.alphabet(), "decide")?;
        Ok(self.stop_and_decide(seq).1)
    }

    fn stop_and_decide(&self, seq: &SeqSpec) -> (usize, Symbol) {
        let mut c = self.engine.root();
        for (i, s) in seq.positions().enumerate() {
            c = self.engine.advance(c, s);
            if let Some(y) = single(self.engine.mask(c)) {
                return (i + 1, y);
            }
        }
        unreachable!("positions() is infinite")
    }

    pub fn sufficiency(&self, seg: &Segment) -> Result<Sufficiency> {
        self.alphabet().check_same(seg.alphabet(), "sufficiency")?;
        let word = seg.word();
        let Some(y) = single(self.engine.mask(self.engine.walk(word))) else {
            return Ok(Sufficiency::NotSufficient);
        };
        let mut c = self.engine.root();
        for &s in &word[..word.len().saturating_sub(1)] {
            c = self.engine.advance(c, s);
            if single(self.engine.mask(c)).is_some() {
                return Ok(Sufficiency::Sufficient(y));
            }
        }
        Ok(if word.is_empty() { Sufficiency::Sufficient(y) } else { Sufficiency::MinimalSufficient(y) })
    }

    pub(crate) fn cursor(&self, word: &[Symbol]) -> Cursor {
        self.engine.walk(word)
    }

    pub(crate) fn mask_of(&self, word: &[Symbol]) -> u64 {
        self.engine.mask(self.engine.walk(word))
    }

    /// The enforced decision once `word` has been read, if it is sufficient.
    pub fn decided(&self, word: &[Symbol]) -> Option<Symbol> {
        single(self.mask_of(word))
    }

    /// Shortest-first greedy extension of `word` until the decision is `y`;
    /// `None` if no extension decides `y`.
    pub(crate) fn extension_to(&self, word: &[Symbol], y: Symbol) -> Option<Vec<Symbol>> {
        let mut c = self.cursor(word);
        let mut ext = Vec::new();
        loop {
            let m = self.engine.mask(c);
            if m & bit(y) == 0 {
                return None;
            }
            if m == bit(y) {
                return Some(ext);
            }
            let s = self
                .alphabet()
                .symbols()
                .find(|&s| self.engine.mask(self.engine.advance(c, s)) & bit(y) != 0)
                .expect("a reachable decision is reachable through some child");
            c = self.engine.advance(c, s);
            ext.push(s);
        }
    }

    /// A concrete sequence extending `word` whose decision is `y`.
    pub(crate) fn sequence_deciding(&self, word: &[Symbol], y: Symbol) -> Option<SeqSpec> {
        let mut w = word.to_vec();
        w.extend(self.extension_to(word, y)?);
        Some(Segment::from_trusted(self.alphabet(), w).closed_with(Symbol(0)))
    }

    pub(crate) fn require_choice(&self) -> Result<()> {
        if self.rule.is_choice_rule() {
            Ok(())
        } else {
            Err(Error::NotAChoiceRule(format!(
                "decisions {:?} differ from alphabet {:?}",
                self.decisions().names(),
                self.alphabet().names()
            )))
        }
    }

    /// Every length-`len` segment closed with every single-symbol cycle.
    pub(crate) fn family(&self, len: usize) -> Vec<SeqSpec> {
        crate::seq::witness_family(self.alphabet(), len).collect()
    }
}

pub fn stopping_time(rule: &RuleHandle, seq: &SeqSpec) -> Result<usize> {
    Analyzer::new(rule.clone())?.stopping_time(seq)
}

pub fn uniform_bound_search(rule: &RuleHandle) -> Result<usize> {
    Ok(Analyzer::new(rule.clone())?.uniform_bound())
}

pub fn enumerate_minimal_sufficient(rule: &RuleHandle) -> Result<Vec<MinimalSufficient>> {
    Ok(Analyzer::new(rule.clone())?.minimal)
}

pub fn decisive_set(rule: &RuleHandle) -> Result<DecisiveSet> {
    Analyzer::new(rule.clone())?.decisive_set()
}

pub fn check_monotonicity(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_monotonicity()
}

pub fn check_informational_dominance(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_informational_dominance()
}

pub fn check_replacement(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_replacement()
}

pub fn check_sequential_alpha(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_sequential_alpha()
}

pub fn check_snbc(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_snbc()
}

pub fn check_neutrality(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_neutrality()
}

pub fn check_acyclicity(rule: &RuleHandle) -> Result<AxiomReport> {
    Analyzer::new(rule.clone())?.check_acyclicity()
}

pub fn identify_csr(rule: &RuleHandle) -> Result<Identification<crate::heuristics::CsrSpec>> {
    Analyzer::new(rule.clone())?.identify_csr()
}

pub fn identify_osr(rule: &RuleHandle) -> Result<Identification<crate::heuristics::OsrSpec>> {
    Analyzer::new(rule.clone())?.identify_osr()
}
