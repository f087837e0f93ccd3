use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::automaton::DecisionAutomaton;
use crate::error::{Error, Result};
use crate::seq::{Alphabet, SeqSpec, Symbol};

/// Largest supported window; builtin comparators rank up to `2^MAX_WINDOW` words.
pub const MAX_WINDOW: usize = 24;
/// Explicit tables list all `2^K` words, so they are limited further.
pub const MAX_TABLE_WINDOW: usize = 16;

/// A finite 0/1 word; position 1 is stored in the lowest bit.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    bits: u64,
    len: usize,
}

impl BitWord {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64 && (len == 64 || bits >> len == 0), "bits beyond word length");
        BitWord { bits, len }
    }

    pub fn zeros(len: usize) -> Self {
        BitWord::new(0, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at 1-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "bit position {i} outside 1..={}", self.len);
        self.bits >> (i - 1) & 1 == 1
    }

    /// `Σ bit_i · 2^(i-1)`: the value of the word read with position 1 least significant.
    pub fn value(&self) -> u64 {
        self.bits
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// All words of length `len` in increasing `value` order.
    pub fn all(len: usize) -> impl Iterator<Item = BitWord> {
        assert!(len < 64);
        (0..1u64 << len).map(move |b| BitWord::new(b, len))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (1..=self.len).try_for_each(|i| f.write_str(if self.bit(i) { "1" } else { "0" }))
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > 64 {
            return Err(Error::Parse(format!("bit-word `{s}` longer than 64")));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("bit-word `{s}` contains `{c}`"))),
            }
        }
        Ok(BitWord::new(bits, s.len()))
    }
}

/// Indicator word of `x` over the first `window` positions of `seq`.
pub fn config_encode(seq: &SeqSpec, x: Symbol, window: usize) -> BitWord {
    encode_word(&seq.prefix_of(window).into_word(), x)
}

fn encode_word(word: &[Symbol], x: Symbol) -> BitWord {
    let bits = word
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == x)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    BitWord::new(bits, word.len())
}

/// Per-symbol configurations of one sequence over a common window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitstreamCollection {
    words: Vec<BitWord>,
}

impl BitstreamCollection {
    pub fn of(seq: &SeqSpec, window: usize) -> Self {
        let word = seq.prefix_of(window).into_word();
        let words = seq.alphabet().symbols().map(|x| encode_word(&word, x)).collect();
        BitstreamCollection { words }
    }

    pub fn from_words(words: Vec<BitWord>) -> Result<Self> {
        if words.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(Error::InvalidRule("bitstreams must share a length".into()));
        }
        Ok(BitstreamCollection { words })
    }

    pub fn word(&self, x: Symbol) -> BitWord {
        self.words[x.0]
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    /// Every position carries a 1 in exactly one bitstream.
    pub fn is_feasible(&self) -> bool {
        let Some(len) = self.words.first().map(BitWord::len) else {
            return false;
        };
        (1..=len).all(|i| self.words.iter().filter(|w| w.bit(i)).count() == 1)
    }
}

/// Strict total order on window-length words, given as an injective rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparator {
    /// `ranks[w.value()]`; higher is better.
    Table(Vec<i64>),
    /// Words with a 1 in position 1 first, then by [`BitWord::value`].
    FirstPositionPriority,
    /// By [`BitWord::value`].
    NumericValue,
}

impl Comparator {
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "first-position-priority" => Ok(Comparator::FirstPositionPriority),
            "numeric-value" => Ok(Comparator::NumericValue),
            _ => Err(Error::InvalidRule(format!("unknown builtin comparator `{name}`"))),
        }
    }

    pub fn builtin_name(&self) -> Option<&'static str> {
        match self {
            Comparator::Table(_) => None,
            Comparator::FirstPositionPriority => Some("first-position-priority"),
            Comparator::NumericValue => Some("numeric-value"),
        }
    }

    pub fn rank(&self, w: BitWord) -> i128 {
        match self {
            Comparator::Table(ranks) => ranks[w.value() as usize] as i128,
            Comparator::FirstPositionPriority => {
                let lead = i128::from(!w.is_empty() && w.bit(1));
                (lead << w.len()) | w.value() as i128
            }
            Comparator::NumericValue => w.value() as i128,
        }
    }
}

/// Rational configuration-dependent rule on a window of `K` positions: among
/// the symbols occurring in positions `1..=K`, choose the one whose
/// configuration ranks highest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigRuleSpec {
    alphabet: Alphabet,
    window: usize,
    comparator: Comparator,
}

impl ConfigRuleSpec {
    pub fn new(alphabet: &Alphabet, window: usize, comparator: Comparator) -> Result<Self> {
        if window == 0 || window > MAX_WINDOW {
            return Err(Error::InvalidRule(format!("window must lie in 1..={MAX_WINDOW}, got {window}")));
        }
        if let Comparator::Table(ranks) = &comparator {
            if window > MAX_TABLE_WINDOW {
                return Err(Error::InvalidRule(format!(
                    "comparator tables support windows up to {MAX_TABLE_WINDOW}"
                )));
            }
            if ranks.len() != 1 << window {
                return Err(Error::InvalidRule(format!(
                    "comparator table ranks {} of {} words",
                    ranks.len(),
                    1usize << window
                )));
            }
            let mut seen = HashSet::new();
            if let Some(dup) = ranks.iter().find(|r| !seen.insert(**r)) {
                return Err(Error::InvalidRule(format!("comparator rank {dup} is used twice")));
            }
        }
        Ok(ConfigRuleSpec { alphabet: alphabet.clone(), window, comparator })
    }

    /// Builds a table comparator from `word -> rank` entries covering all `2^K` words.
    pub fn from_table(alphabet: &Alphabet, window: usize, table: &BTreeMap<String, i64>) -> Result<Self> {
        if window == 0 || window > MAX_TABLE_WINDOW {
            return Err(Error::InvalidRule(format!(
                "comparator tables support windows 1..={MAX_TABLE_WINDOW}, got {window}"
            )));
        }
        let mut ranks = vec![None; 1 << window];
        for (text, &r) in table {
            let w: BitWord = text.parse()?;
            if w.len() != window {
                return Err(Error::InvalidRule(format!("table word `{text}` is not of length {window}")));
            }
            ranks[w.value() as usize] = Some(r);
        }
        let ranks = ranks
            .into_iter()
            .enumerate()
            .map(|(v, r)| {
                r.ok_or_else(|| {
                    Error::InvalidRule(format!("comparator table misses `{}`", BitWord::new(v as u64, window)))
                })
            })
            .collect::<Result<_>>()?;
        ConfigRuleSpec::new(alphabet, window, Comparator::Table(ranks))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn comparator(&self) -> &Comparator {
        &self.comparator
    }

    pub fn rank(&self, w: BitWord) -> i128 {
        self.comparator.rank(w)
    }

    pub fn evaluate(&self, seq: &SeqSpec) -> Result<Symbol> {
        self.alphabet.check_same(seq.alphabet(), "config evaluate")?;
        Ok(self.choose(&seq.prefix_of(self.window).into_word()))
    }

    /// Choice on a window-length word. Feasibility makes the candidates'
    /// configurations pairwise distinct, so the maximum is unique.
    fn choose(&self, word: &[Symbol]) -> Symbol {
        debug_assert_eq!(word.len(), self.window);
        let mut candidates: Vec<Symbol> = word.to_vec();
        candidates.sort();
        candidates.dedup();
        candidates
            .into_iter()
            .max_by_key(|&x| self.rank(encode_word(word, x)))
            .expect("window is nonempty")
    }

    /// Tree automaton of depth `K`; minimize to merge equivalent prefixes.
    pub fn compile(&self) -> DecisionAutomaton {
        DecisionAutomaton::from_prefix_rule(&self.alphabet, &self.alphabet, self.window, |w| self.choose(w))
            .expect("window is at least 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::StopVerdict;
    use crate::seq::enumerate_segments;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn bitword_text_is_position_one_first() {
        let w: BitWord = "100".parse().unwrap();
        assert!(w.bit(1) && !w.bit(2) && !w.bit(3));
        assert_eq!(w.value(), 1);
        assert_eq!(w.to_string(), "100");
        assert!("10x".parse::<BitWord>().is_err());
    }

    #[test]
    fn encode_examples() {
        let a = abc();
        let s = SeqSpec::parse(&a, "|a b c").unwrap();
        assert_eq!(config_encode(&s, Symbol(0), 6).to_string(), "100100");
        assert_eq!(config_encode(&s, Symbol(1), 6).to_string(), "010010");
        let s = SeqSpec::parse(&a, "|a b").unwrap();
        assert_eq!(config_encode(&s, Symbol(2), 5), BitWord::zeros(5));
    }

    #[test]
    fn infeasible_collections_are_detected() {
        let w = |s: &str| s.parse::<BitWord>().unwrap();
        let overlap = BitstreamCollection::from_words(vec![w("110"), w("011")]).unwrap();
        assert!(!overlap.is_feasible());
        let gap = BitstreamCollection::from_words(vec![w("100"), w("010")]).unwrap();
        assert!(!gap.is_feasible());
        assert!(BitstreamCollection::from_words(vec![w("10"), w("010")]).is_err());
    }

    #[test]
    fn table_validation() {
        let a = abc();
        let mut table: BTreeMap<String, i64> = BitWord::all(2).map(|w| (w.to_string(), w.value() as i64)).collect();
        assert!(ConfigRuleSpec::from_table(&a, 2, &table).is_ok());
        table.insert("11".into(), 0);
        assert!(ConfigRuleSpec::from_table(&a, 2, &table).is_err());
        table.remove("11");
        assert!(ConfigRuleSpec::from_table(&a, 2, &table).is_err());
        assert!(ConfigRuleSpec::new(&a, 0, Comparator::NumericValue).is_err());
    }

    #[test]
    fn first_position_priority_picks_first_symbol() {
        let a = abc();
        let spec = ConfigRuleSpec::new(&a, 3, Comparator::FirstPositionPriority).unwrap();
        for seg in enumerate_segments(&a, 3) {
            let s = seg.closed_with(Symbol(1));
            assert_eq!(spec.evaluate(&s).unwrap(), seg.at(1));
        }
        let min = spec.compile().minimize().unwrap();
        assert_eq!(min.num_states(), 1 + 3);
        assert_eq!(min.verify_stopping(), StopVerdict::UniformBound(1));
    }

    #[test]
    fn numeric_value_example() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let spec = ConfigRuleSpec::new(&ab, 3, Comparator::NumericValue).unwrap();
        let s = SeqSpec::parse(&ab, "a b a|a").unwrap();
        let (ea, eb) = (config_encode(&s, Symbol(0), 3), config_encode(&s, Symbol(1), 3));
        assert_eq!((ea.to_string().as_str(), eb.to_string().as_str()), ("101", "010"));
        assert!(spec.rank(ea) > spec.rank(eb));
        assert_eq!(spec.evaluate(&s).unwrap(), Symbol(0));
        // Position 1 is least significant: a late occurrence outweighs an early one.
        let s = SeqSpec::parse(&ab, "a a b|a").unwrap();
        assert_eq!(spec.evaluate(&s).unwrap(), Symbol(1));
    }

    #[test]
    fn single_candidate_is_chosen() {
        let a = abc();
        let spec = ConfigRuleSpec::new(&a, 4, Comparator::NumericValue).unwrap();
        for x in a.symbols() {
            assert_eq!(spec.evaluate(&SeqSpec::constant(&a, x)).unwrap(), x);
        }
    }

    #[test]
    fn compile_agrees_with_evaluate() {
        let a = abc();
        let spec = ConfigRuleSpec::new(&a, 3, Comparator::NumericValue).unwrap();
        let aut = spec.compile();
        assert_eq!(aut.verify_stopping(), StopVerdict::UniformBound(3));
        for seg in enumerate_segments(&a, 3) {
            let s = seg.closed_with(Symbol(0));
            assert_eq!(aut.evaluate(&s).unwrap().decision, spec.evaluate(&s).unwrap());
        }
    }

    proptest! {
        #[test]
        fn encodings_are_feasible(
            prefix in prop::collection::vec(0usize..3, 0..6),
            cycle in prop::collection::vec(0usize..3, 1..4),
            window in 1usize..12,
        ) {
            let a = abc();
            let s = SeqSpec::new(
                &a,
                prefix.into_iter().map(Symbol).collect(),
                cycle.into_iter().map(Symbol).collect(),
            ).unwrap();
            let b = BitstreamCollection::of(&s, window);
            prop_assert!(b.is_feasible());
            for x in a.symbols() {
                prop_assert_eq!(b.word(x), config_encode(&s, x, window));
            }
        }
    }
}
