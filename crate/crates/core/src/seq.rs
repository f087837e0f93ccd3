//! Alphabets, finite segments and eventually periodic sequences.
//!
//! Positions are 1-based throughout: `S(1)` is the first element of a
//! sequence and `S|_k` is the segment holding positions `1..=k`.
//!
//! An infinite sequence is stored as `prefix` followed by a nonempty `cycle`
//! repeated forever. Every transformation used by the decision rules (prefix,
//! concatenation, favorable shift and deletion, relabeling) stays inside this
//! representation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub usize);

impl Symbol {
    pub fn index(self) -> usize {
        self.0
    }
}

struct AlphabetInner {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

/// A finite, ordered set of named alternatives. Cheap to clone.
#[derive(Clone)]
pub struct Alphabet(Arc<AlphabetInner>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, name) in symbols.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '|') {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol name `{name}` must be nonempty without whitespace or `|`"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(Alphabet(Arc::new(AlphabetInner { symbols, index })))
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.symbols.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.symbols
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.0.symbols[s.0]
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.0
            .index
            .get(name)
            .map(|&i| Symbol(i))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.len()).map(Symbol)
    }

    pub(crate) fn check_same(&self, other: &Alphabet, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{what}: {:?} vs {:?}",
                self.names(),
                other.names()
            )))
        }
    }

    pub(crate) fn render(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.name(s)).join(" ")
    }

    fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        text.split_whitespace().map(|tok| self.symbol(tok)).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.symbols == other.0.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(serializer)
    }
}

/// A finite word over an alphabet. The empty segment is allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Segment {
    alphabet: Alphabet,
    word: Vec<Symbol>,
}

impl Segment {
    pub fn new(alphabet: &Alphabet, word: Vec<Symbol>) -> Result<Self> {
        if let Some(bad) = word.iter().find(|s| s.0 >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("index {}", bad.0)));
        }
        Ok(Segment { alphabet: alphabet.clone(), word })
    }

    pub(crate) fn from_trusted(alphabet: &Alphabet, word: Vec<Symbol>) -> Self {
        debug_assert!(word.iter().all(|s| s.0 < alphabet.len()));
        Segment { alphabet: alphabet.clone(), word }
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Segment { alphabet: alphabet.clone(), word: Vec::new() }
    }

    /// Parses whitespace-separated symbol names, e.g. `a b c`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Ok(Segment { alphabet: alphabet.clone(), word: alphabet.parse_word(text)? })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn into_word(self) -> Vec<Symbol> {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// 1-based position access.
    pub fn at(&self, i: usize) -> Symbol {
        assert!(i >= 1 && i <= self.word.len(), "position {i} out of range");
        self.word[i - 1]
    }

    /// `M|_k`; `k` is clamped to the segment length.
    pub fn prefix(&self, k: usize) -> Segment {
        Segment::from_trusted(&self.alphabet, self.word[..k.min(self.word.len())].to_vec())
    }

    pub fn pushed(&self, s: Symbol) -> Segment {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.extend_from_slice(&self.word);
        word.push(s);
        Segment::from_trusted(&self.alphabet, word)
    }

    pub fn appended(&self, other: &Segment) -> Result<Segment> {
        self.alphabet.check_same(&other.alphabet, "segment append")?;
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(Segment::from_trusted(&self.alphabet, word))
    }

    /// `M(X)`: the set of symbols occurring in the word.
    pub fn symbol_set(&self) -> BTreeSet<Symbol> {
        self.word.iter().copied().collect()
    }

    pub fn contains(&self, x: Symbol) -> bool {
        self.word.contains(&x)
    }

    /// `#x(M)`: number of occurrences of `x`.
    pub fn count(&self, x: Symbol) -> usize {
        self.word.iter().filter(|&&s| s == x).count()
    }

    /// Replaces the symbol at 1-based position `p`.
    pub fn with_replaced(&self, p: usize, y: Symbol) -> Segment {
        let mut word = self.word.clone();
        word[p - 1] = y;
        Segment::from_trusted(&self.alphabet, word)
    }

    /// `M·T`.
    pub fn concat(&self, tail: &SeqSpec) -> Result<SeqSpec> {
        self.alphabet.check_same(&tail.alphabet, "concatenation")?;
        let mut prefix = self.word.clone();
        prefix.extend_from_slice(&tail.prefix);
        Ok(SeqSpec { alphabet: self.alphabet.clone(), prefix, cycle: tail.cycle.clone() })
    }

    /// `M·x x x …`
    pub fn closed_with(&self, x: Symbol) -> SeqSpec {
        SeqSpec { alphabet: self.alphabet.clone(), prefix: self.word.clone(), cycle: vec![x] }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.word))
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// An eventually periodic infinite sequence: `prefix` then `cycle` forever.
#[derive(Clone)]
pub struct SeqSpec {
    alphabet: Alphabet,
    prefix: Vec<Symbol>,
    cycle: Vec<Symbol>,
}

impl SeqSpec {
    pub fn new(alphabet: &Alphabet, prefix: Vec<Symbol>, cycle: Vec<Symbol>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Parse("the cycle of a sequence must be nonempty".into()));
        }
        if let Some(bad) = prefix.iter().chain(&cycle).find(|s| s.0 >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("index {}", bad.0)));
        }
        Ok(SeqSpec { alphabet: alphabet.clone(), prefix, cycle })
    }

    pub fn constant(alphabet: &Alphabet, x: Symbol) -> Self {
        assert!(x.0 < alphabet.len());
        SeqSpec { alphabet: alphabet.clone(), prefix: Vec::new(), cycle: vec![x] }
    }

    /// Parses the `prefix|cycle` notation: `a b|c` is `(a b c c c …)`,
    /// `|a b c` is the pure cycle `(a b c a b c …)`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let (head, tail) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("`{text}`: expected `prefix|cycle`")))?;
        if tail.contains('|') {
            return Err(Error::Parse(format!("`{text}`: more than one `|`")));
        }
        let prefix = alphabet.parse_word(head)?;
        let cycle = alphabet.parse_word(tail)?;
        if cycle.is_empty() {
            return Err(Error::Parse(format!("`{text}`: cycle must be nonempty")));
        }
        Ok(SeqSpec { alphabet: alphabet.clone(), prefix, cycle })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prefix_word(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn cycle_word(&self) -> &[Symbol] {
        &self.cycle
    }

    /// `S(i)` for `i >= 1`.
    pub fn at(&self, i: usize) -> Symbol {
        assert!(i >= 1, "sequences are indexed from 1");
        if i <= self.prefix.len() {
            self.prefix[i - 1]
        } else {
            self.cycle[(i - self.prefix.len() - 1) % self.cycle.len()]
        }
    }

    pub fn positions(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.prefix.iter().chain(self.cycle.iter().cycle()).copied()
    }

    /// `S|_k`.
    pub fn prefix_of(&self, k: usize) -> Segment {
        Segment::from_trusted(&self.alphabet, self.positions().take(k).collect())
    }

    /// `X(S)`: every symbol occurring anywhere in the sequence.
    pub fn occurring(&self) -> BTreeSet<Symbol> {
        self.prefix.iter().chain(&self.cycle).copied().collect()
    }

    /// Same sequence with the cycle unrolled until the prefix holds at least `len` positions.
    fn unrolled(&self, len: usize) -> SeqSpec {
        let mut prefix = self.prefix.clone();
        let mut cycle = self.cycle.clone();
        while prefix.len() < len {
            prefix.push(cycle[0]);
            cycle.rotate_left(1);
        }
        SeqSpec { alphabet: self.alphabet.clone(), prefix, cycle }
    }

    /// Swaps positions `k` and `k+1`.
    pub fn favorable_shift(&self, k: usize) -> SeqSpec {
        assert!(k >= 1, "positions start at 1");
        let mut out = self.unrolled(k + 1);
        out.prefix.swap(k - 1, k);
        out
    }

    /// Drops position `k`; later positions move one step forward.
    pub fn favorable_deletion(&self, k: usize) -> SeqSpec {
        assert!(k >= 1, "positions start at 1");
        let mut out = self.unrolled(k);
        out.prefix.remove(k - 1);
        out
    }

    pub fn relabel(&self, sigma: &Relabeling) -> Result<SeqSpec> {
        if sigma.len() != self.alphabet.len() {
            return Err(Error::InvalidRelabeling(format!(
                "relabeling over {} symbols applied to alphabet of {}",
                sigma.len(),
                self.alphabet.len()
            )));
        }
        Ok(SeqSpec {
            alphabet: self.alphabet.clone(),
            prefix: self.prefix.iter().map(|&s| sigma.apply(s)).collect(),
            cycle: self.cycle.iter().map(|&s| sigma.apply(s)).collect(),
        })
    }

    /// Shortest prefix and primitive cycle describing the same position function.
    pub fn canonical(&self) -> SeqSpec {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.cycle[i] == self.cycle[i % p]))
            .unwrap_or(n);
        let mut cycle = self.cycle[..period].to_vec();
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        SeqSpec { alphabet: self.alphabet.clone(), prefix, cycle }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for SeqSpec {
    /// Equality of position functions: two eventually periodic sequences are
    /// equal iff they agree on the first `|p| + |p'| + lcm(|c|, |c'|)` positions.
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let (c, c2) = (self.cycle.len(), other.cycle.len());
        let horizon = self.prefix.len() + other.prefix.len() + c / gcd(c, c2) * c2;
        self.positions().zip(other.positions()).take(horizon).all(|(a, b)| a == b)
    }
}

impl Eq for SeqSpec {}

impl Hash for SeqSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let canon = self.canonical();
        canon.alphabet.names().hash(state);
        canon.prefix.hash(state);
        canon.cycle.hash(state);
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.alphabet.render(&self.prefix), self.alphabet.render(&self.cycle))
    }
}

impl fmt::Debug for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqSpec({self})")
    }
}

impl Serialize for SeqSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A bijection on symbol indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relabeling {
    mapping: Vec<Symbol>,
}

impl Relabeling {
    pub fn new(mapping: Vec<Symbol>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for s in &mapping {
            if s.0 >= mapping.len() || std::mem::replace(&mut seen[s.0], true) {
                return Err(Error::InvalidRelabeling(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(Relabeling { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Relabeling { mapping: (0..n).map(Symbol).collect() }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(n: usize, a: Symbol, b: Symbol) -> Self {
        let mut r = Relabeling::identity(n);
        r.mapping.swap(a.0, b.0);
        r
    }

    /// Every permutation of `n` symbols, identity first.
    pub fn all(n: usize) -> Vec<Relabeling> {
        (0..n)
            .map(Symbol)
            .permutations(n)
            .map(|mapping| Relabeling { mapping })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, s: Symbol) -> Symbol {
        self.mapping[s.0]
    }

    pub fn inverse(&self) -> Relabeling {
        let mut mapping = vec![Symbol(0); self.mapping.len()];
        for (i, s) in self.mapping.iter().enumerate() {
            mapping[s.0] = Symbol(i);
        }
        Relabeling { mapping }
    }

    pub fn mapping(&self) -> &[Symbol] {
        &self.mapping
    }

    /// Renders as `a->b b->a`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.mapping
            .iter()
            .enumerate()
            .map(|(i, &s)| format!("{}->{}", alphabet.name(Symbol(i)), alphabet.name(s)))
            .join(" ")
    }
}

impl fmt::Debug for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relabeling{:?}", self.mapping.iter().map(|s| s.0).collect::<Vec<_>>())
    }
}

/// All `|X|^length` words of the given length in lexicographic order of symbol index.
pub fn enumerate_segments(alphabet: &Alphabet, length: usize) -> Segments {
    Segments { alphabet: alphabet.clone(), next: Some(vec![Symbol(0); length]) }
}

pub struct Segments {
    alphabet: Alphabet,
    next: Option<Vec<Symbol>>,
}

impl Iterator for Segments {
    type Item = Segment;

    fn next(&mut self) -> Option<Segment> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = self.alphabet.len();
        let mut carried = true;
        for slot in succ.iter_mut().rev() {
            if slot.0 + 1 < n {
                slot.0 += 1;
                carried = false;
                break;
            }
            slot.0 = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(Segment::from_trusted(&self.alphabet, current))
    }
}

/// Every segment of length `0..=max_len`, shortest first.
pub fn enumerate_segments_upto(alphabet: &Alphabet, max_len: usize) -> impl Iterator<Item = Segment> {
    let alphabet = alphabet.clone();
    (0..=max_len).flat_map(move |len| enumerate_segments(&alphabet, len))
}

/// Every segment of length `len` closed by every single-symbol cycle.
pub fn witness_family(alphabet: &Alphabet, len: usize) -> impl Iterator<Item = SeqSpec> {
    let alphabet = alphabet.clone();
    enumerate_segments(&alphabet, len)
        .flat_map(move |seg| alphabet.symbols().map(move |c| seg.closed_with(c)))
}
