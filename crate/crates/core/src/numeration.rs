//! Abstract numeration systems.
//!
//! An abstract numeration system is an infinite regular language over a
//! totally ordered alphabet. Enumerating the language in genealogical order
//! (shorter words first, then lexicographically) gives a bijection between
//! the natural numbers and the words: `rep(n)` is the `n`-th word and `val`
//! is its inverse.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automata::Dfa;
use crate::symbol::{render_word, Symbol, Tuple, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerationError {
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(Symbol),
    #[error("duplicate letter {0} in alphabet")]
    DuplicateLetter(Symbol),
    #[error("the alphabet is empty")]
    EmptyAlphabet,
    #[error("the language is finite")]
    FiniteLanguage,
    #[error("the empty word is not in the language")]
    EmptyWordMissing,
    #[error("automaton labels {labels:?} differ from the alphabet {alphabet:?}")]
    LabelMismatch {
        labels: Vec<Symbol>,
        alphabet: Vec<Symbol>,
    },
    #[error("{word} is not in the language (first failing prefix has length {prefix_len})")]
    NotInLanguage { word: String, prefix_len: usize },
    #[error("padding symbol {0} occurs in a word")]
    PadInWord(Symbol),
}

/// A finite alphabet with a total order given by listing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedAlphabet {
    letters: Vec<Symbol>,
    rank: HashMap<Symbol, usize>,
}

impl OrderedAlphabet {
    pub fn new(letters: Vec<Symbol>) -> Result<Self, NumerationError> {
        if letters.is_empty() {
            return Err(NumerationError::EmptyAlphabet);
        }
        let mut rank = HashMap::new();
        for (i, s) in letters.iter().enumerate() {
            if rank.insert(s.clone(), i).is_some() {
                return Err(NumerationError::DuplicateLetter(s.clone()));
            }
        }
        Ok(OrderedAlphabet { letters, rank })
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rank(&self, s: &Symbol) -> Option<usize> {
        self.rank.get(s).copied()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.rank.contains_key(s)
    }
}

/// Genealogical comparison: by length, then lexicographically.
pub fn genealogical_cmp(u: &[Symbol], v: &[Symbol], alphabet: &OrderedAlphabet) -> Result<Ordering, NumerationError> {
    let ranks = |w: &[Symbol]| -> Result<Vec<usize>, NumerationError> {
        w.iter()
            .map(|s| alphabet.rank(s).ok_or_else(|| NumerationError::UnknownLetter(s.clone())))
            .collect()
    };
    let (ru, rv) = (ranks(u)?, ranks(v)?);
    Ok(ru.len().cmp(&rv.len()).then_with(|| ru.cmp(&rv)))
}

/// Word counts: `per_len[s][q]` words of length `s` accepted from `q`, and
/// `below[s]` words of length `< s` accepted from the initial state.
#[derive(Debug, Clone)]
struct CountTable {
    per_len: Vec<Vec<BigUint>>,
    below: Vec<BigUint>,
}

#[derive(Debug)]
pub struct NumerationSystem {
    alphabet: OrderedAlphabet,
    dfa: Dfa<Symbol>,
    /// transitions per state in letter order, as (rank, target)
    moves: Vec<Vec<(usize, usize)>>,
    counts: RwLock<CountTable>,
}

impl Clone for NumerationSystem {
    fn clone(&self) -> Self {
        let counts = self.counts.read().expect("count table lock").clone();
        NumerationSystem {
            alphabet: self.alphabet.clone(),
            dfa: self.dfa.clone(),
            moves: self.moves.clone(),
            counts: RwLock::new(counts),
        }
    }
}

impl NumerationSystem {
    /// A numeration system from an ordered alphabet and an automaton whose
    /// labels are exactly the alphabet letters, in any order.
    pub fn new(alphabet: OrderedAlphabet, dfa: Dfa<Symbol>) -> Result<Self, NumerationError> {
        let mut labels = dfa.labels().to_vec();
        labels.sort();
        let mut letters = alphabet.letters().to_vec();
        letters.sort();
        if labels != letters {
            return Err(NumerationError::LabelMismatch {
                labels: dfa.labels().to_vec(),
                alphabet: alphabet.letters().to_vec(),
            });
        }
        if !dfa.has_infinite_language() {
            return Err(NumerationError::FiniteLanguage);
        }
        let moves = (0..dfa.num_states())
            .map(|q| {
                alphabet
                    .letters()
                    .iter()
                    .enumerate()
                    .filter_map(|(r, s)| dfa.step(q, s).map(|t| (r, t)))
                    .collect()
            })
            .collect();
        let n = dfa.num_states();
        let base: Vec<BigUint> = (0..n)
            .map(|q| if dfa.is_final(q) { BigUint::one() } else { BigUint::zero() })
            .collect();
        let counts = CountTable {
            per_len: vec![base],
            below: vec![BigUint::zero()],
        };
        Ok(NumerationSystem {
            alphabet,
            dfa,
            moves,
            counts: RwLock::new(counts),
        })
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn dfa(&self) -> &Dfa<Symbol> {
        &self.dfa
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.dfa.accepts(w)
    }

    /// Extends the count table so that lengths `0..=len` are available.
    fn ensure(&self, len: usize) {
        if self.counts.read().expect("count table lock").per_len.len() > len {
            return;
        }
        let mut t = self.counts.write().expect("count table lock");
        while t.per_len.len() <= len {
            let prev = t.per_len.last().expect("base row");
            let row: Vec<BigUint> = self
                .moves
                .iter()
                .map(|mv| mv.iter().map(|&(_, to)| &prev[to]).sum())
                .collect();
            let s = t.per_len.len() - 1;
            let next_below = &t.below[s] + &prev[self.dfa.initial()];
            t.per_len.push(row);
            t.below.push(next_below);
        }
    }

    fn count_from(&self, q: usize, len: usize) -> BigUint {
        self.ensure(len);
        self.counts.read().expect("count table lock").per_len[len][q].clone()
    }

    /// Number of words of length `len` in the language.
    pub fn count_words(&self, len: usize) -> BigUint {
        self.count_from(self.dfa.initial(), len)
    }

    /// Number of words of length less than `len`.
    pub fn count_below(&self, len: usize) -> BigUint {
        self.ensure(len);
        self.counts.read().expect("count table lock").below[len].clone()
    }

    /// The `n`-th word of the language in genealogical order (from 0).
    pub fn rep(&self, n: impl Into<BigUint>) -> Word {
        let n: BigUint = n.into();
        let mut top = 1;
        while self.count_below(top) <= n {
            top *= 2;
        }
        let t = self.counts.read().expect("count table lock");
        // the length is the largest s with below[s] <= n
        let len = t.below[..=top].partition_point(|b| *b <= n) - 1;
        let mut rest = n - &t.below[len];
        let mut q = self.dfa.initial();
        let mut out = Vec::with_capacity(len);
        for j in 0..len {
            let remaining = len - j - 1;
            let mut chosen = None;
            for &(r, to) in &self.moves[q] {
                let c = &t.per_len[remaining][to];
                if rest < *c {
                    chosen = Some((r, to));
                    break;
                }
                rest -= c;
            }
            let (r, to) = chosen.expect("count table is consistent");
            out.push(self.alphabet.letters()[r].clone());
            q = to;
        }
        out
    }

    /// The position of `w` in the genealogical enumeration of the language.
    pub fn val(&self, w: &[Symbol]) -> Result<BigUint, NumerationError> {
        let len = w.len();
        self.ensure(len);
        let t = self.counts.read().expect("count table lock");
        let mut total = t.below[len].clone();
        let mut q = self.dfa.initial();
        for (j, s) in w.iter().enumerate() {
            let rank = self
                .alphabet
                .rank(s)
                .ok_or_else(|| NumerationError::UnknownLetter(s.clone()))?;
            let remaining = len - j - 1;
            let mut next = None;
            for &(r, to) in &self.moves[q] {
                if r < rank {
                    total += &t.per_len[remaining][to];
                } else if r == rank {
                    next = Some(to);
                    break;
                } else {
                    break;
                }
            }
            q = next.ok_or_else(|| NumerationError::NotInLanguage {
                word: render_word(w),
                prefix_len: j + 1,
            })?;
        }
        if !self.dfa.is_final(q) {
            return Err(NumerationError::NotInLanguage {
                word: render_word(w),
                prefix_len: len,
            });
        }
        Ok(total)
    }
}

/// A tuple of words left-padded to a common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedTuple {
    components: Vec<Word>,
}

impl PaddedTuple {
    pub fn components(&self) -> &[Word] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The word over tuples read column by column.
    pub fn columns(&self) -> Vec<Tuple> {
        (0..self.len())
            .map(|j| self.components.iter().map(|w| w[j].clone()).collect())
            .collect()
    }
}

/// `(w_1, ..., w_d)^#`: every word is left-padded with `pad` to the longest length.
pub fn pad_tuple(words: &[Word], pad: &Symbol) -> Result<PaddedTuple, NumerationError> {
    if let Some(s) = words.iter().flatten().find(|s| *s == pad) {
        return Err(NumerationError::PadInWord(s.clone()));
    }
    let width = words.iter().map(Vec::len).max().unwrap_or(0);
    let components = words
        .iter()
        .map(|w| {
            let mut p = vec![pad.clone(); width - w.len()];
            p.extend(w.iter().cloned());
            p
        })
        .collect();
    Ok(PaddedTuple { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{symbols, word};
    use proptest::prelude::*;

    fn example_language() -> NumerationSystem {
        let alphabet = OrderedAlphabet::new(symbols("a b")).unwrap();
        let mut l = Dfa::new(symbols("g h k"), 0, symbols("a b")).unwrap();
        for q in 0..3 {
            l.set_final(q, true);
        }
        let (a, b) = (Symbol::new("a"), Symbol::new("b"));
        l.add_transition(0, &a, 1).unwrap();
        l.add_transition(0, &b, 2).unwrap();
        l.add_transition(1, &a, 1).unwrap();
        l.add_transition(1, &b, 2).unwrap();
        l.add_transition(2, &a, 1).unwrap();
        NumerationSystem::new(alphabet, l).unwrap()
    }

    /// All accepted words up to `max_len`, sorted genealogically by brute force.
    fn brute_force(s: &NumerationSystem, max_len: usize) -> Vec<Word> {
        let mut all = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in s.alphabet().letters() {
                    let mut v = w.clone();
                    v.push(a.clone());
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let mut acc: Vec<Word> = all.into_iter().filter(|w| s.contains(w)).collect();
        acc.sort_by(|u, v| genealogical_cmp(u, v, s.alphabet()).unwrap());
        acc
    }

    #[test]
    fn first_words_of_the_example() {
        let s = example_language();
        let expected = ["", "a", "b", "aa", "ab", "ba", "aaa", "aab"];
        for (n, w) in expected.iter().enumerate() {
            assert_eq!(s.rep(n as u64), word(w));
            assert_eq!(s.val(&word(w)).unwrap(), BigUint::from(n));
        }
        assert_eq!(s.count_words(4), BigUint::from(8u32));
        assert_eq!(s.count_words(0), BigUint::one());
    }

    #[test]
    fn val_rejects_with_the_failing_prefix() {
        let s = example_language();
        match s.val(&word("abb")) {
            Err(NumerationError::NotInLanguage { prefix_len, .. }) => assert_eq!(prefix_len, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(s.val(&word("ac")), Err(NumerationError::UnknownLetter(_))));
    }

    #[test]
    fn brute_force_agreement() {
        let s = example_language();
        let words = brute_force(&s, 8);
        for (n, w) in words.iter().enumerate() {
            assert_eq!(&s.rep(n as u64), w);
        }
    }

    #[test]
    fn finite_languages_are_rejected() {
        let alphabet = OrderedAlphabet::new(symbols("a")).unwrap();
        let mut l = Dfa::new(symbols("x y"), 0, symbols("a")).unwrap();
        l.set_final(0, true);
        l.set_final(1, true);
        l.add_transition(0, &Symbol::new("a"), 1).unwrap();
        assert_eq!(
            NumerationSystem::new(alphabet, l).unwrap_err(),
            NumerationError::FiniteLanguage
        );
    }

    #[test]
    fn genealogical_order() {
        let ab = OrderedAlphabet::new(symbols("b a")).unwrap();
        assert_eq!(genealogical_cmp(&word("a"), &word("bb"), &ab).unwrap(), Ordering::Less);
        assert_eq!(genealogical_cmp(&word("ab"), &word("ba"), &ab).unwrap(), Ordering::Greater);
        assert_eq!(genealogical_cmp(&word(""), &word(""), &ab).unwrap(), Ordering::Equal);
    }

    #[test]
    fn padding() {
        let pad = Symbol::new("#");
        let p = pad_tuple(&[word("ab"), word(""), word("b")], &pad).unwrap();
        assert_eq!(p.components()[1], symbols("# #"));
        assert_eq!(p.columns(), vec![symbols("a # #"), symbols("b # b")]);
        assert!(pad_tuple(&[symbols("# a")], &pad).is_err());
        assert!(pad_tuple(&[word(""), word("")], &pad).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn val_inverts_rep(n in 0u64..5000) {
            let s = example_language();
            prop_assert_eq!(s.val(&s.rep(n)).unwrap(), BigUint::from(n));
        }

        #[test]
        fn rep_is_increasing(n in 0u64..2000) {
            let s = example_language();
            let cmp = genealogical_cmp(&s.rep(n), &s.rep(n + 1), s.alphabet()).unwrap();
            prop_assert_eq!(cmp, Ordering::Less);
        }
    }
}
