use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

/// An interned-ish letter name. Cloning is a reference-count bump.
///
/// Letters of numeration alphabets, automaton states, output letters and
/// morphism letters are all symbols. Their ordering as Rust values is plain
/// string ordering and carries no meaning; ranked orders live in
/// [`OrderedAlphabet`](crate::numeration::OrderedAlphabet).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: impl AsRef<str>) -> Self {
        Symbol(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(Arc::from(s))
    }
}

impl From<&String> for Symbol {
    fn from(s: &String) -> Self {
        Symbol::new(s)
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Symbol {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A word as a sequence of symbols.
pub type Word = Vec<Symbol>;

/// A d-tuple of symbols, used as a label of multidimensional automata.
pub type Tuple = Vec<Symbol>;

/// Builds a word from whitespace-free single-character letters, e.g. `word("aba")`.
pub fn word(letters: &str) -> Word {
    letters.chars().map(|c| Symbol::new(c.to_string())).collect()
}

/// Builds a list of symbols from a whitespace separated string.
pub fn symbols(list: &str) -> Vec<Symbol> {
    list.split_whitespace().map(Symbol::new).collect()
}

/// Renders a word by concatenating its letters, or `@eps` when empty.
///
/// Multi-character letters are separated by single spaces so the
/// rendering stays unambiguous.
pub fn render_word(w: &[Symbol]) -> String {
    if w.is_empty() {
        return "@eps".to_string();
    }
    if w.iter().all(|s| s.as_str().chars().count() == 1) {
        w.iter().map(Symbol::as_str).collect()
    } else {
        w.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
    }
}

/// Renders a tuple label as `(a,b)`.
pub fn render_tuple(t: &[Symbol]) -> String {
    let inner: Vec<&str> = t.iter().map(Symbol::as_str).collect();
    format!("({})", inner.join(","))
}
