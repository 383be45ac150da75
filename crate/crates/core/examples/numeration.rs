//! Genealogical enumeration of the words over `a < b` avoiding `bb`.

use shapesym::automata::Dfa;
use shapesym::numeration::pad_tuple;
use shapesym::symbol::{render_word, symbols, word};
use shapesym::{NumerationSystem, OrderedAlphabet, Symbol};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = OrderedAlphabet::new(symbols("a b"))?;
    let mut dfa = Dfa::new(symbols("g h k"), 0, symbols("a b"))?;
    for (from, label, to) in [("g", "a", "h"), ("g", "b", "k"), ("h", "a", "h"), ("h", "b", "k"), ("k", "a", "h")] {
        let (from, to) = (dfa.state_of(from).unwrap(), dfa.state_of(to).unwrap());
        dfa.add_transition(from, &Symbol::new(label), to)?;
    }
    for q in 0..3 {
        dfa.set_final(q, true);
    }
    let system = NumerationSystem::new(alphabet, dfa)?;

    let first: Vec<String> = (0u32..12).map(|n| render_word(&system.rep(n))).collect();
    println!("first words: {}", first.join(", "));
    println!("val(b) = {}", system.val(&word("b"))?);
    println!("rep(1000000) = {}", render_word(&system.rep(1_000_000u32)));
    for len in [4, 10, 40] {
        println!("words of length {len}: {}", system.count_words(len));
    }
    if let Err(e) = system.val(&word("abba")) {
        println!("val(abba): {e}");
    }
    let padded = pad_tuple(&[word("ab"), word("bbaa")], &Symbol::new("#"))?;
    let shown: Vec<String> = padded.components().iter().map(|w| render_word(w)).collect();
    println!("padded tuple: ({})", shown.join(", "));
    Ok(())
}
