//! The fixed point of a two-dimensional morphism, its axis lines and the
//! directive language that indexes it.

use shapesym::morphisms::MultiMorphism;
use shapesym::symbol::{render_word, symbols};
use shapesym::{NumerationSystem, OrderedAlphabet, Picture, Symbol};

fn rows(text: &str) -> Picture<Symbol> {
    Picture::from_rows(text.split('/').map(symbols).collect()).expect("rectangular")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let images = [
        ("a", "a b/c d"),
        ("b", "e/c"),
        ("c", "e b"),
        ("d", "f"),
        ("e", "e b/g d"),
        ("f", "a b/c d"),
        ("g", "h b"),
        ("h", "h b/c d"),
    ];
    let mu = MultiMorphism::new(2, images.iter().map(|(l, i)| (Symbol::new(l), rows(i))).collect())?;
    let a = mu.index_of("a").unwrap();
    println!("{}\n", mu.fixed_point_window_symbols(&Symbol::new("a"), &[12, 12])?);

    for axis in 0..2 {
        let line = mu.line_morphism(a, axis)?;
        let parts: Vec<String> = line
            .letters()
            .iter()
            .map(|l| format!("{l} -> {}", render_word(&line.image_of(l).unwrap())))
            .collect();
        println!("direction {}: {}", axis + 1, parts.join(", "));
        println!("  shape sequence {:?}", mu.shape_sequence(a, axis, 12)?);
    }

    let line = mu.line_morphism(a, 0)?;
    let dfa = line.directive_automaton(line.index_of("a").unwrap())?;
    let system = NumerationSystem::new(OrderedAlphabet::new(dfa.labels().to_vec())?, dfa)?;
    let words: Vec<String> = (0u32..10).map(|n| render_word(&system.rep(n))).collect();
    println!("directive language: {}", words.join(", "));
    Ok(())
}
