//! Round trips between the two presentations of random automatic words.
//!
//! Run with an optional seed: `cargo run --example cross_validate -- 7`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use shapesym::automata::{Dfa, Dfao};
use shapesym::conversion::{automatic_to_morphic, cross_validate, morphic_to_automatic};
use shapesym::morphisms::tuple_labels;
use shapesym::symbol::symbols;
use shapesym::{AutomaticPresentation, NumerationSystem, OrderedAlphabet, Symbol};

fn random_presentation(rng: &mut StdRng) -> AutomaticPresentation {
    let pad = Symbol::new("#");
    // base-2 numeration: words without leading zero
    let mut lang = Dfa::new(symbols("s t"), 0, symbols("0 1")).unwrap();
    lang.add_transition_idx(0, 1, 1).unwrap();
    lang.add_transition_idx(1, 0, 1).unwrap();
    lang.add_transition_idx(1, 1, 1).unwrap();
    lang.set_final(0, true);
    lang.set_final(1, true);
    let system = NumerationSystem::new(OrderedAlphabet::new(symbols("0 1")).unwrap(), lang).unwrap();
    let labels = tuple_labels(&symbols("# 0 1"), 2);
    let n = rng.gen_range(2..=4);
    let names = (0..n).map(|i| Symbol::new(format!("q{i}"))).collect();
    let mut dfa = Dfa::new(names, 0, labels.clone()).unwrap();
    for q in 0..n {
        for (li, l) in labels.iter().enumerate() {
            if l.iter().any(|s| *s != pad) {
                dfa.add_transition_idx(q, li, rng.gen_range(0..n)).unwrap();
            }
        }
    }
    let outputs = (0..n).map(|i| Symbol::new(if i % 2 == 0 { "." } else { "X" })).collect();
    AutomaticPresentation::new(system, Dfao::new(dfa, outputs).unwrap(), pad).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1u64);
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..5 {
        let a = random_presentation(&mut rng);
        let m = automatic_to_morphic(&a)?;
        let back = morphic_to_automatic(&m, &Symbol::new("#"))?;
        let forward = cross_validate(&m, &a, &[32, 32])?;
        let round = cross_validate(&m, &back, &[32, 32])?;
        println!(
            "word {i}: {} block letters, mismatches {} and {}",
            m.morphism().letters().len(),
            forward.mismatches.len(),
            round.mismatches.len()
        );
        if i == 0 {
            println!("{}", m.window(&[16, 8])?);
        }
    }
    Ok(())
}
