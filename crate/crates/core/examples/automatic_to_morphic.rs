//! From an automatic word to a morphism and coding, with the intermediate
//! product automaton, letter types and block counts.

use shapesym::cli::format;
use shapesym::conversion::{automatic_to_morphic_traced, cross_validate};
use shapesym::Symbol;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/pqrs.pres");
    let a = format::parse_presentation(&std::fs::read_to_string(path)?, &Symbol::new("#"))?;
    let t = automatic_to_morphic_traced(&a)?;

    println!("language states and block counts:");
    for k in 0..t.language.num_states() {
        println!("  {}: type {}, {} blocks", t.language.state_name(k), t.state_types[k], t.h_state(k));
    }
    println!("product letters: {}, stabilizing power: {}", t.canonical.letters().len(), t.power);
    let fp = t.canonical.fixed_point_window(0, &[6, 4])?;
    println!("corner of the product fixed point:\n{}\n", fp.map(|&i| t.canonical.letter(i).clone()));
    println!(
        "block letters: {}, largest image {:?}",
        t.xi.letters.len(),
        t.result.morphism().images().iter().map(|p| p.shape().to_vec()).max().unwrap()
    );
    println!("coded corner:\n{}\n", t.result.window(&[8, 8])?);
    let report = cross_validate(&t.result, &a, &[64, 64])?;
    println!("mismatches on a 64x64 window: {}", report.mismatches.len());
    Ok(())
}
