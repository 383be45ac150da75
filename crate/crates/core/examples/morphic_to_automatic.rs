//! From a shape-symmetric morphism to a numeration system and an automaton
//! generating the same word.

use shapesym::cli::format;
use shapesym::conversion::{cross_validate, morphic_to_automatic};
use shapesym::{MorphicPresentation, Symbol};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/shape_symmetric.morph");
    let file = format::parse_morphism(&std::fs::read_to_string(path)?)?;
    let m = MorphicPresentation::new(file.morphism, &file.seed, file.coding)?;
    let a = morphic_to_automatic(&m, &Symbol::new("#"))?;
    print!("{}", format::print_presentation(&a));
    let report = cross_validate(&m, &a, &[40, 40])?;
    println!("\nmismatches on a 40x40 window: {}", report.mismatches.len());
    Ok(())
}
