//! Deciding morphism-hood and shape-symmetry, compared with direct expansion.

use shapesym::morphisms::{MorphismCheck, MultiMorphism, ShapeSymmetry};
use shapesym::symbol::symbols;
use shapesym::{Picture, Symbol};

fn rows(text: &str) -> Picture<Symbol> {
    Picture::from_rows(text.split('/').map(symbols).collect()).expect("rectangular")
}

fn report(name: &str, mu: &MultiMorphism) {
    println!("{name}");
    let check = mu.check_morphism(&[0]);
    match &check {
        MorphismCheck::Morphism => println!("  morphism: yes"),
        MorphismCheck::NotMorphism { n, axis, first, second } => {
            println!("  morphism: no, power {n} fails in direction {} ({first} vs {second})", axis + 1)
        }
    }
    for n in 1..=4 {
        match mu.iterate(0, n) {
            Ok(p) => println!("  power {n}: shape {:?}", p.shape()),
            Err(e) => {
                println!("  power {n}: {e}");
                break;
            }
        }
    }
    if check == MorphismCheck::Morphism {
        match mu.check_shape_symmetric(0) {
            Ok(ShapeSymmetry::Symmetric) => println!("  shape-symmetric: yes"),
            Ok(ShapeSymmetry::Asymmetric { index, axes, extents }) => println!(
                "  shape-symmetric: no, index {index}: direction {} has {}, direction {} has {}",
                axes.0 + 1,
                extents.0,
                axes.1 + 1,
                extents.1
            ),
            Err(e) => println!("  shape-symmetric: {e}"),
        }
    }
}

fn build(images: &[(&str, &str)]) -> MultiMorphism {
    MultiMorphism::new(2, images.iter().map(|(l, i)| (Symbol::new(l), rows(i))).collect()).unwrap()
}

fn main() {
    report(
        "images that stop fitting at the second power",
        &build(&[("a", "a a/b d"), ("b", "c/b"), ("c", "a a"), ("d", "d")]),
    );
    report(
        "a morphism whose directions grow differently",
        &build(&[("a", "a b/a b"), ("b", "b/b")]),
    );
    report(
        "a shape-symmetric morphism",
        &build(&[
            ("a", "a b/c d"),
            ("b", "e/c"),
            ("c", "e b"),
            ("d", "f"),
            ("e", "e b/g d"),
            ("f", "a b/c d"),
            ("g", "h b"),
            ("h", "h b/c d"),
        ]),
    );
}
