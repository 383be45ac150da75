mod common;

use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use shapesym::cli::format::{self, MorphismFile, SpecFile};
use shapesym::conversion::{automatic_to_morphic, cross_validate, morphic_to_automatic};
use shapesym::{AutomaticPresentation, ConversionError, Symbol};

#[test]
fn data_files_round_trip() {
    for name in ["avoid_bb.num", "pqrs.pres", "shape_symmetric.morph", "not_a_morphism.morph"] {
        let text = std::fs::read_to_string(data_path(name)).unwrap();
        let parsed = format::parse(&text, &pad()).unwrap();
        let printed = match &parsed {
            SpecFile::Numeration(s) => format::print_numeration(s),
            SpecFile::Presentation(p) => format::print_presentation(p),
            SpecFile::Morphism(m) => format::print_morphism(m),
            SpecFile::Dfao(f) => format::print_dfao(f, &pad()),
        };
        let again = format::parse(&printed, &pad()).unwrap();
        let reprinted = match &again {
            SpecFile::Numeration(s) => format::print_numeration(s),
            SpecFile::Presentation(p) => format::print_presentation(p),
            SpecFile::Morphism(m) => format::print_morphism(m),
            SpecFile::Dfao(f) => format::print_dfao(f, &pad()),
        };
        assert_eq!(printed, reprinted, "{name}");
    }
}

#[test]
fn presentation_preconditions() {
    let a = pqrs();
    let hash_digit = AutomaticPresentation::new(a.system().clone(), a.dfao().clone(), Symbol::new("a"));
    assert!(matches!(hash_digit, Err(ConversionError::PadInAlphabet(_))));

    let m = shape_symmetric();
    let recoded = shapesym::MorphicPresentation::new(
        m.morphism().clone(),
        m.seed_symbol(),
        vec![Symbol::new("zz"); m.morphism().letters().len()],
    )
    .unwrap();
    let auto = morphic_to_automatic(&m, &pad()).unwrap();
    assert!(matches!(
        cross_validate(&recoded, &auto, &[3, 3]),
        Err(ConversionError::DisjointOutputs)
    ));
    assert!(matches!(
        cross_validate(&m, &auto, &[3]),
        Err(ConversionError::DimensionMismatch { .. })
    ));
    let broken = morphism_file("not_a_morphism.morph");
    assert!(shapesym::MorphicPresentation::new(broken.morphism, &broken.seed, broken.coding).is_err());
}

#[test]
fn conversions_compose() {
    // automatic to morphic to automatic, and back again
    let a = pqrs();
    let m = automatic_to_morphic(&a).unwrap();
    let b = morphic_to_automatic(&m, &pad()).unwrap();
    assert!(cross_validate(&m, &b, &[30, 30]).unwrap().is_ok());
    let m2 = automatic_to_morphic(&b).unwrap();
    assert!(cross_validate(&m2, &a, &[30, 30]).unwrap().is_ok());

    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..4 {
        let m = random_shape_symmetric(&mut rng, 2);
        let file = MorphismFile {
            morphism: m.morphism().clone(),
            seed: m.seed_symbol().clone(),
            coding: m.coding().to_vec(),
        };
        let text = format::print_morphism(&file);
        assert_eq!(format::parse_morphism(&text).unwrap(), file);
        let a = morphic_to_automatic(&m, &pad()).unwrap();
        let back = automatic_to_morphic(&a).unwrap();
        assert!(cross_validate(&back, &a, &[16, 16]).unwrap().is_ok());
    }
}
