//! From a coding of a shape-symmetric fixed point to an automatic presentation.

use std::collections::HashMap;

use super::{AutomaticPresentation, ConversionError, MorphicPresentation};
use crate::automata::{equivalent, Dfa, Dfao};
use crate::morphisms::{digit_symbols, tuple_labels};
use crate::numeration::{NumerationSystem, OrderedAlphabet};
use crate::symbol::{Symbol, Tuple};

/// Builds the numeration system on the directive language of the
/// direction-0 line of the fixed point, and the automaton that reads
/// digit tuples through the images of the morphism.
///
/// The padding symbol is read as the digit `0`; the all-padding tuple loops.
pub fn morphic_to_automatic(m: &MorphicPresentation, pad: &Symbol) -> Result<AutomaticPresentation, ConversionError> {
    let mu = m.morphism();
    let a = m.seed();
    let d = mu.dim();
    let lines = (0..d)
        .map(|i| mu.line_morphism(a, i))
        .collect::<Result<Vec<_>, _>>()?;
    let automata = lines
        .iter()
        .map(|line| line.directive_automaton(line.index_of(mu.letter(a).as_str()).expect("seed on its line")))
        .collect::<Result<Vec<_>, _>>()?;
    for (axis, l) in automata.iter().enumerate().skip(1) {
        if !equivalent(&automata[0], l) {
            return Err(ConversionError::DirectiveLanguagesDiffer { axis });
        }
    }
    let l0 = automata.into_iter().next().expect("dimension at least one");
    let digits = l0.labels().to_vec();
    if digits.contains(pad) {
        return Err(ConversionError::PadInAlphabet(pad.clone()));
    }
    let system = NumerationSystem::new(OrderedAlphabet::new(digits.clone())?, l0)?;

    let states = mu.reachable_letters(a);
    let pos: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut letters = vec![pad.clone()];
    letters.extend(digit_symbols(digits.len()));
    let labels: Vec<Tuple> = tuple_labels(&letters, d);
    let names = states.iter().map(|&b| mu.letter(b).clone()).collect();
    let mut dfa = Dfa::new(names, pos[&a], labels.clone())?;
    for (qi, &b) in states.iter().enumerate() {
        dfa.set_final(qi, true);
        let img = mu.image(b);
        for (li, label) in labels.iter().enumerate() {
            if label.iter().all(|s| s == pad) {
                dfa.add_transition_idx(qi, li, qi)?;
                continue;
            }
            // letter index 0 is the pad, read as digit 0
            let n: Vec<usize> = label
                .iter()
                .map(|s| letters.iter().position(|x| x == s).unwrap().saturating_sub(1))
                .collect();
            if let Some(&c) = img.get(&n) {
                dfa.add_transition_idx(qi, li, pos[&c])?;
            }
        }
    }
    let outputs = states.iter().map(|&b| m.coding()[b].clone()).collect();
    let dfao = Dfao::new(dfa, outputs)?;
    AutomaticPresentation::new(system, dfao, pad.clone())
}
