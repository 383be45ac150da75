//! From an automatic presentation to a coding of a shape-symmetric fixed point.

use std::collections::BTreeMap;

use super::blocks::{block_decomposition, build_xi_morphism, cut_sequence, BlockDecomposition, XiMorphism};
use super::types::{classify_letters, stabilizing_power, state_type_from_targets, LetterType};
use super::{AutomaticPresentation, ConversionError, MorphicPresentation};
use crate::automata::{canonical_morphism, pad_star_language, product, Dfa, Dfao, Product};
use crate::morphisms::{tuple_labels, MultiMorphism};
use crate::symbol::{Symbol, Tuple};

/// Every intermediate stage of [`automatic_to_morphic`].
#[derive(Debug, Clone)]
pub struct AutomaticToMorphicTrace {
    /// Digits `pad < a_1 < ... < a_r`.
    pub digits: Vec<Symbol>,
    /// Automaton for `pad* L`, completed.
    pub language: Dfa<Symbol>,
    /// The input automaton completed on all tuples of digits.
    pub dfao: Dfao<Tuple>,
    pub product: Product,
    /// The canonical morphism of the product, squares of side `r+1`.
    pub canonical: MultiMorphism,
    /// The stabilizing power `T`.
    pub power: usize,
    /// `canonical^T`; position `n` in an image reads the base-`(r+1)`
    /// expansion of `n` with `T` digits per coordinate.
    pub stabilized: MultiMorphism,
    /// Types of the product letters under `stabilized`.
    pub letter_types: Vec<LetterType>,
    /// Types of the language states for blocks of `T` digits.
    pub state_types: Vec<LetterType>,
    /// Cut positions per language state.
    pub cuts: Vec<Vec<usize>>,
    /// Decompositions of the robust letters met while building the result.
    pub decompositions: BTreeMap<usize, BlockDecomposition>,
    pub xi: XiMorphism,
    pub result: MorphicPresentation,
}

impl AutomaticToMorphicTrace {
    /// Number of blocks per direction of a product letter.
    pub fn h_of(&self, p: usize) -> Vec<usize> {
        self.product.components[p]
            .language_states
            .iter()
            .map(|&k| self.cuts[k].len() - 1)
            .collect()
    }

    /// Number of blocks of a language state.
    pub fn h_state(&self, k: usize) -> usize {
        self.cuts[k].len() - 1
    }
}

/// Targets of every block of `T` digits from `k`, block `n` read most
/// significant digit first.
fn block_targets(l: &Dfa<Symbol>, k: usize, base: usize, t: usize) -> Vec<usize> {
    let mut targets = vec![k];
    for _ in 0..t {
        targets = targets
            .iter()
            .flat_map(|&q| (0..base).map(move |li| l.step_idx(q, li).expect("completed language automaton")))
            .collect();
    }
    targets
}

pub fn automatic_to_morphic(a: &AutomaticPresentation) -> Result<MorphicPresentation, ConversionError> {
    Ok(automatic_to_morphic_traced(a)?.result)
}

pub fn automatic_to_morphic_traced(a: &AutomaticPresentation) -> Result<AutomaticToMorphicTrace, ConversionError> {
    let d = a.dim();
    let pad = a.pad().clone();
    let mut digits = vec![pad.clone()];
    digits.extend(a.system().alphabet().letters().iter().cloned());
    let base = digits.len();

    let lp = pad_star_language(a.system().dfa(), &pad)?;
    // relabel so that label i is digit i
    let language = {
        let mut l = Dfa::new(lp.states().to_vec(), lp.initial(), digits.clone())?;
        for q in 0..lp.num_states() {
            l.set_final(q, lp.is_final(q));
            for (i, s) in digits.iter().enumerate() {
                if let Some(t) = lp.step(q, s) {
                    l.add_transition_idx(q, i, t)?;
                }
            }
        }
        l
    };

    let mut dfao = a.dfao().clone();
    for label in tuple_labels(&digits, d) {
        dfao.dfa_mut().add_label(label);
    }
    if !dfao.dfa().is_complete() {
        let out = dfao.output(dfao.dfa().initial()).clone();
        let name = dfao.dfa().fresh_name("sink");
        let sink = dfao.add_state(name, false, out)?;
        let dfa = dfao.dfa_mut();
        for q in 0..dfa.num_states() {
            for li in 0..dfa.labels().len() {
                if dfa.step_idx(q, li).is_none() {
                    dfa.add_transition_idx(q, li, sink)?;
                }
            }
        }
    }

    let prod = product(&dfao, &language, d)?;
    let canonical = canonical_morphism(prod.dfao.dfa(), &digits)?;
    let psi: Vec<bool> = (0..prod.dfao.dfa().num_states())
        .map(|q| !prod.dfao.dfa().is_final(q))
        .collect();
    let finals: Vec<bool> = psi.iter().map(|b| !b).collect();
    let power = stabilizing_power(&canonical, &psi);
    let stabilized = if power == 1 { canonical.clone() } else { canonical.power(power)? };
    let letter_types = classify_letters(&stabilized, &psi);
    let side = base.pow(power as u32);

    let mut state_types = Vec::with_capacity(language.num_states());
    let mut cuts = Vec::with_capacity(language.num_states());
    for k in 0..language.num_states() {
        let targets = block_targets(&language, k, base, power);
        state_types.push(state_type_from_targets(&language, k, &targets));
        let accepting: Vec<usize> = (0..side).filter(|&n| language.is_final(targets[n])).collect();
        cuts.push(cut_sequence(&accepting, side));
    }

    let components = prod.components.clone();
    let h_of = |p: usize| -> Vec<usize> {
        components[p]
            .language_states
            .iter()
            .map(|&k| cuts[k].len() - 1)
            .collect()
    };
    let mut decompositions = BTreeMap::new();
    let p0 = 0;
    let xi = build_xi_morphism(d, p0, prod.dfao.dfa().states(), h_of, |p| {
        let axis_cuts: Vec<Vec<usize>> = components[p]
            .language_states
            .iter()
            .map(|&k| cuts[k].clone())
            .collect();
        let dec = block_decomposition(&stabilized, &letter_types, &finals, &axis_cuts, p)?;
        decompositions.insert(p, dec.clone());
        Ok(dec)
    })?;
    let coding = xi
        .nu_prime
        .iter()
        .map(|&f| prod.dfao.output(f).clone())
        .collect();
    let result = MorphicPresentation::new_unchecked(xi.morphism.clone(), xi.alpha, coding);
    Ok(AutomaticToMorphicTrace {
        digits,
        language,
        dfao,
        product: prod,
        canonical,
        power,
        stabilized,
        letter_types,
        state_types,
        cuts,
        decompositions,
        xi,
        result,
    })
}
