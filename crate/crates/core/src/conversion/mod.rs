//! The two presentations of multidimensional automatic words and the
//! constructions between them.
//!
//! A [`MorphicPresentation`] describes a word as a coding of the fixed point
//! of a shape-symmetric morphism; an [`AutomaticPresentation`] describes it
//! through an abstract numeration system and an automaton with output.
//! [`morphic_to_automatic`] and [`automatic_to_morphic`] convert between
//! them and [`cross_validate`] compares the words they generate.

mod automatic_to_morphic;
mod blocks;
mod morphic_to_automatic;
mod types;

use std::collections::HashSet;

use thiserror::Error;

use crate::automata::{automatic_window, complete_pad_loops, AutomatonError, Dfao};
use crate::morphisms::{MorphismError, MultiMorphism, ShapeSymmetry};
use crate::numeration::{NumerationError, NumerationSystem};
use crate::pictures::{Picture, PictureError};
use crate::symbol::{Symbol, Tuple};

pub use automatic_to_morphic::{automatic_to_morphic, automatic_to_morphic_traced, AutomaticToMorphicTrace};
pub use blocks::{block_decomposition, build_xi_morphism, cut_sequence, Block, BlockDecomposition, XiLetter, XiMorphism};
pub use morphic_to_automatic::morphic_to_automatic;
pub use types::{classify_letters, stabilizing_power, state_type, table_type, LetterType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConversionError {
    #[error("padding symbol {0} belongs to the numeration alphabet")]
    PadInAlphabet(Symbol),
    #[error("the empty word is not in the numeration language")]
    EmptyWordMissing,
    #[error("the automaton has no transition labels")]
    NoLabels,
    #[error("label {label} has arity {found}, expected {expected}")]
    LabelArity {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("label {label} uses {letter}, which is neither a digit nor the padding symbol")]
    LabelLetter { label: String, letter: Symbol },
    #[error("coding covers {found} letters, morphism has {expected}")]
    CodingSize { expected: usize, found: usize },
    #[error("fixed point is not shape-symmetric: at index {index}, direction {} has extent {} and direction {} has {}", .axes.0, .extents.0, .axes.1, .extents.1)]
    NotShapeSymmetric {
        index: usize,
        axes: (usize, usize),
        extents: (usize, usize),
    },
    #[error("directive languages of directions 0 and {axis} differ")]
    DirectiveLanguagesDiffer { axis: usize },
    #[error("block {block:?} of {letter} erases completely; the construction would need an erasing image")]
    ErasingBlock { letter: Symbol, block: Vec<usize> },
    #[error("dimension mismatch: {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("the two presentations have disjoint output alphabets")]
    DisjointOutputs,
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error(transparent)]
    Picture(#[from] PictureError),
}

/// A coding of the fixed point of a shape-symmetric morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphicPresentation {
    morphism: MultiMorphism,
    seed: usize,
    coding: Vec<Symbol>,
}

impl MorphicPresentation {
    /// Validates that `morphism` is prolongable on `seed` with a
    /// shape-symmetric fixed point. `coding[i]` codes letter `i`.
    pub fn new(morphism: MultiMorphism, seed: &Symbol, coding: Vec<Symbol>) -> Result<Self, ConversionError> {
        let s = morphism.require(seed)?;
        if coding.len() != morphism.letters().len() {
            return Err(ConversionError::CodingSize {
                expected: morphism.letters().len(),
                found: coding.len(),
            });
        }
        match morphism.check_shape_symmetric(s)? {
            ShapeSymmetry::Symmetric => {}
            ShapeSymmetry::Asymmetric { index, axes, extents } => {
                return Err(ConversionError::NotShapeSymmetric { index, axes, extents })
            }
        }
        Ok(MorphicPresentation {
            morphism,
            seed: s,
            coding,
        })
    }

    pub fn with_identity_coding(morphism: MultiMorphism, seed: &Symbol) -> Result<Self, ConversionError> {
        let coding = morphism.letters().to_vec();
        MorphicPresentation::new(morphism, seed, coding)
    }

    /// Trusts the caller; used where the construction guarantees validity.
    pub(crate) fn new_unchecked(morphism: MultiMorphism, seed: usize, coding: Vec<Symbol>) -> Self {
        MorphicPresentation {
            morphism,
            seed,
            coding,
        }
    }

    pub fn morphism(&self) -> &MultiMorphism {
        &self.morphism
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    pub fn seed_symbol(&self) -> &Symbol {
        self.morphism.letter(self.seed)
    }

    pub fn coding(&self) -> &[Symbol] {
        &self.coding
    }

    pub fn dim(&self) -> usize {
        self.morphism.dim()
    }

    /// The prefix of the given shape of the coded fixed point.
    pub fn window(&self, shape: &[usize]) -> Result<Picture<Symbol>, ConversionError> {
        let w = self.morphism.fixed_point_window(self.seed, shape)?;
        Ok(w.map(|&b| self.coding[b].clone()))
    }

    /// Output letters used by the coding.
    pub fn output_alphabet(&self) -> Vec<Symbol> {
        let mut seen = HashSet::new();
        self.coding.iter().filter(|s| seen.insert(*s)).cloned().collect()
    }
}

/// A numeration system with an automaton with output reading padded tuples.
#[derive(Debug, Clone)]
pub struct AutomaticPresentation {
    system: NumerationSystem,
    dfao: Dfao<Tuple>,
    pad: Symbol,
    dim: usize,
}

impl AutomaticPresentation {
    /// Validates the parts and adds missing all-padding self-loops.
    pub fn new(system: NumerationSystem, dfao: Dfao<Tuple>, pad: Symbol) -> Result<Self, ConversionError> {
        if system.alphabet().contains(&pad) {
            return Err(ConversionError::PadInAlphabet(pad));
        }
        if !system.dfa().is_final(system.dfa().initial()) {
            return Err(ConversionError::EmptyWordMissing);
        }
        let dim = dfao.dfa().labels().first().map(Vec::len).ok_or(ConversionError::NoLabels)?;
        if dim == 0 {
            return Err(ConversionError::NoLabels);
        }
        for l in dfao.dfa().labels() {
            if l.len() != dim {
                return Err(ConversionError::LabelArity {
                    label: crate::symbol::render_tuple(l),
                    expected: dim,
                    found: l.len(),
                });
            }
            if let Some(bad) = l.iter().find(|s| **s != pad && !system.alphabet().contains(s)) {
                return Err(ConversionError::LabelLetter {
                    label: crate::symbol::render_tuple(l),
                    letter: bad.clone(),
                });
            }
        }
        let dfao = complete_pad_loops(&dfao, &pad)?;
        Ok(AutomaticPresentation {
            system,
            dfao,
            pad,
            dim,
        })
    }

    pub fn system(&self) -> &NumerationSystem {
        &self.system
    }

    pub fn dfao(&self) -> &Dfao<Tuple> {
        &self.dfao
    }

    pub fn pad(&self) -> &Symbol {
        &self.pad
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window(&self, shape: &[usize]) -> Result<Picture<Symbol>, ConversionError> {
        if shape.len() != self.dim {
            return Err(ConversionError::DimensionMismatch {
                left: self.dim,
                right: shape.len(),
            });
        }
        Ok(automatic_window(&self.dfao, &self.system, shape, &self.pad)?)
    }

    pub fn output_alphabet(&self) -> Vec<Symbol> {
        let mut seen = HashSet::new();
        self.dfao.outputs().iter().filter(|s| seen.insert(*s)).cloned().collect()
    }
}

/// One disagreeing cell found by [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub coords: Vec<usize>,
    pub morphic: Symbol,
    pub automatic: Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub shape: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
}

impl CrossReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the two generated words cell by cell on a window.
pub fn cross_validate(
    m: &MorphicPresentation,
    a: &AutomaticPresentation,
    shape: &[usize],
) -> Result<CrossReport, ConversionError> {
    if m.dim() != a.dim() {
        return Err(ConversionError::DimensionMismatch {
            left: m.dim(),
            right: a.dim(),
        });
    }
    if shape.len() != m.dim() {
        return Err(ConversionError::DimensionMismatch {
            left: m.dim(),
            right: shape.len(),
        });
    }
    let left: HashSet<Symbol> = m.output_alphabet().into_iter().collect();
    if a.output_alphabet().iter().all(|s| !left.contains(s)) {
        return Err(ConversionError::DisjointOutputs);
    }
    let x = m.window(shape)?;
    let y = a.window(shape)?;
    let mismatches = x
        .indexed()
        .zip(y.cells())
        .filter(|((_, u), v)| u != v)
        .map(|((n, u), v)| Mismatch {
            coords: n,
            morphic: u.clone(),
            automatic: v.clone(),
        })
        .collect();
    Ok(CrossReport {
        shape: shape.to_vec(),
        mismatches,
    })
}
