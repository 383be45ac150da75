//! Abstract numeration systems, multidimensional S-automatic words and
//! shape-symmetric morphic words.
//!
//! A d-dimensional infinite word is S-automatic for some abstract numeration
//! system S exactly when it is the image under a coding of a shape-symmetric
//! fixed point of a d-dimensional morphism. This crate implements both
//! sides and both constructive directions:
//!
//! * [`numeration`]: genealogical enumeration of regular languages (`rep`, `val`);
//! * [`automata`]: DFAs and DFAOs over tuple labels, S-automatic windows;
//! * [`pictures`]: bounded d-dimensional pictures and the erasing map;
//! * [`morphisms`]: d-dimensional morphisms, fixed points and decision procedures;
//! * [`conversion`]: morphic to automatic, automatic to morphic, cross-validation;
//! * [`cli`]: text file formats and the command-line front end.

pub mod automata;
pub mod cli;
pub mod conversion;
pub mod morphisms;
pub mod numeration;
pub mod pictures;
pub mod symbol;

pub use automata::{AutomatonError, Dfa, Dfao};
pub use conversion::{AutomaticPresentation, ConversionError, MorphicPresentation};
pub use morphisms::{MorphismError, MultiMorphism, UniMorphism};
pub use numeration::{NumerationError, NumerationSystem, OrderedAlphabet};
pub use pictures::{Picture, PictureError};
pub use symbol::{Symbol, Tuple, Word};
