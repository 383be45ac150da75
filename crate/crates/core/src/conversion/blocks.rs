//! Block factorization of the images of robust letters and the morphism on
//! the alphabet of block letters.

use std::collections::{BTreeMap, HashMap};

use super::types::LetterType;
use super::ConversionError;
use crate::morphisms::MultiMorphism;
use crate::pictures::{BoxIter, Picture};
use crate::symbol::Symbol;

/// Cut positions `d(0) = 0 < d(1) < ... < d(h) = side` such that every
/// interval `[d(i), d(i+1))` holds exactly one of the sorted `accepting`
/// positions. The cut is placed at each accepting position after the first.
pub fn cut_sequence(accepting: &[usize], side: usize) -> Vec<usize> {
    if accepting.is_empty() {
        return vec![0];
    }
    let mut cuts = vec![0];
    cuts.extend(accepting.iter().skip(1).copied());
    cuts.push(side);
    cuts
}

/// One block `w` of the image of a robust letter together with its erased
/// form `v` and the unique final letter it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// The block with dead letters replaced by `None`.
    pub w: Picture<Option<usize>>,
    /// The block after also blanking moribund letters and erasing blank hyperplanes.
    pub v: Picture<usize>,
    pub final_letter: usize,
}

/// The factorization of the image of one robust letter into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub letter: usize,
    /// Cut positions per direction.
    pub cuts: Vec<Vec<usize>>,
    /// Number of blocks per direction.
    pub h: Vec<usize>,
    /// Blocks keyed by their offsets.
    pub blocks: BTreeMap<Vec<usize>, Block>,
}

impl BlockDecomposition {
    pub fn block(&self, offsets: &[usize]) -> Option<&Block> {
        self.blocks.get(offsets)
    }
}

/// Splits `phi(p)` along the given cut positions (one list per direction).
///
/// `types` classifies the letters of `phi` and `finals` marks the final ones.
pub fn block_decomposition(
    phi: &MultiMorphism,
    types: &[LetterType],
    finals: &[bool],
    cuts: &[Vec<usize>],
    p: usize,
) -> Result<BlockDecomposition, ConversionError> {
    let letter = || phi.letter(p).clone();
    let image = phi.image(p);
    let lambda_dead = image.map(|&b| (types[b] != LetterType::Dead).then_some(b));
    let h: Vec<usize> = cuts.iter().map(|c| c.len() - 1).collect();
    let mut blocks = BTreeMap::new();
    for offsets in BoxIter::new(&h) {
        let from: Vec<usize> = offsets.iter().zip(cuts).map(|(&i, c)| c[i]).collect();
        let to: Vec<usize> = offsets.iter().zip(cuts).map(|(&i, c)| c[i + 1] - 1).collect();
        let w = lambda_dead.factor(&from, &to)?;
        let finals_in: Vec<usize> = w.cells().iter().flatten().copied().filter(|&b| finals[b]).collect();
        assert_eq!(finals_in.len(), 1, "every block holds exactly one final letter");
        let lambda_m = w.map(|c| c.filter(|&b| types[b] != LetterType::Moribund));
        let erased = lambda_m.erase(&None);
        if erased.is_empty() {
            return Err(ConversionError::ErasingBlock {
                letter: letter(),
                block: offsets,
            });
        }
        let v = erased
            .try_map(|c| *c)
            .expect("blank cells of a robust image lie on blank hyperplanes");
        blocks.insert(
            offsets,
            Block {
                w,
                v,
                final_letter: finals_in[0],
            },
        );
    }
    Ok(BlockDecomposition {
        letter: p,
        cuts: cuts.to_vec(),
        h,
        blocks,
    })
}

/// A block letter: a robust letter with block offsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiLetter {
    pub product: usize,
    pub offsets: Vec<usize>,
}

/// The morphism on block letters reachable from the seed block letter.
#[derive(Debug, Clone)]
pub struct XiMorphism {
    pub letters: Vec<XiLetter>,
    pub morphism: MultiMorphism,
    /// Index of the seed block letter (always 0).
    pub alpha: usize,
    /// The final letter of the block behind each block letter.
    pub nu_prime: Vec<usize>,
}

/// Builds the block-letter morphism from `α(p0, 0, ..., 0)`.
///
/// `h_of(p)` gives the block counts of a robust letter per direction,
/// `decompose(p)` its block decomposition, and `names[p]` its name.
pub fn build_xi_morphism(
    dim: usize,
    p0: usize,
    names: &[Symbol],
    h_of: impl Fn(usize) -> Vec<usize>,
    mut decompose: impl FnMut(usize) -> Result<BlockDecomposition, ConversionError>,
) -> Result<XiMorphism, ConversionError> {
    let mut cache: HashMap<usize, BlockDecomposition> = HashMap::new();
    let alpha = XiLetter {
        product: p0,
        offsets: vec![0; dim],
    };
    let mut letters = vec![alpha.clone()];
    let mut index: HashMap<XiLetter, usize> = HashMap::from([(alpha, 0)]);
    let mut images: Vec<Picture<usize>> = Vec::new();
    let mut nu_prime = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let xi = letters[i].clone();
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(xi.product) {
            e.insert(decompose(xi.product)?);
        }
        let block = cache[&xi.product]
            .block(&xi.offsets)
            .expect("offsets within the block counts")
            .clone();
        nu_prime.push(block.final_letter);
        let v = &block.v;
        // widths of the grid rows and columns of u
        let widths: Vec<Vec<usize>> = (0..dim)
            .map(|axis| {
                (0..v.shape()[axis])
                    .map(|m| {
                        let mut n = vec![0; dim];
                        n[axis] = m;
                        h_of(*v.at(&n))[axis]
                    })
                    .collect()
            })
            .collect();
        let starts: Vec<Vec<usize>> = widths
            .iter()
            .map(|ws| {
                ws.iter()
                    .scan(0, |acc, &w| {
                        let s = *acc;
                        *acc += w;
                        Some(s)
                    })
                    .collect()
            })
            .collect();
        let shape: Vec<usize> = widths.iter().map(|ws| ws.iter().sum()).collect();
        let mut cells: Vec<Option<usize>> = vec![None; shape.iter().product()];
        for (m, &q) in v.indexed() {
            let hq = h_of(q);
            for (axis, w) in widths.iter().enumerate() {
                assert_eq!(hq[axis], w[m[axis]], "grid blocks agree along each hyperplane");
            }
            for sub in BoxIter::new(&hq) {
                let target = XiLetter {
                    product: q,
                    offsets: sub.clone(),
                };
                let j = *index.entry(target.clone()).or_insert_with(|| {
                    letters.push(target);
                    letters.len() - 1
                });
                let mut off = 0;
                let mut stride = 1;
                for axis in 0..dim {
                    off += (starts[axis][m[axis]] + sub[axis]) * stride;
                    stride *= shape[axis];
                }
                cells[off] = Some(j);
            }
        }
        let cells = cells.into_iter().map(|c| c.expect("grid covers the image")).collect();
        images.push(Picture::new(shape, cells)?);
        i += 1;
    }
    let symbols: Vec<Symbol> = letters
        .iter()
        .map(|x| {
            let offs: Vec<String> = x.offsets.iter().map(ToString::to_string).collect();
            Symbol::new(format!("{}@{}", names[x.product], offs.join(",")))
        })
        .collect();
    let morphism = MultiMorphism::from_indexed(dim, symbols, images)?;
    Ok(XiMorphism {
        letters,
        morphism,
        alpha: 0,
        nu_prime,
    })
}
