//! Multidimensional morphisms, their fixed points, and the decision
//! procedures for morphism-hood and shape-symmetry.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::automata::{AutomatonError, Dfa};
use crate::pictures::{Picture, PictureError};
use crate::symbol::{Symbol, Tuple, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("unknown letter {0}")]
    UnknownLetter(Symbol),
    #[error("letter {0} is defined twice")]
    DuplicateLetter(Symbol),
    #[error("image of {0} is empty")]
    EmptyImage(Symbol),
    #[error("image of {letter} has dimension {found}, expected {expected}")]
    Dimension {
        letter: Symbol,
        expected: usize,
        found: usize,
    },
    #[error("slice {index} in direction {axis}: images of {first} and {second} have different extents")]
    Incompatible {
        axis: usize,
        index: usize,
        first: Symbol,
        second: Symbol,
    },
    #[error("not a morphism: power {n} is undefined ({first} and {second} disagree in direction {axis})")]
    NotMorphism {
        n: usize,
        axis: usize,
        first: Symbol,
        second: Symbol,
    },
    #[error("not prolongable on {0}")]
    NotProlongable(Symbol),
    #[error("fixed point is bounded in direction {axis} with extent {extent}")]
    BoundedFixedPoint { axis: usize, extent: usize },
    #[error("fixed point is not shape-symmetric: at index {index}, direction {} has extent {} and direction {} has {}", .axes.0, .extents.0, .axes.1, .extents.1)]
    NotShapeSymmetric {
        index: usize,
        axes: (usize, usize),
        extents: (usize, usize),
    },
    #[error(transparent)]
    Picture(#[from] PictureError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Outcome of [`MultiMorphism::check_morphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismCheck {
    Morphism,
    /// `μ^n(seed)` is not well defined: two letters of one hyperplane of
    /// `μ^{n-1}(seed)` have images of different extent in direction `axis`.
    NotMorphism {
        n: usize,
        axis: usize,
        first: Symbol,
        second: Symbol,
    },
}

/// Outcome of [`MultiMorphism::check_shape_symmetric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeSymmetry {
    Symmetric,
    Asymmetric {
        index: usize,
        axes: (usize, usize),
        extents: (usize, usize),
    },
}

/// A non-erasing map from letters to d-dimensional pictures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMorphism {
    dim: usize,
    letters: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    images: Vec<Picture<usize>>,
}

impl MultiMorphism {
    /// Builds a morphism from `(letter, image)` pairs; letter order is kept.
    pub fn new(dim: usize, entries: Vec<(Symbol, Picture<Symbol>)>) -> Result<Self, MorphismError> {
        let mut index = HashMap::new();
        let mut letters = Vec::new();
        for (s, _) in &entries {
            if index.insert(s.clone(), letters.len()).is_some() {
                return Err(MorphismError::DuplicateLetter(s.clone()));
            }
            letters.push(s.clone());
        }
        let mut images = Vec::new();
        for (s, img) in &entries {
            let idx = img.try_map(|c| index.get(c).copied()).map_err(|_| {
                let bad = img.cells().iter().find(|c| !index.contains_key(*c)).unwrap();
                MorphismError::UnknownLetter(bad.clone())
            })?;
            if img.dim() != dim {
                return Err(MorphismError::Dimension {
                    letter: s.clone(),
                    expected: dim,
                    found: img.dim(),
                });
            }
            images.push(idx);
        }
        MultiMorphism::from_indexed(dim, letters, images)
    }

    /// Builds a morphism whose images refer to letters by index.
    pub fn from_indexed(dim: usize, letters: Vec<Symbol>, images: Vec<Picture<usize>>) -> Result<Self, MorphismError> {
        let mut index = HashMap::new();
        for (i, s) in letters.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(MorphismError::DuplicateLetter(s.clone()));
            }
        }
        for (i, img) in images.iter().enumerate() {
            if img.dim() != dim {
                return Err(MorphismError::Dimension {
                    letter: letters[i].clone(),
                    expected: dim,
                    found: img.dim(),
                });
            }
            if img.is_empty() {
                return Err(MorphismError::EmptyImage(letters[i].clone()));
            }
            if let Some(&bad) = img.cells().iter().find(|&&c| c >= letters.len()) {
                return Err(MorphismError::UnknownLetter(Symbol::new(format!("#{bad}"))));
            }
        }
        if images.len() != letters.len() {
            return Err(MorphismError::UnknownLetter(
                letters.get(images.len()).cloned().unwrap_or_else(|| Symbol::new("?")),
            ));
        }
        Ok(MultiMorphism {
            dim,
            letters,
            index,
            images,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> &Symbol {
        &self.letters[i]
    }

    pub fn index_of(&self, s: &str) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &Symbol) -> Result<usize, MorphismError> {
        self.index_of(s.as_str())
            .ok_or_else(|| MorphismError::UnknownLetter(s.clone()))
    }

    pub fn image(&self, i: usize) -> &Picture<usize> {
        &self.images[i]
    }

    pub fn images(&self) -> &[Picture<usize>] {
        &self.images
    }

    pub fn image_of(&self, s: &Symbol) -> Result<Picture<Symbol>, MorphismError> {
        Ok(self.to_symbols(self.image(self.require(s)?)))
    }

    pub fn extent(&self, letter: usize, axis: usize) -> usize {
        self.images[letter].shape()[axis]
    }

    /// The largest extent of any image in any direction.
    pub fn r_max(&self) -> usize {
        self.images
            .iter()
            .flat_map(|p| p.shape().iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn to_indexed(&self, x: &Picture<Symbol>) -> Result<Picture<usize>, MorphismError> {
        x.try_map(|s| self.index_of(s.as_str())).map_err(|_| {
            let bad = x.cells().iter().find(|s| self.index_of(s.as_str()).is_none()).unwrap();
            MorphismError::UnknownLetter(bad.clone())
        })
    }

    pub fn to_symbols(&self, x: &Picture<usize>) -> Picture<Symbol> {
        x.map(|&i| self.letters[i].clone())
    }

    /// Per-direction image extents of each slice of `x`, checked for agreement.
    fn slice_extents(&self, x: &Picture<usize>) -> Result<Vec<Vec<usize>>, MorphismError> {
        let d = self.dim;
        let mut ext: Vec<Vec<Option<(usize, usize)>>> =
            x.shape().iter().map(|&s| vec![None; s]).collect();
        for (n, &b) in x.indexed() {
            for axis in 0..d {
                let e = self.extent(b, axis);
                match ext[axis][n[axis]] {
                    None => ext[axis][n[axis]] = Some((e, b)),
                    Some((e0, b0)) if e0 != e => {
                        return Err(MorphismError::Incompatible {
                            axis,
                            index: n[axis],
                            first: self.letters[b0].clone(),
                            second: self.letters[b].clone(),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(ext
            .into_iter()
            .map(|v| v.into_iter().map(|o| o.map_or(0, |(e, _)| e)).collect())
            .collect())
    }

    /// `μ(x)`, with the window optionally truncated to `limit`.
    fn apply_within(&self, x: &Picture<usize>, limit: Option<&[usize]>) -> Result<Picture<usize>, MorphismError> {
        if x.dim() != self.dim {
            return Err(MorphismError::Picture(PictureError::Dimension {
                expected: self.dim,
                found: x.dim(),
            }));
        }
        if x.is_empty() {
            return Ok(x.clone());
        }
        let ext = self.slice_extents(x)?;
        let offsets: Vec<Vec<usize>> = ext
            .iter()
            .map(|e| {
                let mut acc = 0;
                let mut o = Vec::with_capacity(e.len() + 1);
                for &v in e {
                    o.push(acc);
                    acc += v;
                }
                o.push(acc);
                o
            })
            .collect();
        let shape: Vec<usize> = (0..self.dim)
            .map(|i| {
                let total = *offsets[i].last().unwrap();
                limit.map_or(total, |l| total.min(l[i]))
            })
            .collect();
        let mut cells: Vec<Option<usize>> = vec![None; shape.iter().product()];
        let strides: Vec<usize> = shape
            .iter()
            .scan(1, |acc, &s| {
                let st = *acc;
                *acc *= s;
                Some(st)
            })
            .collect();
        for (n, &b) in x.indexed() {
            if (0..self.dim).any(|i| offsets[i][n[i]] >= shape[i]) {
                continue;
            }
            for (m, &c) in self.images[b].indexed() {
                let mut off = 0;
                let mut inside = true;
                for i in 0..self.dim {
                    let p = offsets[i][n[i]] + m[i];
                    if p >= shape[i] {
                        inside = false;
                        break;
                    }
                    off += p * strides[i];
                }
                if inside {
                    cells[off] = Some(c);
                }
            }
        }
        let cells = cells.into_iter().map(|c| c.expect("blocks tile the window")).collect();
        Ok(Picture::new(shape, cells)?)
    }

    pub fn apply_indexed(&self, x: &Picture<usize>) -> Result<Picture<usize>, MorphismError> {
        self.apply_within(x, None)
    }

    /// The prefix of `μ(x)` of shape at most `limit`.
    pub fn apply_truncated(&self, x: &Picture<usize>, limit: &[usize]) -> Result<Picture<usize>, MorphismError> {
        self.apply_within(x, Some(limit))
    }

    pub fn apply(&self, x: &Picture<Symbol>) -> Result<Picture<Symbol>, MorphismError> {
        let ix = self.to_indexed(x)?;
        Ok(self.to_symbols(&self.apply_indexed(&ix)?))
    }

    /// `μ^n(b)` for a letter index.
    pub fn iterate(&self, b: usize, n: usize) -> Result<Picture<usize>, MorphismError> {
        let mut x = Picture::singleton(self.dim, b);
        for _ in 0..n {
            x = self.apply_indexed(&x)?;
        }
        Ok(x)
    }

    /// The morphism `μ^t` (`t ≥ 1`) on the same alphabet.
    pub fn power(&self, t: usize) -> Result<MultiMorphism, MorphismError> {
        assert!(t >= 1, "power must be positive");
        let images = (0..self.letters.len())
            .map(|b| self.iterate(b, t))
            .collect::<Result<Vec<_>, _>>()?;
        MultiMorphism::from_indexed(self.dim, self.letters.clone(), images)
    }

    /// `occurs[a]` is the set of letters occurring in `μ(a)`.
    pub fn production_graph(&self) -> Vec<BTreeSet<usize>> {
        self.images
            .iter()
            .map(|img| img.cells().iter().copied().collect())
            .collect()
    }

    /// Letters occurring in some `μ^n(a)`, `n ≥ 0`, in alphabet order.
    pub fn reachable_letters(&self, a: usize) -> Vec<usize> {
        let g = self.production_graph();
        let mut seen = vec![false; self.letters.len()];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(b) = stack.pop() {
            for &c in &g[b] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        (0..seen.len()).filter(|&b| seen[b]).collect()
    }

    /// Decides whether every power `μ^n(a)`, `a` in `seeds`, is well defined.
    ///
    /// Explores the finite set of letter sets that occur on a single
    /// hyperplane of some `μ^n(a)`, direction by direction.
    pub fn check_morphism(&self, seeds: &[usize]) -> MorphismCheck {
        let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
        let mut queue = VecDeque::new();
        for &a in seeds {
            for axis in 0..self.dim {
                let st = (axis, vec![a]);
                if seen.insert(st.clone()) {
                    queue.push_back((st, 0usize));
                }
            }
        }
        while let Some(((axis, set), depth)) = queue.pop_front() {
            let e = self.extent(set[0], axis);
            if let Some(&b) = set.iter().find(|&&b| self.extent(b, axis) != e) {
                return MorphismCheck::NotMorphism {
                    n: depth + 1,
                    axis,
                    first: self.letters[set[0]].clone(),
                    second: self.letters[b].clone(),
                };
            }
            for t in 0..e {
                let mut child = BTreeSet::new();
                for &b in &set {
                    let sl = self.images[b].slice(axis, t).expect("extent checked");
                    child.extend(sl.cells().iter().copied());
                }
                let st = (axis, child.into_iter().collect::<Vec<_>>());
                if seen.insert(st.clone()) {
                    queue.push_back((st, depth + 1));
                }
            }
        }
        MorphismCheck::Morphism
    }

    /// Whether `μ` is a morphism on the letters reachable from `a` and `μ(a)`
    /// has `a` in its corner.
    pub fn is_prolongable(&self, a: usize) -> bool {
        let corner = *self.images[a].at(&vec![0; self.dim]);
        corner == a && self.check_morphism(&[a]) == MorphismCheck::Morphism
    }

    fn require_prolongable(&self, a: usize) -> Result<(), MorphismError> {
        if let MorphismCheck::NotMorphism { n, axis, first, second } = self.check_morphism(&[a]) {
            return Err(MorphismError::NotMorphism { n, axis, first, second });
        }
        if *self.images[a].at(&vec![0; self.dim]) != a {
            return Err(MorphismError::NotProlongable(self.letters[a].clone()));
        }
        Ok(())
    }

    /// The prefix of shape `shape` of the fixed point `μ^ω(a)`.
    pub fn fixed_point_window(&self, a: usize, shape: &[usize]) -> Result<Picture<usize>, MorphismError> {
        self.require_prolongable(a)?;
        if shape.len() != self.dim {
            return Err(MorphismError::Picture(PictureError::Dimension {
                expected: self.dim,
                found: shape.len(),
            }));
        }
        if shape.contains(&0) {
            return Ok(Picture::empty(self.dim));
        }
        let mut x = Picture::singleton(self.dim, a);
        loop {
            let y = self.apply_truncated(&x, shape)?;
            if y == x {
                break;
            }
            x = y;
        }
        for (axis, (&got, &want)) in x.shape().iter().zip(shape).enumerate() {
            if got < want {
                return Err(MorphismError::BoundedFixedPoint { axis, extent: got });
            }
        }
        Ok(x)
    }

    pub fn fixed_point_window_symbols(&self, a: &Symbol, shape: &[usize]) -> Result<Picture<Symbol>, MorphismError> {
        let w = self.fixed_point_window(self.require(a)?, shape)?;
        Ok(self.to_symbols(&w))
    }

    /// First `kmax` terms of the direction-`axis` shape sequence of `μ^ω(a)`.
    pub fn shape_sequence(&self, a: usize, axis: usize, kmax: usize) -> Result<Vec<usize>, MorphismError> {
        let line = self.line_morphism(a, axis)?;
        let seed = line.index_of(self.letter(a).as_str()).expect("seed on its own line");
        let word = line.fixed_point_prefix(seed, kmax)?;
        if word.len() < kmax {
            return Err(MorphismError::BoundedFixedPoint {
                axis,
                extent: word.len(),
            });
        }
        Ok(word
            .iter()
            .map(|&b| self.extent(self.require(line.letter(b)).expect("shared letter"), axis))
            .collect())
    }

    /// The letter at position `t` of the direction-`axis` border of `μ(b)`.
    fn border_letter(&self, b: usize, axis: usize, t: usize) -> usize {
        let mut n = vec![0; self.dim];
        n[axis] = t;
        *self.images[b].at(&n)
    }

    /// Decides whether the fixed point `μ^ω(a)` is shape-symmetric.
    ///
    /// Since all letters of a hyperplane of the fixed point share their
    /// image extent, the extent at index `k` in direction `i` is that of
    /// the letter at `k` on the direction-`i` axis. The procedure explores
    /// the finite set of joint tuples of axis letters at common indices.
    pub fn check_shape_symmetric(&self, a: usize) -> Result<ShapeSymmetry, MorphismError> {
        self.require_prolongable(a)?;
        let d = self.dim;
        let start = vec![a; d];
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(tuple) = queue.pop_front() {
            let ext: Vec<usize> = (0..d).map(|i| self.extent(tuple[i], i)).collect();
            if ext.iter().any(|&e| e != ext[0]) {
                return self.shape_symmetry_witness(a).map(|(index, axes, extents)| ShapeSymmetry::Asymmetric {
                    index,
                    axes,
                    extents,
                });
            }
            for t in 0..ext[0] {
                let child: Vec<usize> = (0..d).map(|i| self.border_letter(tuple[i], i, t)).collect();
                if seen.insert(child.clone()) {
                    queue.push_back(child);
                }
            }
        }
        Ok(ShapeSymmetry::Symmetric)
    }

    /// Scans the axis lines of the fixed point for the first index where two
    /// directions disagree. Only called once a disagreement is known to exist.
    fn shape_symmetry_witness(&self, a: usize) -> Result<(usize, (usize, usize), (usize, usize)), MorphismError> {
        let lines = (0..self.dim)
            .map(|i| self.line_morphism(a, i))
            .collect::<Result<Vec<_>, _>>()?;
        let mut len = 16;
        loop {
            let mut extents = Vec::with_capacity(self.dim);
            for (axis, line) in lines.iter().enumerate() {
                let seed = line.index_of(self.letter(a).as_str()).expect("seed on its own line");
                let word = line.fixed_point_prefix(seed, len)?;
                let ext: Vec<usize> = word
                    .iter()
                    .map(|&b| self.extent(self.index_of(line.letter(b).as_str()).expect("shared letter"), axis))
                    .collect();
                extents.push(ext);
            }
            let common = extents.iter().map(Vec::len).min().unwrap_or(0);
            for k in 0..common {
                for i in 1..self.dim {
                    if extents[i][k] != extents[0][k] {
                        return Ok((k, (0, i), (extents[0][k], extents[i][k])));
                    }
                }
            }
            if extents.iter().all(|e| e.len() < len) {
                unreachable!("joint closure found a disagreement the lines do not show");
            }
            len *= 2;
        }
    }

    /// The unidimensional morphism along direction `axis` of the fixed point.
    pub fn line_morphism(&self, a: usize, axis: usize) -> Result<UniMorphism, MorphismError> {
        let mut order = vec![a];
        let mut seen = HashSet::from([a]);
        let mut i = 0;
        while i < order.len() {
            let b = order[i];
            for t in 0..self.extent(b, axis) {
                let c = self.border_letter(b, axis, t);
                if seen.insert(c) {
                    order.push(c);
                }
            }
            i += 1;
        }
        order.sort_unstable();
        let entries = order
            .iter()
            .map(|&b| {
                let w = (0..self.extent(b, axis))
                    .map(|t| self.letters[self.border_letter(b, axis, t)].clone())
                    .collect();
                (self.letters[b].clone(), w)
            })
            .collect();
        UniMorphism::new(entries)
    }

    /// The automaton `A_{μ,a}`: states are the letters reachable from `a`,
    /// and reading the digit tuple `n` from `b` leads to `μ(b)_n`.
    pub fn multidim_directive_automaton(&self, a: usize) -> Result<Dfa<Tuple>, MorphismError> {
        if let ShapeSymmetry::Asymmetric { index, axes, extents } = self.check_shape_symmetric(a)? {
            return Err(MorphismError::NotShapeSymmetric { index, axes, extents });
        }
        let states = self.reachable_letters(a);
        let r = self.r_max();
        let digits = digit_symbols(r);
        let labels: Vec<Tuple> = tuple_labels(&digits, self.dim);
        let names = states.iter().map(|&b| self.letters[b].clone()).collect();
        let pos: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut dfa = Dfa::new(names, pos[&a], labels)?;
        for (qi, &b) in states.iter().enumerate() {
            dfa.set_final(qi, true);
            for (n, &c) in self.images[b].indexed() {
                let label: Tuple = n.iter().map(|&i| digits[i].clone()).collect();
                dfa.add_transition(qi, &label, pos[&c])?;
            }
        }
        Ok(dfa)
    }
}

/// Digit names `0, 1, ..., r-1`.
pub fn digit_symbols(r: usize) -> Vec<Symbol> {
    (0..r).map(|i| Symbol::new(i.to_string())).collect()
}

/// All `d`-tuples over `letters`, in lexicographic order of the tuples.
pub fn tuple_labels(letters: &[Symbol], d: usize) -> Vec<Tuple> {
    let mut out: Vec<Tuple> = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|t| {
                letters.iter().map(move |s| {
                    let mut u = t.clone();
                    u.push(s.clone());
                    u
                })
            })
            .collect();
    }
    out
}

/// A non-erasing morphism of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniMorphism {
    letters: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    images: Vec<Vec<usize>>,
}

impl UniMorphism {
    pub fn new(entries: Vec<(Symbol, Word)>) -> Result<Self, MorphismError> {
        let mut index = HashMap::new();
        let mut letters = Vec::new();
        for (s, _) in &entries {
            if index.insert(s.clone(), letters.len()).is_some() {
                return Err(MorphismError::DuplicateLetter(s.clone()));
            }
            letters.push(s.clone());
        }
        let mut images = Vec::new();
        for (s, w) in &entries {
            if w.is_empty() {
                return Err(MorphismError::EmptyImage(s.clone()));
            }
            let img = w
                .iter()
                .map(|c| index.get(c).copied().ok_or_else(|| MorphismError::UnknownLetter(c.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            images.push(img);
        }
        Ok(UniMorphism {
            letters,
            index,
            images,
        })
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> &Symbol {
        &self.letters[i]
    }

    pub fn index_of(&self, s: &str) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn image(&self, i: usize) -> &[usize] {
        &self.images[i]
    }

    pub fn image_of(&self, s: &Symbol) -> Option<Word> {
        let i = self.index_of(s.as_str())?;
        Some(self.images[i].iter().map(|&c| self.letters[c].clone()).collect())
    }

    pub fn r_max(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_prolongable(&self, a: usize) -> bool {
        self.images[a][0] == a
    }

    /// The prefix of length `n` of `φ^ω(a)`, shorter if the fixed point is finite.
    pub fn fixed_point_prefix(&self, a: usize, n: usize) -> Result<Vec<usize>, MorphismError> {
        if !self.is_prolongable(a) {
            return Err(MorphismError::NotProlongable(self.letters[a].clone()));
        }
        let mut w = vec![a];
        loop {
            let mut next = Vec::with_capacity(n);
            for &b in &w {
                if next.len() >= n {
                    break;
                }
                next.extend_from_slice(&self.images[b]);
            }
            next.truncate(n);
            if next == w {
                return Ok(w);
            }
            w = next;
        }
    }

    pub fn fixed_point_prefix_symbols(&self, a: &Symbol, n: usize) -> Result<Word, MorphismError> {
        let i = self
            .index_of(a.as_str())
            .ok_or_else(|| MorphismError::UnknownLetter(a.clone()))?;
        Ok(self
            .fixed_point_prefix(i, n)?
            .into_iter()
            .map(|b| self.letters[b].clone())
            .collect())
    }

    /// The automaton accepting the directive language `L_{φ,a}`: digits
    /// `0..r-1`, states the letters, `b` reads `i` to `φ(b)_i`, every state
    /// final, and no word starting with `0`.
    ///
    /// The initial state is a copy of `a` without its `0` edge; it keeps the
    /// name `a`, and the ordinary copy of `a` (when reachable) gets a fresh
    /// primed name.
    pub fn directive_automaton(&self, a: usize) -> Result<Dfa<Symbol>, MorphismError> {
        if !self.is_prolongable(a) {
            return Err(MorphismError::NotProlongable(self.letters[a].clone()));
        }
        let digits = digit_symbols(self.r_max());
        // state (letter, started)
        let mut order: Vec<(usize, bool)> = vec![(a, false)];
        let mut pos: HashMap<(usize, bool), usize> = HashMap::from([((a, false), 0)]);
        let mut edges = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (b, started) = order[i];
            for (t, &c) in self.images[b].iter().enumerate() {
                if !started && t == 0 {
                    continue;
                }
                let st = (c, true);
                let j = *pos.entry(st).or_insert_with(|| {
                    order.push(st);
                    order.len() - 1
                });
                edges.push((i, t, j));
            }
            i += 1;
        }
        let seed_name = self.letters[a].as_str();
        let mut names: Vec<Symbol> = Vec::with_capacity(order.len());
        for &(b, started) in &order {
            let base = self.letters[b].to_string();
            if started && b == a {
                let mut n = format!("{seed_name}'");
                while self.index_of(&n).is_some() {
                    n.push('\'');
                }
                names.push(Symbol::new(n));
            } else {
                names.push(Symbol::new(base));
            }
        }
        let mut dfa = Dfa::new(names, 0, digits)?;
        for q in 0..order.len() {
            dfa.set_final(q, true);
        }
        for (from, t, to) in edges {
            dfa.add_transition_idx(from, t, to)?;
        }
        Ok(dfa)
    }

    /// The same morphism as a 1-dimensional [`MultiMorphism`].
    pub fn to_multi(&self) -> MultiMorphism {
        let images = self
            .images
            .iter()
            .map(|w| Picture::new(vec![w.len()], w.clone()).expect("non-empty word"))
            .collect();
        MultiMorphism::from_indexed(1, self.letters.clone(), images).expect("valid images")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{symbols, word};
    use proptest::prelude::*;

    fn rows(text: &str) -> Picture<Symbol> {
        Picture::from_rows(text.split('/').map(symbols).collect()).unwrap()
    }

    fn running() -> MultiMorphism {
        let img = |s: &str| rows(s);
        MultiMorphism::new(
            2,
            vec![
                (Symbol::new("a"), img("a b/c d")),
                (Symbol::new("b"), img("e/c")),
                (Symbol::new("c"), img("e b")),
                (Symbol::new("d"), img("f")),
                (Symbol::new("e"), img("e b/g d")),
                (Symbol::new("f"), img("a b/c d")),
                (Symbol::new("g"), img("h b")),
                (Symbol::new("h"), img("h b/c d")),
            ],
        )
        .unwrap()
    }

    fn broken() -> MultiMorphism {
        MultiMorphism::new(
            2,
            vec![
                (Symbol::new("a"), rows("a a/b d")),
                (Symbol::new("b"), rows("c/b")),
                (Symbol::new("c"), rows("a a")),
                (Symbol::new("d"), rows("d")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fixed_point_corner() {
        let mu = running();
        let w = mu.fixed_point_window_symbols(&Symbol::new("a"), &[4, 3]).unwrap();
        assert_eq!(w, rows("a b e e/c d c g/e b f e"));
    }

    #[test]
    fn images_concatenate_once_then_fail() {
        let mu = broken();
        let once = mu.apply(&rows("a b/c d")).unwrap();
        assert_eq!(once, rows("a a c/b d b/a a d"));
        assert!(matches!(mu.apply(&once), Err(MorphismError::Incompatible { .. })));
        match mu.check_morphism(&[0]) {
            MorphismCheck::NotMorphism { n, .. } => assert_eq!(n, 2),
            other => panic!("{other:?}"),
        }
        assert!(!mu.is_prolongable(0));
        assert!(matches!(
            mu.fixed_point_window(0, &[3, 3]),
            Err(MorphismError::NotMorphism { n: 2, .. })
        ));
    }

    #[test]
    fn line_morphisms_and_shapes() {
        let mu = running();
        let l1 = mu.line_morphism(0, 0).unwrap();
        assert_eq!(l1.letters(), symbols("a b e").as_slice());
        assert_eq!(l1.image_of(&Symbol::new("e")).unwrap(), word("eb"));
        let l2 = mu.line_morphism(0, 1).unwrap();
        assert_eq!(l2.letters(), symbols("a c e g h").as_slice());
        assert_eq!(l2.image_of(&Symbol::new("h")).unwrap(), word("hc"));
        for axis in 0..2 {
            assert_eq!(mu.shape_sequence(0, axis, 4).unwrap(), vec![2, 1, 2, 2]);
        }
        assert_eq!(mu.check_shape_symmetric(0).unwrap(), ShapeSymmetry::Symmetric);
    }

    #[test]
    fn directive_language() {
        let l1 = running().line_morphism(0, 0).unwrap();
        let dfa = l1.directive_automaton(0).unwrap();
        for w in ["", "1", "10", "1010", "10010"] {
            assert!(dfa.accepts(&word(w)), "{w}");
        }
        for w in ["0", "11", "0101", "1011"] {
            assert!(!dfa.accepts(&word(w)), "{w}");
        }
        // a seed reachable again gets its own state
        let phi = UniMorphism::new(vec![(Symbol::new("a"), word("ab")), (Symbol::new("b"), word("a"))]).unwrap();
        let dfa = phi.directive_automaton(0).unwrap();
        assert_eq!(dfa.states(), symbols("a b a'").as_slice());
        assert!(dfa.accepts(&word("100")) && !dfa.accepts(&word("11")));
    }

    #[test]
    fn multidimensional_directive_automaton() {
        let mu = running();
        let dfa = mu.multidim_directive_automaton(0).unwrap();
        let step = |q: &str, l: &str| {
            let q = dfa.state_of(q).unwrap();
            dfa.step(q, &symbols(l)).map(|t| dfa.state_name(t).to_string())
        };
        assert_eq!(step("a", "0 1").as_deref(), Some("c"));
        assert_eq!(step("a", "1 1").as_deref(), Some("d"));
        assert_eq!(step("b", "0 1").as_deref(), Some("c"));
        assert_eq!(step("b", "1 0"), None);
        assert_eq!(step("c", "1 0").as_deref(), Some("b"));
        assert_eq!(step("g", "1 0").as_deref(), Some("b"));
        assert_eq!(step("d", "0 0").as_deref(), Some("f"));
        assert_eq!(dfa.transitions().count(), 4 * 4 + 2 * 3 + 1);
    }

    #[test]
    fn asymmetric_and_bounded() {
        let mu = MultiMorphism::new(
            2,
            vec![(Symbol::new("a"), rows("a b/a b")), (Symbol::new("b"), rows("b/b"))],
        )
        .unwrap();
        match mu.check_shape_symmetric(0).unwrap() {
            ShapeSymmetry::Asymmetric { index, extents, .. } => {
                assert_eq!(index, 1);
                assert_eq!(extents, (1, 2));
            }
            other => panic!("{other:?}"),
        }
        let flat = MultiMorphism::new(2, vec![(Symbol::new("a"), rows("a a"))]).unwrap();
        assert_eq!(
            flat.fixed_point_window(0, &[4, 2]),
            Err(MorphismError::BoundedFixedPoint { axis: 1, extent: 1 })
        );
        let line = |w: &str| Picture::new(vec![w.len()], word(w)).unwrap();
        let not_corner = MultiMorphism::new(1, vec![(Symbol::new("a"), line("ba")), (Symbol::new("b"), line("b"))]).unwrap();
        assert!(matches!(not_corner.fixed_point_window(0, &[2]), Err(MorphismError::NotProlongable(_))));
    }

    #[test]
    fn tuples_are_lexicographic() {
        let t = tuple_labels(&symbols("# 0 1"), 2);
        assert_eq!(t.len(), 9);
        assert_eq!(t[1], symbols("# 0"));
        assert_eq!(t[3], symbols("0 #"));
    }

    proptest! {
        #[test]
        fn powers_compose(s in 1usize..3, t in 1usize..3) {
            let mu = running();
            let st = mu.power(s + t).unwrap();
            let (ps, pt) = (mu.power(s).unwrap(), mu.power(t).unwrap());
            for b in 0..mu.letters().len() {
                prop_assert_eq!(st.image(b), &ps.apply_indexed(pt.image(b)).unwrap());
            }
        }

        #[test]
        fn windows_are_prefixes(w in 1usize..20, h in 1usize..20) {
            let mu = running();
            let big = mu.fixed_point_window(0, &[20, 20]).unwrap();
            prop_assert_eq!(mu.fixed_point_window(0, &[w, h]).unwrap(), big.prefix(&[w, h]));
        }
    }
}
