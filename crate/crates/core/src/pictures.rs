//! Bounded d-dimensional pictures.
//!
//! A picture of shape `(s_0, ..., s_{d-1})` maps every point of the box
//! `[0,s_0) x ... x [0,s_{d-1})` to a letter. Axis 0 is rendered
//! horizontally (columns) and axis 1 vertically (rows), so a 2-dimensional
//! picture written as a grid has `x(column, row)`.
//!
//! Cells are stored densely with axis 0 varying fastest. A picture with a
//! zero extent in any direction is the empty picture of its dimension and is
//! normalized to the all-zero shape. A 0-dimensional picture holds exactly
//! one letter; hyperplane slices of 1-dimensional pictures produce them.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

/// The extents of a picture, one per direction.
pub type Shape = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PictureError {
    #[error("shape {shape:?} needs {expected} cells, got {found}")]
    CellCount {
        shape: Shape,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("factor bounds {from:?}..={to:?} outside picture of shape {shape:?}")]
    FactorBounds {
        from: Vec<usize>,
        to: Vec<usize>,
        shape: Shape,
    },
    #[error("slice {index} along axis {axis} outside picture of shape {shape:?}")]
    SliceBounds {
        axis: usize,
        index: usize,
        shape: Shape,
    },
    #[error("cannot concatenate along axis {axis}: cross-sections {left:?} and {right:?} differ")]
    CrossSection {
        axis: usize,
        left: Shape,
        right: Shape,
    },
    #[error("{0:?} is not a permutation of the axes")]
    NotPermutation(Vec<usize>),
    #[error("rows of a 2-dimensional picture must have equal length")]
    RaggedRows,
    #[error("letter mapping undefined on a present letter")]
    UndefinedLetter,
}

/// Iterates over all points of a box in storage order (axis 0 fastest).
#[derive(Debug, Clone)]
pub struct BoxIter {
    shape: Shape,
    next: Option<Vec<usize>>,
}

impl BoxIter {
    pub fn new(shape: &[usize]) -> Self {
        let next = if shape.contains(&0) {
            None
        } else {
            Some(vec![0; shape.len()])
        };
        BoxIter {
            shape: shape.to_vec(),
            next,
        }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = 0;
        loop {
            if axis == succ.len() {
                break;
            }
            succ[axis] += 1;
            if succ[axis] < self.shape[axis] {
                self.next = Some(succ);
                break;
            }
            succ[axis] = 0;
            axis += 1;
        }
        Some(current)
    }
}

fn volume(shape: &[usize]) -> usize {
    shape.iter().product()
}

fn is_empty_shape(shape: &[usize]) -> bool {
    shape.contains(&0)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Picture<T> {
    shape: Shape,
    cells: Vec<T>,
}

impl<T> Picture<T> {
    /// Builds a picture from its cells in storage order (axis 0 fastest).
    pub fn new(shape: Shape, cells: Vec<T>) -> Result<Self, PictureError> {
        if is_empty_shape(&shape) {
            if !cells.is_empty() {
                return Err(PictureError::CellCount {
                    expected: 0,
                    found: cells.len(),
                    shape,
                });
            }
            return Ok(Picture::empty(shape.len()));
        }
        let expected = volume(&shape);
        if cells.len() != expected {
            return Err(PictureError::CellCount {
                shape,
                expected,
                found: cells.len(),
            });
        }
        Ok(Picture { shape, cells })
    }

    /// The empty picture of dimension `dim`.
    pub fn empty(dim: usize) -> Self {
        assert!(dim > 0, "the empty picture needs a positive dimension");
        Picture {
            shape: vec![0; dim],
            cells: Vec::new(),
        }
    }

    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> T) -> Self {
        if is_empty_shape(&shape) {
            return Picture::empty(shape.len());
        }
        let cells = BoxIter::new(&shape).map(|n| f(&n)).collect();
        Picture { shape, cells }
    }

    /// A 2-dimensional picture from its rows, top row first.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, PictureError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(PictureError::RaggedRows);
        }
        let cells = rows.into_iter().flatten().collect();
        Picture::new(vec![width, height], cells)
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<T> {
        self.cells
    }

    fn offset(&self, n: &[usize]) -> Option<usize> {
        if n.len() != self.shape.len() {
            return None;
        }
        let mut off = 0;
        let mut stride = 1;
        for (&c, &s) in n.iter().zip(&self.shape) {
            if c >= s {
                return None;
            }
            off += c * stride;
            stride *= s;
        }
        Some(off)
    }

    pub fn get(&self, n: &[usize]) -> Option<&T> {
        self.offset(n).map(|o| &self.cells[o])
    }

    /// Cell at `n`. Panics when `n` is outside the picture.
    pub fn at(&self, n: &[usize]) -> &T {
        match self.get(n) {
            Some(v) => v,
            None => panic!("point {n:?} outside picture of shape {:?}", self.shape),
        }
    }

    pub fn get_mut(&mut self, n: &[usize]) -> Option<&mut T> {
        self.offset(n).map(move |o| &mut self.cells[o])
    }

    /// Points of the picture paired with their cells, in storage order.
    pub fn indexed(&self) -> impl Iterator<Item = (Vec<usize>, &T)> + '_ {
        BoxIter::new(&self.shape).zip(self.cells.iter())
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Picture<U> {
        Picture {
            shape: self.shape.clone(),
            cells: self.cells.iter().map(&mut f).collect(),
        }
    }

    /// Cellwise image under a partial letter map.
    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Option<U>) -> Result<Picture<U>, PictureError> {
        let cells = self
            .cells
            .iter()
            .map(|c| f(c).ok_or(PictureError::UndefinedLetter))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Picture {
            shape: self.shape.clone(),
            cells,
        })
    }
}

impl<T: Clone> Picture<T> {
    /// A picture of the given dimension whose every extent is 1.
    pub fn singleton(dim: usize, letter: T) -> Self {
        Picture {
            shape: vec![1; dim],
            cells: vec![letter],
        }
    }

    pub fn filled(shape: Shape, letter: T) -> Self {
        Picture::from_fn(shape, |_| letter.clone())
    }

    /// The factor `x[from, to]` (both corners inclusive).
    pub fn factor(&self, from: &[usize], to: &[usize]) -> Result<Picture<T>, PictureError> {
        let bad = || PictureError::FactorBounds {
            from: from.to_vec(),
            to: to.to_vec(),
            shape: self.shape.clone(),
        };
        if from.len() != self.dim() || to.len() != self.dim() {
            return Err(bad());
        }
        for i in 0..self.dim() {
            if from[i] > to[i] || to[i] >= self.shape[i] {
                return Err(bad());
            }
        }
        let shape: Shape = from.iter().zip(to).map(|(s, t)| t - s + 1).collect();
        let mut probe = vec![0; self.dim()];
        Ok(Picture::from_fn(shape, |n| {
            for i in 0..n.len() {
                probe[i] = n[i] + from[i];
            }
            self.at(&probe).clone()
        }))
    }

    /// Factor of the given shape anchored at `from`; the empty shape yields
    /// the empty picture.
    pub fn window_at(&self, from: &[usize], shape: &[usize]) -> Result<Picture<T>, PictureError> {
        if is_empty_shape(shape) {
            return Ok(Picture::empty(self.dim()));
        }
        let to: Vec<usize> = from.iter().zip(shape).map(|(f, s)| f + s - 1).collect();
        self.factor(from, &to)
    }

    /// Prefix of the given shape, clipped to the picture.
    pub fn prefix(&self, shape: &[usize]) -> Picture<T> {
        let clipped: Shape = shape.iter().zip(&self.shape).map(|(&a, &b)| a.min(b)).collect();
        if is_empty_shape(&clipped) {
            return Picture::empty(self.dim().max(1));
        }
        Picture::from_fn(clipped, |n| self.at(n).clone())
    }

    /// The hyperplane `x_{|axis,k}`, a picture of dimension `d-1`.
    pub fn slice(&self, axis: usize, k: usize) -> Result<Picture<T>, PictureError> {
        if axis >= self.dim() || k >= self.shape[axis] {
            return Err(PictureError::SliceBounds {
                axis,
                index: k,
                shape: self.shape.clone(),
            });
        }
        let mut shape = self.shape.clone();
        shape.remove(axis);
        let mut probe = vec![0; self.dim()];
        Ok(Picture::from_fn(shape, |n| {
            let mut j = 0;
            for (i, slot) in probe.iter_mut().enumerate() {
                if i == axis {
                    *slot = k;
                } else {
                    *slot = n[j];
                    j += 1;
                }
            }
            self.at(&probe).clone()
        }))
    }

    /// Concatenation `self ⊙^axis other`. The empty picture is a two-sided unit.
    pub fn concat(&self, other: &Picture<T>, axis: usize) -> Result<Picture<T>, PictureError> {
        if self.dim() != other.dim() {
            return Err(PictureError::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if axis >= self.dim() {
            return Err(PictureError::SliceBounds {
                axis,
                index: 0,
                shape: self.shape.clone(),
            });
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let cross = |s: &[usize]| {
            let mut c = s.to_vec();
            c.remove(axis);
            c
        };
        if cross(&self.shape) != cross(&other.shape) {
            return Err(PictureError::CrossSection {
                axis,
                left: cross(&self.shape),
                right: cross(&other.shape),
            });
        }
        let split = self.shape[axis];
        let mut shape = self.shape.clone();
        shape[axis] += other.shape[axis];
        let mut probe = vec![0; self.dim()];
        Ok(Picture::from_fn(shape, |n| {
            probe.copy_from_slice(n);
            if n[axis] < split {
                self.at(&probe).clone()
            } else {
                probe[axis] -= split;
                other.at(&probe).clone()
            }
        }))
    }

    /// `y(n_{perm[0]}, ..., n_{perm[d-1]}) = x(n_0, ..., n_{d-1})`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Picture<T>, PictureError> {
        let d = self.dim();
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(PictureError::NotPermutation(perm.to_vec()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let shape: Shape = perm.iter().map(|&p| self.shape[p]).collect();
        let mut probe = vec![0; d];
        Ok(Picture::from_fn(shape, |m| {
            for (j, &p) in perm.iter().enumerate() {
                probe[p] = m[j];
            }
            self.at(&probe).clone()
        }))
    }

    /// Letters occurring in the picture, in order of first occurrence.
    pub fn letters(&self) -> Vec<T>
    where
        T: Eq + Hash,
    {
        let mut seen = HashSet::new();
        self.cells
            .iter()
            .filter(|c| seen.insert(*c))
            .cloned()
            .collect()
    }

    /// The deduplicated set of factors of shape `u`, in order of first occurrence.
    pub fn factors_of_shape(&self, u: &[usize]) -> Result<Vec<Picture<T>>, PictureError>
    where
        T: Eq + Hash,
    {
        if u.len() != self.dim() || u.iter().zip(&self.shape).any(|(a, b)| a > b) {
            return Err(PictureError::FactorBounds {
                from: vec![0; self.dim()],
                to: u.to_vec(),
                shape: self.shape.clone(),
            });
        }
        if is_empty_shape(u) {
            return Ok(vec![Picture::empty(self.dim())]);
        }
        let anchors: Shape = self.shape.iter().zip(u).map(|(s, k)| s - k + 1).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for from in BoxIter::new(&anchors) {
            let f = self.window_at(&from, u)?;
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
        Ok(out)
    }
}

impl<T: Clone + PartialEq> Picture<T> {
    /// Whether slice `k` along `axis` consists only of `e`.
    pub fn is_hyperplane_of(&self, axis: usize, k: usize, e: &T) -> bool {
        let mut probe = vec![0; self.dim()];
        let mut cross = self.shape.clone();
        cross[axis] = 1;
        BoxIter::new(&cross).all(|n| {
            probe.copy_from_slice(&n);
            probe[axis] = k;
            self.at(&probe) == e
        })
    }

    /// The erasing map: removes every constant-`e` hyperplane in every direction.
    ///
    /// A hyperplane that is not constant-`e` keeps a non-`e` cell, and that
    /// cell lies on no constant-`e` hyperplane, so removing all such
    /// hyperplanes at once agrees with removing them one at a time.
    pub fn erase(&self, e: &T) -> Picture<T> {
        if self.is_empty() || self.dim() == 0 {
            return self.clone();
        }
        let kept: Vec<Vec<usize>> = (0..self.dim())
            .map(|axis| {
                (0..self.shape[axis])
                    .filter(|&k| !self.is_hyperplane_of(axis, k, e))
                    .collect()
            })
            .collect();
        let shape: Shape = kept.iter().map(Vec::len).collect();
        let mut probe = vec![0; self.dim()];
        Picture::from_fn(shape, |n| {
            for i in 0..n.len() {
                probe[i] = kept[i][n[i]];
            }
            self.at(&probe).clone()
        })
    }

    pub fn is_erasable(&self, e: &T) -> bool {
        !self.erase(e).cells.contains(e)
    }
}

impl<T: fmt::Display> fmt::Display for Picture<T> {
    /// Grid rendering: axis 0 across, axis 1 down; higher axes as stacked blocks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim() {
            0 => write!(f, "{}", self.cells[0]),
            1 => {
                let row: Vec<String> = self.cells.iter().map(ToString::to_string).collect();
                write!(f, "{}", row.join(" "))
            }
            _ => {
                if self.is_empty() {
                    return Ok(());
                }
                let width = self.shape[0];
                let height = self.shape[1];
                let plane = width * height;
                for (b, block) in self.cells.chunks(plane).enumerate() {
                    if b > 0 {
                        writeln!(f)?;
                    }
                    for r in 0..height {
                        let row: Vec<String> = block[r * width..(r + 1) * width]
                            .iter()
                            .map(ToString::to_string)
                            .collect();
                        write!(f, "{}", row.join(" "))?;
                        if r + 1 < height {
                            writeln!(f)?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> Picture<char> {
        Picture::from_rows(
            rows.iter()
                .map(|r| r.split_whitespace().map(|s| s.chars().next().unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn example() -> Picture<char> {
        grid(&["a b a a b", "c d b c d"])
    }

    #[test]
    fn factors_of_the_five_by_two_example() {
        let x = example();
        assert_eq!(x.shape(), &[5, 2]);
        assert_eq!(x.factor(&[0, 0], &[1, 1]).unwrap(), grid(&["a b", "c d"]));
        assert_eq!(x.factor(&[2, 0], &[4, 1]).unwrap(), grid(&["a a b", "b c d"]));
        assert_eq!(x.factor(&[0, 0], &[4, 1]).unwrap(), x);
        assert!(x.factor(&[0, 0], &[5, 1]).is_err());
        assert!(x.factor(&[2, 0], &[1, 1]).is_err());
    }

    #[test]
    fn fact_sets() {
        let x = example();
        let ones: Vec<char> = x
            .factors_of_shape(&[1, 1])
            .unwrap()
            .into_iter()
            .map(|p| p.cells()[0])
            .collect();
        assert_eq!(ones, vec!['a', 'b', 'c', 'd']);
        let threes = x.factors_of_shape(&[3, 2]).unwrap();
        assert_eq!(
            threes,
            vec![grid(&["a b a", "c d b"]), grid(&["b a a", "d b c"]), grid(&["a a b", "b c d"])]
        );
        assert_eq!(x.factors_of_shape(&[5, 2]).unwrap(), vec![x.clone()]);
        assert!(x.factors_of_shape(&[6, 1]).is_err());
    }

    #[test]
    fn concatenation() {
        let x = grid(&["a b", "c d"]);
        let y = grid(&["a a b", "b c d"]);
        assert_eq!(x.concat(&y, 0).unwrap(), example());
        match x.concat(&y, 1) {
            Err(PictureError::CrossSection { left, right, .. }) => {
                assert_eq!(left, vec![2]);
                assert_eq!(right, vec![3]);
            }
            other => panic!("expected cross-section error, got {other:?}"),
        }
        let e = Picture::empty(2);
        assert_eq!(e.concat(&x, 1).unwrap(), x);
        assert_eq!(x.concat(&e, 0).unwrap(), x);
        assert_eq!(e.concat(&e, 0).unwrap(), e);
    }

    #[test]
    fn slices() {
        let mu_x = grid(&["a a c", "b d b", "a a d"]);
        assert_eq!(mu_x.slice(0, 2).unwrap().cells(), &['c', 'b', 'd']);
        assert_eq!(mu_x.slice(1, 0).unwrap().cells(), &['a', 'a', 'c']);
        let line = Picture::new(vec![3], vec!['x', 'y', 'z']).unwrap();
        let point = line.slice(0, 1).unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.cells(), &['y']);
        assert!(mu_x.slice(1, 3).is_err());
    }

    #[test]
    fn zero_extents_are_the_empty_picture() {
        let p: Picture<char> = Picture::new(vec![0, 3], vec![]).unwrap();
        assert_eq!(p, Picture::empty(2));
        assert!(Picture::new(vec![2, 2], vec!['a']).is_err());
    }

    #[test]
    fn erase_cases() {
        let x = example();
        assert_eq!(x.erase(&'e'), x);
        let all_e = Picture::filled(vec![3, 2], 'e');
        assert_eq!(all_e.erase(&'e'), Picture::empty(2));
        let single = grid(&["e a", "b c"]);
        assert!(!single.is_erasable(&'e'));
        assert_eq!(single.erase(&'e'), single);
        let col = grid(&["e a", "e c"]);
        assert_eq!(col.erase(&'e'), grid(&["a", "c"]));
        assert!(col.is_erasable(&'e'));
    }

    #[test]
    fn permutations() {
        let x = example();
        let t = x.permute_axes(&[1, 0]).unwrap();
        assert_eq!(t.shape(), &[2, 5]);
        assert_eq!(t.at(&[1, 2]), x.at(&[2, 1]));
        assert_eq!(t.permute_axes(&[1, 0]).unwrap(), x);
        assert_eq!(x.permute_axes(&[0, 1]).unwrap(), x);
        assert!(x.permute_axes(&[0, 0]).is_err());
    }

    #[test]
    fn mapping() {
        let x = example();
        assert_eq!(x.map(|c| *c), x);
        assert_eq!(x.map(|_| 'z'), Picture::filled(vec![5, 2], 'z'));
        assert!(x.try_map(|c| if *c == 'd' { None } else { Some(*c) }).is_err());
    }

    #[test]
    fn display_grid() {
        assert_eq!(example().to_string(), "a b a a b\nc d b c d");
    }
}
