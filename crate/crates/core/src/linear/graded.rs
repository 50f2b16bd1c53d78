use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::report::Witness;
use crate::scalar::{format_q, Q};
use crate::{Error, Result};

/// A finite-dimensional graded vector space with labelled bases.
///
/// Only degrees of positive dimension are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    basis: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> GradedSpace {
        GradedSpace::default()
    }

    pub fn from_labels(basis: BTreeMap<i32, Vec<String>>) -> Result<GradedSpace> {
        let mut seen = std::collections::BTreeSet::new();
        for labels in basis.values() {
            for l in labels {
                if !seen.insert(l.clone()) {
                    return Err(Error::Semantic(format!("duplicate basis label {l:?}")));
                }
            }
        }
        Ok(GradedSpace {
            basis: basis.into_iter().filter(|(_, v)| !v.is_empty()).collect(),
        })
    }

    /// Generated labels `e{deg}_{i}`.
    pub fn from_dims(dims: &BTreeMap<i32, usize>) -> GradedSpace {
        let basis = dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&n, &d)| (n, (0..d).map(|i| format!("e{n}_{i}")).collect()))
            .collect();
        GradedSpace { basis }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.basis.iter().map(|(&n, v)| (n, v.len())).collect()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    pub fn labels(&self, n: i32) -> &[String] {
        self.basis.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.basis
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn find(&self, label: &str) -> Option<(i32, usize)> {
        self.basis
            .iter()
            .find_map(|(&n, v)| v.iter().position(|l| l == label).map(|i| (n, i)))
    }

    /// `max - min` over the nonzero degrees, 0 for the zero space.
    pub fn degree_span(&self) -> i32 {
        match (self.basis.keys().next(), self.basis.keys().next_back()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// Flat basis: every (degree, index), ordered by degree then index.
    pub fn flat(&self) -> Vec<(i32, usize)> {
        self.basis
            .iter()
            .flat_map(|(&n, v)| (0..v.len()).map(move |i| (n, i)))
            .collect()
    }
}

/// A homogeneous linear map of shift `k` between graded spaces: one block
/// per source degree `n`, of shape `tgt(n + k) × src(n)`. Most maps are
/// endomorphisms (`src == tgt`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    shift: i32,
    src: BTreeMap<i32, usize>,
    tgt: BTreeMap<i32, usize>,
    blocks: BTreeMap<i32, Matrix>,
}

fn dim_of(dims: &BTreeMap<i32, usize>, n: i32) -> usize {
    dims.get(&n).copied().unwrap_or(0)
}

impl GradedMap {
    pub fn zero(space: &GradedSpace, shift: i32) -> GradedMap {
        let dims = space.dims();
        Self::zero_dims(&dims, &dims, shift)
    }

    pub fn zero_between(src: &GradedSpace, tgt: &GradedSpace, shift: i32) -> GradedMap {
        Self::zero_dims(&src.dims(), &tgt.dims(), shift)
    }

    fn zero_dims(src: &BTreeMap<i32, usize>, tgt: &BTreeMap<i32, usize>, shift: i32) -> GradedMap {
        let blocks = src
            .iter()
            .map(|(&n, &d)| (n, Matrix::zeros(dim_of(tgt, n + shift), d)))
            .collect();
        GradedMap {
            shift,
            src: src.clone(),
            tgt: tgt.clone(),
            blocks,
        }
    }

    pub fn identity(space: &GradedSpace) -> GradedMap {
        let dims = space.dims();
        let blocks = dims
            .iter()
            .map(|(&n, &d)| (n, Matrix::identity(d)))
            .collect();
        GradedMap {
            shift: 0,
            src: dims.clone(),
            tgt: dims,
            blocks,
        }
    }

    /// Builds an endomorphism from explicit blocks; missing blocks are zero.
    pub fn from_blocks(
        space: &GradedSpace,
        shift: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<GradedMap> {
        Self::from_blocks_between(space, space, shift, blocks)
    }

    pub fn from_blocks_between(
        src: &GradedSpace,
        tgt: &GradedSpace,
        shift: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<GradedMap> {
        let mut m = GradedMap::zero_between(src, tgt, shift);
        for (n, b) in blocks {
            let expected = (tgt.dim(n + shift), src.dim(n));
            if b.shape() != expected {
                return Err(Error::Shape(format!(
                    "block in degree {n} is {:?}, expected {:?}",
                    b.shape(),
                    expected
                )));
            }
            if expected.1 > 0 {
                m.blocks.insert(n, b);
            }
        }
        Ok(m)
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Source dimensions.
    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.src
    }

    pub fn target_dims(&self) -> &BTreeMap<i32, usize> {
        &self.tgt
    }

    pub fn is_endomorphism(&self) -> bool {
        self.src == self.tgt
    }

    /// Block from degree `n`; zero-sized outside the support.
    pub fn block(&self, n: i32) -> Matrix {
        self.blocks.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(dim_of(&self.tgt, n + self.shift), dim_of(&self.src, n))
        })
    }

    pub fn block_ref(&self, n: i32) -> Option<&Matrix> {
        self.blocks.get(&n)
    }

    pub fn set_entry(&mut self, n: i32, row: usize, col: usize, v: Q) {
        let b = self.blocks.get_mut(&n).expect("source degree in support");
        b.set(row, col, v);
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.src, other.tgt, "composing maps with mismatched spaces");
        let shift = self.shift + other.shift;
        let mut out = GradedMap::zero_dims(&other.src, &self.tgt, shift);
        for (&n, b) in &other.blocks {
            let a = self.block(n + other.shift);
            out.blocks.insert(n, &a * b);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> GradedMap {
        GradedMap {
            blocks: self.blocks.iter().map(|(&n, b)| (n, b.scale(c))).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> GradedMap {
        GradedMap {
            shift: self.shift,
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            blocks: BTreeMap::new(),
        }
    }

    fn zip(&self, other: &GradedMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> GradedMap {
        assert_eq!(self.shift, other.shift, "adding maps of different shift");
        assert!(
            self.src == other.src && self.tgt == other.tgt,
            "adding maps on different spaces"
        );
        let blocks = self
            .blocks
            .iter()
            .map(|(&n, a)| (n, f(a, &other.block(n))))
            .collect();
        GradedMap {
            blocks,
            ..self.clone_shape()
        }
    }

    /// Inverse of a shift-0 map, block by block.
    pub fn inverse(&self, which: &'static str) -> Result<GradedMap> {
        if self.shift != 0 || !self.is_endomorphism() {
            return Err(Error::Shape(
                "only shift-0 endomorphisms are inverted".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        for (&n, b) in &self.blocks {
            blocks.insert(n, b.inverse().ok_or(Error::Singular { which, degree: n })?);
        }
        Ok(GradedMap {
            blocks,
            ..self.clone_shape()
        })
    }

    /// First nonzero entry: (source degree, row, col, value).
    pub fn first_nonzero(&self) -> Option<(i32, usize, usize, Q)> {
        self.blocks
            .iter()
            .find_map(|(&n, b)| b.first_nonzero().map(|(i, j, v)| (n, i, j, v.clone())))
    }

    /// `None` when equal, otherwise the first differing entry as a witness.
    pub fn diff_witness(&self, other: &GradedMap, equation: &str) -> Option<Witness> {
        if self.shift != other.shift {
            return Some(Witness {
                equation: equation.into(),
                term: "shift mismatch".into(),
                coefficient: String::new(),
                grade: 0,
            });
        }
        (self - other).first_nonzero().map(|(n, i, j, v)| Witness {
            equation: equation.into(),
            term: format!("degree {n} entry ({i},{j})"),
            coefficient: format_q(&v),
            grade: n as i64,
        })
    }

    /// The zero map with the same shift and spaces as `m`.
    pub fn zero_like(m: &GradedMap) -> GradedMap {
        m.scale(&Q::zero())
    }

    /// Sum of this map with `c` times the identity (shift 0 only).
    pub fn plus_identity(&self, c: &Q) -> GradedMap {
        assert!(self.shift == 0 && self.is_endomorphism());
        let mut out = self.clone();
        for (&n, b) in out.blocks.iter_mut() {
            let d = dim_of(&self.src, n);
            *b = &*b + &Matrix::identity(d).scale(c);
        }
        out
    }

    pub fn one_plus(&self) -> GradedMap {
        self.plus_identity(&Q::one())
    }

    pub fn rank(&self, n: i32) -> usize {
        self.blocks.get(&n).map_or(0, Matrix::rank)
    }

    /// Nonzero entries as (source degree, row, col, value).
    pub fn entries(&self) -> impl Iterator<Item = (i32, usize, usize, &Q)> {
        self.blocks.iter().flat_map(|(&n, b)| {
            (0..b.rows())
                .flat_map(move |i| (0..b.cols()).map(move |j| (n, i, j, b.get(i, j))))
                .filter(|(_, _, _, v)| !v.is_zero())
        })
    }
}

impl Add for &GradedMap {
    type Output = GradedMap;
    fn add(self, other: &GradedMap) -> GradedMap {
        self.zip(other, |a, b| a + b)
    }
}

impl Sub for &GradedMap {
    type Output = GradedMap;
    fn sub(self, other: &GradedMap) -> GradedMap {
        self.zip(other, |a, b| a - b)
    }
}

impl Neg for &GradedMap {
    type Output = GradedMap;
    fn neg(self) -> GradedMap {
        GradedMap {
            blocks: self.blocks.iter().map(|(&n, b)| (n, -b)).collect(),
            ..self.clone_shape()
        }
    }
}

impl Mul for &GradedMap {
    type Output = GradedMap;
    fn mul(self, other: &GradedMap) -> GradedMap {
        self.compose(other)
    }
}

/// Graded dimension of the cohomology of a differential `d` (shift +1).
pub fn cohomology_dims(d: &GradedMap) -> BTreeMap<i32, usize> {
    d.dims()
        .iter()
        .map(|(&n, &dim)| (n, dim - d.rank(n) - d.rank(n - 1)))
        .filter(|(_, h)| *h > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> GradedSpace {
        GradedSpace::from_labels(
            [
                (0, vec!["a".to_string(), "b".to_string()]),
                (1, vec!["c".to_string()]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap()
    }

    #[test]
    fn compose_respects_shift() {
        let v = abc();
        let d = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1, 0]]))].into_iter().collect(),
        )
        .unwrap();
        assert!(d.compose(&d).is_zero());
        assert_eq!(d.compose(&d).shift(), 2);
        assert_eq!(cohomology_dims(&d), [(0, 1)].into_iter().collect());
    }

    #[test]
    fn bad_block_shape_is_rejected() {
        let v = abc();
        assert!(GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1]]))].into_iter().collect()
        )
        .is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = GradedSpace::from_labels(
            [(0, vec!["a".to_string()]), (1, vec!["a".to_string()])]
                .into_iter()
                .collect(),
        );
        assert!(r.is_err());
    }
}
