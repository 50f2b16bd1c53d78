//! Sparse tensors over a suspended basis.
//!
//! A basis vector is an index into a [`Basis`]; a tensor word is a sequence
//! of indices, and [`TVec`] is a finite linear combination of words, i.e. an
//! element of the tensor coalgebra `T(ΣV)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::linear::{GradedMap, GradedSpace};
use crate::scalar::Q;

pub type Idx = u16;
pub type TWord = SmallVec<[Idx; 8]>;

/// Flat basis of `ΣV`, ordered by degree then by label position. The
/// suspended degree of a vector of degree `n` is `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    space: GradedSpace,
    labels: Vec<String>,
    degree: Vec<i32>,
    offsets: BTreeMap<i32, usize>,
}

impl Basis {
    pub fn suspend(space: &GradedSpace) -> Basis {
        let mut labels = Vec::new();
        let mut degree = Vec::new();
        let mut offsets = BTreeMap::new();
        for n in space.degrees() {
            offsets.insert(n, labels.len());
            for l in space.labels(n) {
                labels.push(l.clone());
                degree.push(n);
            }
        }
        assert!(labels.len() < Idx::MAX as usize, "basis too large");
        Basis {
            space: space.clone(),
            labels,
            degree,
            offsets,
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: Idx) -> &str {
        &self.labels[i as usize]
    }

    /// Unsuspended degree.
    pub fn degree(&self, i: Idx) -> i32 {
        self.degree[i as usize]
    }

    /// Suspended degree `degree - 1`.
    pub fn sdeg(&self, i: Idx) -> i32 {
        self.degree[i as usize] - 1
    }

    pub fn word_sdeg(&self, w: &[Idx]) -> i32 {
        w.iter().map(|&i| self.sdeg(i)).sum()
    }

    /// Index of the `k`-th basis vector of degree `n`.
    pub fn index(&self, n: i32, k: usize) -> Idx {
        (self.offsets[&n] + k) as Idx
    }

    /// Position within its degree.
    pub fn position(&self, i: Idx) -> (i32, usize) {
        let n = self.degree(i);
        (n, i as usize - self.offsets[&n])
    }

    pub fn find(&self, label: &str) -> Option<Idx> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Idx)
    }

    pub fn indices(&self) -> impl Iterator<Item = Idx> {
        0..self.labels.len() as Idx
    }

    pub fn sdeg_range(&self) -> Option<(i32, i32)> {
        let lo = self.degree.iter().min()?;
        let hi = self.degree.iter().max()?;
        Some((lo - 1, hi - 1))
    }

    /// Whether some basis vector has suspended degree `k`.
    pub fn has_sdeg(&self, k: i32) -> bool {
        self.space.dim(k + 1) > 0
    }

    /// All words of length `n`, lexicographic.
    pub fn words(&self, n: usize) -> Vec<TWord> {
        let mut out: Vec<TWord> = vec![TWord::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * self.len());
            for w in &out {
                for i in self.indices() {
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn format_word(&self, w: &[Idx]) -> String {
        w.iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// Sparse columns of a graded map on this basis: entry `i` lists the
    /// image of basis vector `i`.
    pub fn columns_of(&self, m: &GradedMap) -> Vec<SVec> {
        self.columns_into(m, self)
    }

    /// Sparse columns of a map from this basis to `target`.
    pub fn columns_into(&self, m: &GradedMap, target: &Basis) -> Vec<SVec> {
        self.indices()
            .map(|i| {
                let (n, k) = self.position(i);
                let Some(b) = m.block_ref(n) else {
                    return SVec::new();
                };
                let tn = n + m.shift();
                (0..b.rows())
                    .filter(|&r| !b.get(r, k).is_zero())
                    .map(|r| (target.index(tn, r), b.get(r, k).clone()))
                    .collect()
            })
            .collect()
    }
}

/// Sparse vector: (index, nonzero coefficient), sorted by index.
pub type SVec = Vec<(Idx, Q)>;

pub fn svec_add(acc: &mut BTreeMap<Idx, Q>, v: &SVec, c: &Q) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e += x * c;
    }
}

pub fn svec_from_map(m: BTreeMap<Idx, Q>) -> SVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `f^{⊗n}` on one word for a degree-0 map `f` given by sparse columns,
/// added to `out` with factor `coeff`.
pub fn tensor_power_apply(cols: &[SVec], w: &[Idx], coeff: &Q, out: &mut TVec) {
    let mut partial: Vec<(TWord, Q)> = vec![(TWord::new(), coeff.clone())];
    for &i in w {
        partial = extend_words(&partial, &cols[i as usize]);
        if partial.is_empty() {
            return;
        }
    }
    for (word, c) in partial {
        out.add_term(word, c);
    }
}

pub(crate) fn extend_words(partial: &[(TWord, Q)], col: &SVec) -> Vec<(TWord, Q)> {
    let mut out = Vec::with_capacity(partial.len() * col.len());
    for (word, c) in partial {
        for (j, x) in col {
            let mut w = word.clone();
            w.push(*j);
            out.push((w, c * x));
        }
    }
    out
}

/// `f^{⊗n}` on a tensor, `f` of degree 0.
pub fn tensor_power(cols: &[SVec], v: &TVec) -> TVec {
    let mut out = TVec::zero();
    for (w, c) in v.terms() {
        tensor_power_apply(cols, w, c, &mut out);
    }
    out
}

/// Finite linear combination of tensor words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TVec {
    terms: BTreeMap<TWord, Q>,
}

impl TVec {
    pub fn zero() -> TVec {
        TVec::default()
    }

    pub fn word(w: TWord) -> TVec {
        let mut v = TVec::zero();
        v.add_term(w, Q::one());
        v
    }

    pub fn add_term(&mut self, w: TWord, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TVec, c: &Q) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TWord, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (TWord, Q)> {
        self.terms.into_iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> TVec {
        let mut out = TVec::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> TVec {
        TVec {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TVec) -> TVec {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    /// The part of tensor length `n`.
    pub fn arity_part(&self, n: usize) -> TVec {
        TVec {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Projection onto `ΣV` (length-one words) as a sparse vector.
    pub fn pr1(&self) -> SVec {
        self.terms
            .iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w[0], c.clone()))
            .collect()
    }

    pub fn from_svec(v: &SVec) -> TVec {
        let mut out = TVec::zero();
        for (i, c) in v {
            out.add_term(smallvec::smallvec![*i], c.clone());
        }
        out
    }

    /// Concatenation product, no signs (used for degree-0 maps).
    pub fn tensor(&self, other: &TVec) -> TVec {
        let mut out = TVec::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    pub fn first_term(&self) -> Option<(&TWord, &Q)> {
        self.terms.iter().next()
    }
}

/// A multilinear map `(ΣV)^{⊗n} → ΣW` given by its values on basis words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiMap {
    table: BTreeMap<TWord, SVec>,
}

impl MultiMap {
    pub fn new() -> MultiMap {
        MultiMap::default()
    }

    pub fn get(&self, w: &[Idx]) -> Option<&SVec> {
        self.table.get(w)
    }

    pub fn set(&mut self, w: TWord, v: SVec) {
        let v: SVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if v.is_empty() {
            self.table.remove(&w);
        } else {
            self.table.insert(w, v);
        }
    }

    pub fn add_entry(&mut self, w: TWord, out: Idx, c: Q) {
        let mut m: BTreeMap<Idx, Q> = self
            .table
            .remove(&w)
            .unwrap_or_default()
            .into_iter()
            .collect();
        *m.entry(out).or_insert_with(Q::zero) += c;
        self.set(w, svec_from_map(m));
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TWord, &SVec)> {
        self.table.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}
