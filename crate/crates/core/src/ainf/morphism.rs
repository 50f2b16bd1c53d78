use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::structure::AInfStructure;
use super::tensor::{svec_add, svec_from_map, Basis, Idx, MultiMap, SVec, TVec, TWord};
use crate::linear::Matrix;
use crate::report::{IdentityReport, Witness};
use crate::scalar::{format_q, Q};
use crate::{Error, Result};

/// An A∞ morphism truncated at arity `cap`: components
/// `f_n: (ΣV)^{⊗n} → ΣW` of degree 0, `comps[n - 1] = f_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfMorphism {
    pub source: AInfStructure,
    pub target: AInfStructure,
    pub cap: usize,
    pub comps: Vec<MultiMap>,
}

impl AInfMorphism {
    pub fn identity(a: &AInfStructure) -> AInfMorphism {
        let mut f1 = MultiMap::new();
        for i in a.basis.indices() {
            f1.set(smallvec::smallvec![i], vec![(i, Q::one())]);
        }
        let mut comps = vec![MultiMap::new(); a.cap];
        if a.cap > 0 {
            comps[0] = f1;
        }
        AInfMorphism {
            source: a.clone(),
            target: a.clone(),
            cap: a.cap,
            comps,
        }
    }

    pub fn f(&self, n: usize) -> Option<&MultiMap> {
        self.comps.get(n.checked_sub(1)?)
    }

    fn value(&self, w: &[Idx]) -> Option<&SVec> {
        self.f(w.len()).and_then(|m| m.get(w))
    }

    /// The coalgebra extension `F̂(w) = Σ f_{i_1}(w_1) ⊗ ⋯ ⊗ f_{i_k}(w_k)`
    /// over all ways of cutting `w` into consecutive blocks. No signs arise
    /// since every `f_n` has degree 0.
    pub fn extend(&self, w: &[Idx]) -> TVec {
        let n = w.len();
        let mut prefix: Vec<TVec> = Vec::with_capacity(n + 1);
        prefix.push(TVec::word(TWord::new()));
        for p in 1..=n {
            let mut acc = TVec::zero();
            for q in 0..p {
                if prefix[q].is_zero() {
                    continue;
                }
                if let Some(val) = self.value(&w[q..p]) {
                    acc.add_scaled(&prefix[q].tensor(&TVec::from_svec(val)), &Q::one());
                }
            }
            prefix.push(acc);
        }
        prefix.pop().expect("n + 1 entries")
    }

    pub fn extend_vec(&self, v: &TVec) -> TVec {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            out.add_scaled(&self.extend(w), c);
        }
        out
    }

    /// `pr_1 F̂(v) = Σ f_{|w|}(w)`.
    pub fn pr1_apply(&self, v: &TVec) -> BTreeMap<Idx, Q> {
        let mut acc = BTreeMap::new();
        for (w, c) in v.terms() {
            if let Some(val) = self.value(w) {
                svec_add(&mut acc, val, c);
            }
        }
        acc
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AInfMorphism) -> AInfMorphism {
        let cap = self.cap.min(other.cap);
        let mut comps = vec![MultiMap::new(); cap];
        for (n, comp) in comps.iter_mut().enumerate() {
            for w in self.source.basis.words(n + 1) {
                let v = svec_from_map(other.pr1_apply(&self.extend(&w)));
                if !v.is_empty() {
                    comp.set(w, v);
                }
            }
        }
        AInfMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            cap,
            comps,
        }
    }

    /// The inverse morphism, by recursion on arity:
    /// `g_n = -Σ_{k<n} g_k ∘ F̂_k ∘ (f_1⁻¹)^{⊗n}` with `g_1 = f_1⁻¹`.
    pub fn inverse(&self) -> Result<AInfMorphism> {
        let src = &self.source.basis;
        let tgt = &self.target.basis;
        if src.len() != tgt.len() {
            return Err(Error::Singular {
                which: "f_1",
                degree: 0,
            });
        }
        let f1_inv = self.linear_inverse()?;
        let mut g = AInfMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            cap: self.cap,
            comps: vec![MultiMap::new(); self.cap],
        };
        if self.cap == 0 {
            return Ok(g);
        }
        for (i, col) in f1_inv.iter().enumerate() {
            g.comps[0].set(smallvec::smallvec![i as Idx], col.clone());
        }
        // g ∘ f = id gives g_n (f_1^{⊗n} w) = h_n(w) := -Σ_{k<n} g_k(F̂(w)_k);
        // then g_n = h_n ∘ (f_1⁻¹)^{⊗n}, applied one tensor slot at a time.
        let mut rows: Vec<Vec<(Idx, Q)>> = vec![Vec::new(); src.len()];
        for (u, col) in f1_inv.iter().enumerate() {
            for (w, c) in col {
                rows[*w as usize].push((u as Idx, c.clone()));
            }
        }
        for n in 2..=self.cap {
            let mut table: BTreeMap<TWord, BTreeMap<Idx, Q>> = BTreeMap::new();
            for w in src.words(n) {
                if !src.has_sdeg(src.word_sdeg(&w)) {
                    continue;
                }
                let mut acc = BTreeMap::new();
                for (word, c) in self.extend(&w).terms() {
                    if word.len() < n {
                        if let Some(val) = g.value(word) {
                            svec_add(&mut acc, val, &-c);
                        }
                    }
                }
                acc.retain(|_, c: &mut Q| !c.is_zero());
                if !acc.is_empty() {
                    table.insert(w, acc);
                }
            }
            for slot in 0..n {
                let mut next: BTreeMap<TWord, BTreeMap<Idx, Q>> = BTreeMap::new();
                for (word, val) in &table {
                    for (u, c) in &rows[word[slot] as usize] {
                        let mut key = word.clone();
                        key[slot] = *u;
                        let entry = next.entry(key).or_default();
                        for (o, x) in val {
                            *entry.entry(*o).or_insert_with(Q::zero) += c * x;
                        }
                    }
                }
                table = next;
            }
            let mut comp = MultiMap::new();
            for (u, val) in table {
                let v = svec_from_map(val);
                if !v.is_empty() {
                    comp.set(u, v);
                }
            }
            g.comps[n - 1] = comp;
        }
        Ok(g)
    }

    /// Columns of `f_1⁻¹` as sparse vectors on the source basis.
    fn linear_inverse(&self) -> Result<Vec<SVec>> {
        let (src, tgt) = (&self.source.basis, &self.target.basis);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for i in src.indices() {
            for (o, c) in self.value(&[i]).map(Vec::as_slice).unwrap_or(&[]) {
                m.set(*o as usize, i as usize, c.clone());
            }
        }
        let inv = m.inverse().ok_or(Error::Singular {
            which: "f_1",
            degree: 0,
        })?;
        Ok((0..tgt.len())
            .map(|j| {
                (0..src.len())
                    .filter(|&i| !inv.get(i, j).is_zero())
                    .map(|i| (i as Idx, inv.get(i, j).clone()))
                    .collect()
            })
            .collect())
    }

    /// Whether `f_1` is the identity and every higher component vanishes.
    pub fn is_identity(&self) -> bool {
        *self == AInfMorphism::identity(&self.source).with_target(&self.target)
    }

    fn with_target(mut self, target: &AInfStructure) -> AInfMorphism {
        self.target = target.clone();
        self
    }
}

/// `Σ b^W_k (f_{i_1} ⊗ ⋯ ⊗ f_{i_k}) = Σ f (id ⊗ b^V ⊗ id)` per arity, ids
/// `{prefix}-n`.
pub fn morphism_check_named(f: &AInfMorphism, prefix: &str) -> Vec<IdentityReport> {
    (1..=f.cap)
        .map(|n| IdentityReport::new(format!("{prefix}-{n}"), f.cap, morphism_witness(f, n)))
        .collect()
}

pub fn morphism_check(f: &AInfMorphism) -> Vec<IdentityReport> {
    morphism_check_named(f, "MORPH")
}

fn morphism_witness(f: &AInfMorphism, n: usize) -> Option<Witness> {
    let (src, tgt) = (&f.source.basis, &f.target.basis);
    for w in src.words(n) {
        if !tgt.has_sdeg(src.word_sdeg(&w) + 1) {
            continue;
        }
        let lhs = f.target.pr1_apply(&f.extend(&w));
        let rhs = f.pr1_apply(&f.source.coder(&TVec::word(w.clone()), 1));
        if let Some((o, c)) = first_difference(&lhs, &rhs) {
            return Some(Witness {
                equation: format!("b F = F b at arity {n}"),
                term: format!("{} -> {}", src.format_word(&w), tgt.label(o)),
                coefficient: format_q(&c),
                grade: n as i64,
            });
        }
    }
    None
}

pub(crate) fn first_difference(a: &BTreeMap<Idx, Q>, b: &BTreeMap<Idx, Q>) -> Option<(Idx, Q)> {
    let mut diff = a.clone();
    for (i, c) in b {
        *diff.entry(*i).or_insert_with(Q::zero) -= c;
    }
    diff.into_iter().find(|(_, c)| !c.is_zero())
}

/// Components of a morphism compared entry by entry with `expected`, ids
/// `{prefix}-n`.
pub fn components_equal(
    f: &AInfMorphism,
    expected: &AInfMorphism,
    prefix: &str,
) -> Vec<IdentityReport> {
    let basis: &Basis = &f.source.basis;
    (1..=f.cap)
        .map(|n| {
            let witness = basis.words(n).into_iter().find_map(|w| {
                let a: BTreeMap<Idx, Q> = f
                    .value(&w)
                    .cloned()
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                let b: BTreeMap<Idx, Q> = expected
                    .value(&w)
                    .cloned()
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                first_difference(&a, &b).map(|(o, c)| Witness {
                    equation: format!("component {n}"),
                    term: format!("{} -> {}", basis.format_word(&w), f.target.basis.label(o)),
                    coefficient: format_q(&c),
                    grade: n as i64,
                })
            });
            IdentityReport::new(format!("{prefix}-{n}"), f.cap, witness)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{GradedMap, GradedSpace};
    use crate::report::all_pass;
    use crate::scalar::q;
    use smallvec::smallvec;

    fn algebra() -> AInfStructure {
        let v = GradedSpace::from_labels(
            [(0, vec!["e".into()]), (1, vec!["f".into()])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let mut m2 = MultiMap::new();
        m2.add_entry(smallvec![0, 0], 0, q(1));
        m2.add_entry(smallvec![0, 1], 1, q(1));
        m2.add_entry(smallvec![1, 0], 1, q(1));
        AInfStructure::from_dg_algebra(&v, &GradedMap::zero(&v, 1), &m2, 3).unwrap()
    }

    #[test]
    fn identity_passes() {
        assert!(all_pass(&morphism_check(&AInfMorphism::identity(
            &algebra()
        ))));
    }

    #[test]
    fn non_chain_map_fails_at_arity_one() {
        // b_1: e ↦ f on the target only; f_1 = id is then not a chain map.
        let src = algebra().truncate(1);
        let mut tgt = src.clone();
        tgt.ops[0].add_entry(smallvec![0], 1, q(1));
        let mut f = AInfMorphism::identity(&src);
        f.target = tgt;
        let r = morphism_check(&f);
        assert!(!r[0].passed());
    }

    #[test]
    fn inverse_of_filtered_automorphism() {
        let a = algebra();
        let mut f = AInfMorphism::identity(&a);
        f.comps[0].set(smallvec![1], vec![(1, q(2))]);
        // Degree 0 on suspended degrees: |e| = -1, |f| = 0.
        f.comps[1].set(smallvec![1, 1], vec![(1, q(3))]);
        f.comps[1].set(smallvec![0, 1], vec![(0, q(1))]);
        f.comps[2].set(smallvec![1, 0, 1], vec![(0, q(-1))]);
        f.comps[2].set(smallvec![1, 1, 1], vec![(1, q(2))]);
        let g = f.inverse().unwrap();
        assert!(f.then(&g).is_identity());
        assert!(g.then(&f).is_identity());
    }
}
