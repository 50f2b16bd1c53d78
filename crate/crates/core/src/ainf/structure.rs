use num_traits::{One, Zero};

use super::tensor::{Basis, Idx, MultiMap, SVec, TVec, TWord};
use crate::linear::{GradedMap, GradedSpace};
use crate::report::{IdentityReport, Witness};
use crate::scalar::{format_q, Q};
use crate::{Error, Result};

/// An A∞ structure truncated at arity `cap`, as the components
/// `b_n: (ΣV)^{⊗n} → ΣV` of a degree +1 codifferential on `T(ΣV)`.
///
/// `ops[n - 1] = b_n`; missing arities are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfStructure {
    pub basis: Basis,
    pub cap: usize,
    pub ops: Vec<MultiMap>,
}

/// `(-1)^{Σ_j (n - j)(|v_j| - 1)}`: the Koszul sign of `(σ⁻¹)^{⊗n}` on
/// `σv_1 ⊗ ⋯ ⊗ σv_n`.
pub fn suspension_sign(basis: &Basis, w: &[Idx]) -> bool {
    suspension_sign_of(&w.iter().map(|&i| basis.sdeg(i)).collect::<Vec<_>>())
}

/// [`suspension_sign`] from the suspended degrees of the inputs.
pub fn suspension_sign_of(sdegs: &[i32]) -> bool {
    let n = sdegs.len();
    let e: i64 = sdegs
        .iter()
        .enumerate()
        .map(|(j, &k)| (n - 1 - j) as i64 * k as i64)
        .sum();
    e.rem_euclid(2) == 1
}

pub(crate) fn signed(c: &Q, negate: bool) -> Q {
    if negate {
        -c.clone()
    } else {
        c.clone()
    }
}

impl AInfStructure {
    pub fn zero(basis: Basis, cap: usize) -> AInfStructure {
        AInfStructure {
            basis,
            cap,
            ops: vec![MultiMap::new(); cap],
        }
    }

    pub fn space(&self) -> &GradedSpace {
        self.basis.space()
    }

    pub fn b(&self, n: usize) -> Option<&MultiMap> {
        if n == 0 {
            return None;
        }
        self.ops.get(n - 1)
    }

    /// Converts operations `m_n` of degree `2 - n` on `V` into `b_n`, with
    /// `b_n = σ m_n (σ⁻¹)^{⊗n}`. `m_ops[n - 1] = m_n`.
    pub fn from_m_family(
        space: &GradedSpace,
        cap: usize,
        m_ops: &[MultiMap],
    ) -> Result<AInfStructure> {
        let basis = Basis::suspend(space);
        if m_ops.len() > cap {
            if let Some((n, _)) = m_ops
                .iter()
                .enumerate()
                .skip(cap)
                .find(|(_, m)| !m.is_zero())
            {
                return Err(Error::Arity(format!(
                    "operation of arity {} exceeds cap {cap}",
                    n + 1
                )));
            }
        }
        let mut ops = vec![MultiMap::new(); cap];
        for (k, m) in m_ops.iter().enumerate().take(cap) {
            let n = k + 1;
            for (w, out) in m.entries() {
                if w.len() != n {
                    return Err(Error::Arity(format!(
                        "entry of length {} in m_{n}",
                        w.len()
                    )));
                }
                let in_deg: i32 = w.iter().map(|&i| basis.degree(i)).sum();
                for (o, c) in out {
                    let expected = in_deg + 2 - n as i32;
                    if basis.degree(*o) != expected {
                        return Err(Error::Degree(format!(
                            "m_{n}({}) = {} has degree {}, expected {expected}",
                            basis.format_word(w),
                            basis.label(*o),
                            basis.degree(*o)
                        )));
                    }
                    ops[k].add_entry(w.clone(), *o, signed(c, suspension_sign(&basis, w)));
                }
            }
        }
        Ok(AInfStructure { basis, cap, ops })
    }

    /// Inverse of [`from_m_family`](Self::from_m_family).
    pub fn to_m_family(&self) -> Vec<MultiMap> {
        self.ops
            .iter()
            .map(|b| {
                let mut m = MultiMap::new();
                for (w, out) in b.entries() {
                    let neg = suspension_sign(&self.basis, w);
                    m.set(
                        w.clone(),
                        out.iter().map(|(o, c)| (*o, signed(c, neg))).collect(),
                    );
                }
                m
            })
            .collect()
    }

    /// A dg algebra `(V, d, ·)` as an A∞ structure.
    pub fn from_dg_algebra(
        space: &GradedSpace,
        d: &GradedMap,
        product: &MultiMap,
        cap: usize,
    ) -> Result<AInfStructure> {
        let basis = Basis::suspend(space);
        let mut m1 = MultiMap::new();
        for (i, col) in basis.columns_of(d).into_iter().enumerate() {
            m1.set(smallvec::smallvec![i as Idx], col);
        }
        Self::from_m_family(space, cap, &[m1, product.clone()])
    }

    /// Adds the coderivation extension of `b_k` for `kmin ≤ k ≤ kmax` applied to
    /// `w`, times `coeff`, to `out`:
    /// `Σ (-1)^{|w_{<i}|} w_{<i} ⊗ b_k(w_i ⋯ w_{i+k-1}) ⊗ w_{≥i+k}`.
    pub fn coder_apply(&self, w: &[Idx], kmin: usize, kmax: usize, coeff: &Q, out: &mut TVec) {
        coder_apply(&self.basis, &self.ops, w, kmin, kmax, coeff, out)
    }

    pub fn coder(&self, v: &TVec, kmin: usize) -> TVec {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            self.coder_apply(w, kmin, self.cap, c, &mut out);
        }
        out
    }

    /// `pr_1 B(v)` for the full codifferential, i.e. `Σ b_{|w|}(w)`.
    pub fn pr1_apply(&self, v: &TVec) -> std::collections::BTreeMap<Idx, Q> {
        let mut acc = std::collections::BTreeMap::new();
        for (w, c) in v.terms() {
            if let Some(val) = self.b(w.len()).and_then(|b| b.get(w)) {
                super::tensor::svec_add(&mut acc, val, c);
            }
        }
        acc
    }

    /// Whether `b_k` vanishes for every `k ≥ 2`.
    pub fn is_linear(&self) -> bool {
        self.ops.iter().skip(1).all(MultiMap::is_zero)
    }

    /// Same operations with arities above `cap` dropped.
    pub fn truncate(&self, cap: usize) -> AInfStructure {
        let mut ops = self.ops.clone();
        ops.resize(cap, MultiMap::new());
        AInfStructure {
            basis: self.basis.clone(),
            cap,
            ops,
        }
    }
}

pub(crate) fn coder_apply(
    basis: &Basis,
    ops: &[MultiMap],
    w: &[Idx],
    kmin: usize,
    kmax: usize,
    coeff: &Q,
    out: &mut TVec,
) {
    let n = w.len();
    let mut prefix_sdeg = 0i32;
    for i in 0..n {
        let neg = prefix_sdeg.rem_euclid(2) == 1;
        for k in kmin.max(1)..=kmax.min(n - i).min(ops.len()) {
            let Some(vals) = ops[k - 1].get(&w[i..i + k]) else {
                continue;
            };
            for (o, c) in vals {
                let mut word: TWord = TWord::with_capacity(n - k + 1);
                word.extend_from_slice(&w[..i]);
                word.push(*o);
                word.extend_from_slice(&w[i + k..]);
                out.add_term(word, signed(&(c * coeff), neg));
            }
        }
        prefix_sdeg += basis.sdeg(w[i]);
    }
}

/// Stasheff identities `Σ b_{i+1+j}(id^{⊗i} ⊗ b_k ⊗ id^{⊗j}) = 0`, one
/// report per arity `1..=cap`, with ids `STASHEFF-n`.
pub fn codifferential_check(a: &AInfStructure) -> Vec<IdentityReport> {
    (1..=a.cap)
        .map(|n| IdentityReport::new(format!("STASHEFF-{n}"), a.cap, stasheff_witness(a, n)))
        .collect()
}

fn stasheff_witness(a: &AInfStructure, n: usize) -> Option<Witness> {
    for w in a.basis.words(n) {
        if !a.basis.has_sdeg(a.basis.word_sdeg(&w) + 2) {
            continue;
        }
        let mut bw = TVec::zero();
        a.coder_apply(&w, 1, n, &Q::one(), &mut bw);
        let val = a.pr1_apply(&bw);
        if let Some((o, c)) = val.into_iter().find(|(_, c)| !c.is_zero()) {
            return Some(Witness {
                equation: format!("Σ b(..b..) = 0 at arity {n}"),
                term: format!("{} -> {}", a.basis.format_word(&w), a.basis.label(o)),
                coefficient: format_q(&c),
                grade: n as i64,
            });
        }
    }
    None
}

/// Value of `b_n` on a word as a sparse vector (empty when zero).
pub fn op_value<'a>(a: &'a AInfStructure, w: &[Idx]) -> &'a [(Idx, Q)] {
    a.b(w.len())
        .and_then(|b| b.get(w))
        .map(SVec::as_slice)
        .unwrap_or(&[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;
    use crate::scalar::q;
    use smallvec::smallvec;

    /// Polynomial-like algebra on e (deg 0) and f (deg 1) with ee = e,
    /// ef = f, fe = f (associative).
    fn small_algebra(assoc: bool) -> AInfStructure {
        let v = GradedSpace::from_labels(
            [(0, vec!["e".into()]), (1, vec!["f".into()])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let b = Basis::suspend(&v);
        let (e, f) = (b.find("e").unwrap(), b.find("f").unwrap());
        let mut m2 = MultiMap::new();
        m2.add_entry(smallvec![e, e], e, q(1));
        m2.add_entry(smallvec![e, f], f, q(1));
        m2.add_entry(smallvec![f, e], f, q(if assoc { 1 } else { 2 }));
        let d = GradedMap::zero(&v, 1);
        AInfStructure::from_dg_algebra(&v, &d, &m2, 4).unwrap()
    }

    #[test]
    fn associative_product_passes() {
        assert!(all_pass(&codifferential_check(&small_algebra(true))));
    }

    #[test]
    fn non_associative_fails_at_arity_three() {
        let r = codifferential_check(&small_algebra(false));
        assert!(r[0].passed() && r[1].passed());
        assert!(!r[2].passed());
        assert_eq!(r[2].witness.as_ref().unwrap().grade, 3);
    }

    #[test]
    fn round_trip_conventions() {
        let a = small_algebra(true);
        let m = a.to_m_family();
        let back = AInfStructure::from_m_family(a.space(), a.cap, &m).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let v = GradedSpace::from_labels(
            [(0, vec!["e".into()]), (1, vec!["f".into()])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let mut m2 = MultiMap::new();
        m2.add_entry(smallvec![0, 0], 1, q(1));
        assert!(matches!(
            AInfStructure::from_m_family(&v, 2, &[MultiMap::new(), m2]),
            Err(Error::Degree(_))
        ));
    }
}
