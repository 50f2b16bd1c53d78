//! Hodge data on tensor powers `(ΣV)^{⊗n}`.

use num_traits::One;

use super::structure::{signed, AInfStructure};
use super::tensor::{extend_words, tensor_power_apply, Basis, Idx, SVec, TVec, TWord};
use crate::linear::HodgeData;
use crate::report::{IdentityReport, Witness};
use crate::scalar::{format_q, Q};

/// `(s, t)` of `V` acting on `ΣV` (the matrices are unchanged by the
/// suspension), with their tensor extensions
/// `T̃ = t^{⊗n}` and `S̃ = Σ t^{⊗i} ⊗ s ⊗ id^{⊗j}`.
#[derive(Clone, Debug)]
pub struct TensorHodge {
    pub basis: Basis,
    s: Vec<SVec>,
    t: Vec<SVec>,
}

impl TensorHodge {
    pub fn new(basis: &Basis, hd: &HodgeData) -> TensorHodge {
        TensorHodge {
            basis: basis.clone(),
            s: basis.columns_of(&hd.s),
            t: basis.columns_of(&hd.t),
        }
    }

    pub fn s_col(&self, i: Idx) -> &SVec {
        &self.s[i as usize]
    }

    pub fn t_col(&self, i: Idx) -> &SVec {
        &self.t[i as usize]
    }

    /// `T̃` on one word, added to `out` with factor `coeff`.
    pub fn t_apply(&self, w: &[Idx], coeff: &Q, out: &mut TVec) {
        tensor_power_apply(&self.t, w, coeff, out)
    }

    /// `S̃` on one word: `s` in position `i` passes the `t`-images before it
    /// with the Koszul sign of their suspended degrees.
    pub fn s_apply(&self, w: &[Idx], coeff: &Q, out: &mut TVec) {
        let mut prefix: Vec<(TWord, Q)> = vec![(TWord::new(), coeff.clone())];
        let mut prefix_sdeg = 0i32;
        for (pos, &i) in w.iter().enumerate() {
            let neg = prefix_sdeg.rem_euclid(2) == 1;
            for (word, c) in extend_words(&prefix, &self.s[i as usize]) {
                let mut full = word;
                full.extend_from_slice(&w[pos + 1..]);
                out.add_term(full, signed(&c, neg));
            }
            prefix = extend_words(&prefix, &self.t[i as usize]);
            if prefix.is_empty() {
                return;
            }
            prefix_sdeg += self.basis.sdeg(i);
        }
    }

    pub fn t_vec(&self, v: &TVec) -> TVec {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            self.t_apply(w, c, &mut out);
        }
        out
    }

    pub fn s_vec(&self, v: &TVec) -> TVec {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            self.s_apply(w, c, &mut out);
        }
        out
    }
}

/// Checks the five Hodge axioms for `(T̃, S̃)` against the coderivation
/// extension of `b_1` on every word of length `n`.
pub fn coextend_hodge_check(a: &AInfStructure, th: &TensorHodge, n: usize) -> Vec<IdentityReport> {
    let d = |v: &TVec| {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            a.coder_apply(w, 1, 1, c, &mut out);
        }
        out
    };
    let s = |v: &TVec| th.s_vec(v);
    let t = |v: &TVec| th.t_vec(v);
    let ops = OperatorTriple {
        d: &d,
        s: &s,
        t: &t,
    };
    hodge_axioms(
        &a.basis,
        &a.basis.words(n),
        &ops,
        &format!("TENSOR-HD-{n}"),
        n,
    )
}

/// Three operators on `T(ΣV)` to test against the Hodge axioms.
pub struct OperatorTriple<'a> {
    pub d: &'a dyn Fn(&TVec) -> TVec,
    pub s: &'a dyn Fn(&TVec) -> TVec,
    pub t: &'a dyn Fn(&TVec) -> TVec,
}

/// One report per axiom (ids `{prefix}.1` to `{prefix}.5`), each the first
/// failing input word if any.
pub fn hodge_axioms(
    basis: &Basis,
    words: &[TWord],
    ops: &OperatorTriple<'_>,
    prefix: &str,
    grade: usize,
) -> Vec<IdentityReport> {
    let mut witnesses: [Option<Witness>; 5] = Default::default();
    let eqs = [
        "s² = 0",
        "sd + ds = 1 - t",
        "dt = td",
        "t² = t",
        "st = ts = 0",
    ];
    for w in words {
        if witnesses.iter().all(Option::is_some) {
            break;
        }
        let v = TVec::word(w.clone());
        let (sv, tv, dv) = ((ops.s)(&v), (ops.t)(&v), (ops.d)(&v));
        let checks: [TVec; 5] = [
            (ops.s)(&sv),
            {
                let mut lhs = (ops.s)(&dv);
                lhs.add_scaled(&(ops.d)(&sv), &Q::one());
                lhs.add_scaled(&v, &-Q::one());
                lhs.add_scaled(&tv, &Q::one());
                lhs
            },
            (ops.d)(&tv).sub(&(ops.t)(&dv)),
            (ops.t)(&tv).sub(&tv),
            {
                let st = (ops.s)(&tv);
                if st.is_zero() {
                    (ops.t)(&sv)
                } else {
                    st
                }
            },
        ];
        for (k, diff) in checks.iter().enumerate() {
            if witnesses[k].is_none() {
                if let Some((word, c)) = diff.first_term() {
                    witnesses[k] = Some(Witness {
                        equation: eqs[k].into(),
                        term: format!("{} -> {}", basis.format_word(w), basis.format_word(word)),
                        coefficient: format_q(c),
                        grade: grade as i64,
                    });
                }
            }
        }
    }
    witnesses
        .into_iter()
        .enumerate()
        .map(|(k, w)| IdentityReport::new(format!("{prefix}.{}", k + 1), grade, w))
        .collect()
}
