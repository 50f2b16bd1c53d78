//! Splitting an A∞ structure into a minimal part on `tV` and a linear
//! contractible part, through an explicit A∞ isomorphism.

use std::collections::BTreeMap;

use super::morphism::{first_difference, morphism_check_named, AInfMorphism};
use super::structure::AInfStructure;
use super::tensor::{svec_add, svec_from_map, tensor_power, Idx, SVec, TVec};
use super::transfer::{retract_columns, transfer_minimal, BarData, Minimal};
use crate::linear::{cohomology_dims, HodgeData};
use crate::report::{IdentityReport, Witness};
use crate::scalar::{format_q, Q};

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `b̌`: `b̌_1 = b_1`, `b̌_n = ι b'_n π^{⊗n}` for `n ≥ 2`.
    pub split: AInfStructure,
    /// `F: (V, b) → (V, b̌)` with `f_1 = id`.
    pub iso: AInfMorphism,
    pub minimal: Minimal,
    pub reports: Vec<IdentityReport>,
}

fn apply_cols(cols: &[SVec], v: &BTreeMap<Idx, Q>) -> BTreeMap<Idx, Q> {
    let mut acc = BTreeMap::new();
    for (i, c) in v {
        svec_add(&mut acc, &cols[*i as usize], c);
    }
    acc
}

/// Reports: `ISO-n` (F is a morphism), `INVERSE-n` (`b_n = pr_1 F⁻¹ B̌ F̂`
/// on words of length `n`), `SHAPE-n` (split shape of `b̌_n`) and
/// `SHAPE-HOMOLOGY`.
pub fn decomposition(a: &AInfStructure, hd: &HodgeData, cap: usize) -> Decomposition {
    let a = &a.truncate(cap);
    let minimal = transfer_minimal(a, hd, cap);
    let bar = BarData::new(a, hd);
    let basis = &a.basis;
    let (_, iota, pi) = retract_columns(&minimal.retract, basis);
    let s_cols: Vec<SVec> = basis.indices().map(|i| bar.th.s_col(i).clone()).collect();
    let t_cols: Vec<SVec> = basis.indices().map(|i| bar.th.t_col(i).clone()).collect();

    let mut split = AInfStructure::zero(basis.clone(), cap);
    let mut iso = AInfMorphism::identity(a);
    if cap > 0 {
        split.ops[0] = a.ops[0].clone();
    }
    for n in 2..=cap {
        for w in basis.words(n) {
            let sw = basis.word_sdeg(&w);
            if basis.has_sdeg(sw) {
                // f_n = s b_n + t pr_1 Σ_{k≥1} (-mS̃)^k
                let word = TVec::word(w.clone());
                let bn: BTreeMap<Idx, Q> = a
                    .b(n)
                    .and_then(|b| b.get(&w))
                    .cloned()
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                let mut val = apply_cols(&s_cols, &bn);
                let tail: BTreeMap<Idx, Q> = bar.beta(&word).sub(&word).pr1().into_iter().collect();
                for (i, c) in apply_cols(&t_cols, &tail) {
                    *val.entry(i).or_default() += c;
                }
                let v = svec_from_map(val);
                if !v.is_empty() {
                    iso.comps[n - 1].set(w.clone(), v);
                }
            }
            if basis.has_sdeg(sw + 1) {
                let pw = tensor_power(&pi, &TVec::word(w.clone()));
                let mut acc = BTreeMap::new();
                for (u, c) in pw.terms() {
                    if let Some(val) = minimal.structure.b(n).and_then(|b| b.get(u)) {
                        svec_add(&mut acc, val, c);
                    }
                }
                let v = svec_from_map(apply_cols(&iota, &acc));
                if !v.is_empty() {
                    split.ops[n - 1].set(w, v);
                }
            }
        }
    }
    iso.target = split.clone();
    let mut reports = morphism_check_named(&iso, "ISO");
    reports.extend(inverse_check(a, &split, &iso));
    reports.extend(shape_check(&split, hd, &t_cols));
    Decomposition {
        split,
        iso,
        minimal,
        reports,
    }
}

/// `b_n = pr_1 F⁻¹ B̌ F̂` componentwise.
fn inverse_check(
    a: &AInfStructure,
    split: &AInfStructure,
    iso: &AInfMorphism,
) -> Vec<IdentityReport> {
    let inv = iso.inverse().expect("f_1 = id");
    (1..=a.cap)
        .map(|n| {
            let witness = a
                .basis
                .words(n)
                .into_iter()
                .filter(|w| a.basis.has_sdeg(a.basis.word_sdeg(w) + 1))
                .find_map(|w| {
                    let rhs = inv.pr1_apply(&split.coder(&iso.extend(&w), 1));
                    let lhs: BTreeMap<Idx, Q> = a
                        .b(n)
                        .and_then(|b| b.get(&w))
                        .cloned()
                        .unwrap_or_default()
                        .into_iter()
                        .collect();
                    first_difference(&lhs, &rhs).map(|(o, c)| Witness {
                        equation: format!("b = F⁻¹ b̌ F at arity {n}"),
                        term: format!("{} -> {}", a.basis.format_word(&w), a.basis.label(o)),
                        coefficient: format_q(&c),
                        grade: n as i64,
                    })
                });
            IdentityReport::new(format!("INVERSE-{n}"), a.cap, witness)
        })
        .collect()
}

/// For `n ≥ 2`, `b̌_n = t b̌_n = b̌_n t^{⊗n}`; for `n = 1`, `b̌_1 t = t b̌_1 = 0`.
/// `SHAPE-HOMOLOGY` compares `rank t` with `dim H(V, d)`.
fn shape_check(split: &AInfStructure, hd: &HodgeData, t_cols: &[SVec]) -> Vec<IdentityReport> {
    let basis = &split.basis;
    let mut reports = Vec::new();
    for n in 1..=split.cap {
        let witness = basis.words(n).into_iter().find_map(|w| {
            let bw: BTreeMap<Idx, Q> = split
                .b(n)
                .and_then(|b| b.get(&w))
                .cloned()
                .unwrap_or_default()
                .into_iter()
                .collect();
            let tw = tensor_power(t_cols, &TVec::word(w.clone()));
            let b_t = split.pr1_apply(&tw);
            let t_b = apply_cols(t_cols, &bw);
            let zero = BTreeMap::new();
            let (expected, eq) = if n == 1 {
                (&zero, "b̌_1 t = t b̌_1 = 0")
            } else {
                (&bw, "b̌_n t^{⊗n} = t b̌_n = b̌_n")
            };
            first_difference(&b_t, expected)
                .or_else(|| first_difference(&t_b, expected))
                .map(|(o, c)| Witness {
                    equation: eq.into(),
                    term: format!("{} -> {}", basis.format_word(&w), basis.label(o)),
                    coefficient: format_q(&c),
                    grade: n as i64,
                })
        });
        reports.push(IdentityReport::new(
            format!("SHAPE-{n}"),
            split.cap,
            witness,
        ));
    }
    let h = cohomology_dims(&b1_map(split));
    let witness = basis.space().degrees().find_map(|n| {
        let (r, hn) = (hd.t.rank(n), h.get(&n).copied().unwrap_or(0));
        (r != hn).then(|| Witness {
            equation: "rank t = dim H(V, d)".into(),
            term: format!("degree {n}: {r} vs {hn}"),
            coefficient: (r as i64 - hn as i64).to_string(),
            grade: n as i64,
        })
    });
    reports.push(IdentityReport::new("SHAPE-HOMOLOGY", split.cap, witness));
    reports
}

/// `b_1` as a graded map of degree +1 on `V` (the matrices of `b_1` and `d`
/// coincide).
pub fn b1_map(a: &AInfStructure) -> crate::linear::GradedMap {
    let basis = &a.basis;
    let mut d = crate::linear::GradedMap::zero(basis.space(), 1);
    if let Some(b1) = a.b(1) {
        for (w, vals) in b1.entries() {
            let (n, col) = basis.position(w[0]);
            for (o, c) in vals {
                let (_, row) = basis.position(*o);
                d.set_entry(n, row, col, c.clone());
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::MultiMap;
    use crate::gen::massey;
    use crate::linear::build_hodge;

    #[test]
    fn massey_decomposes() {
        let alg = massey();
        let hd = build_hodge(&alg.complex());
        let dec = decomposition(&alg.structure(4), &hd, 4);
        let failed: Vec<_> = dec.reports.iter().filter(|r| !r.passed()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn linear_structure_has_identity_iso() {
        let alg = massey();
        let hd = build_hodge(&alg.complex());
        let a = alg.structure(3).truncate(1).truncate(3);
        let dec = decomposition(&a, &hd, 3);
        assert!(dec.iso.comps.iter().skip(1).all(MultiMap::is_zero));
        assert_eq!(dec.split, a);
    }

    #[test]
    fn random_dg_algebras_decompose() {
        for seed in 0..20 {
            let mut rng = crate::gen::rng(seed);
            let alg = crate::gen::random_dg_algebra(&mut rng, 2, seed % 2 == 0);
            let hd = build_hodge(&alg.complex());
            let dec = decomposition(&alg.structure(5), &hd, 5);
            let failed: Vec<_> = dec.reports.iter().filter(|r| !r.passed()).collect();
            assert!(failed.is_empty(), "seed {seed}: {failed:?}");
        }
    }
}
