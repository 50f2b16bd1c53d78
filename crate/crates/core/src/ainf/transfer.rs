//! Homotopy transfer of A∞ structures along a Hodge decomposition.
//!
//! With `m` the coderivation extension of `b_{≥2}` (it lowers tensor length),
//! every geometric series below stops after at most `n` terms on words of
//! length `n`.

use num_traits::One;

use super::hodge::{hodge_axioms, OperatorTriple, TensorHodge};
use super::morphism::{components_equal, morphism_check_named, AInfMorphism};
use super::structure::{codifferential_check, AInfStructure};
use super::tensor::{svec_from_map, tensor_power, Basis, Idx, MultiMap, SVec, TVec, TWord};
use crate::linear::{retract, HodgeData, Retract};
use crate::report::IdentityReport;
use crate::scalar::Q;

/// The bar-side operators of one transfer problem.
pub struct BarData<'a> {
    pub a: &'a AInfStructure,
    pub th: TensorHodge,
}

impl<'a> BarData<'a> {
    pub fn new(a: &'a AInfStructure, hd: &HodgeData) -> BarData<'a> {
        BarData {
            a,
            th: TensorHodge::new(&a.basis, hd),
        }
    }

    /// `m(v)`: the arity-lowering part of the codifferential.
    pub fn m(&self, v: &TVec) -> TVec {
        self.a.coder(v, 2)
    }

    /// `Σ_{k≥0} (-S̃m)^k v`, i.e. `α̃ v`.
    pub fn alpha(&self, v: &TVec) -> TVec {
        geometric(v, |y| self.th.s_vec(&self.m(y)))
    }

    /// `Σ_{k≥0} (-mS̃)^k v`, i.e. `β̃ v`.
    pub fn beta(&self, v: &TVec) -> TVec {
        geometric(v, |y| self.m(&self.th.s_vec(y)))
    }

    /// The full codifferential `D + m`.
    pub fn codiff(&self, v: &TVec) -> TVec {
        self.a.coder(v, 1)
    }
}

/// `Σ_{k≥0} (-f)^k v` for a nilpotent `f`.
fn geometric(v: &TVec, f: impl Fn(&TVec) -> TVec) -> TVec {
    let mut acc = v.clone();
    let mut y = v.clone();
    loop {
        y = f(&y).neg();
        if y.is_zero() {
            return acc;
        }
        acc.add_scaled(&y, &Q::one());
    }
}

/// A minimal model with its morphism pair and the reports that certify it.
#[derive(Clone, Debug)]
pub struct Minimal {
    pub structure: AInfStructure,
    pub retract: Retract,
    pub incl: AInfMorphism,
    pub proj: AInfMorphism,
    pub reports: Vec<IdentityReport>,
}

/// Sparse columns of `ι` and `π` between the suspended bases of `tV` and `V`.
pub(crate) fn retract_columns(r: &Retract, v: &Basis) -> (Basis, Vec<SVec>, Vec<SVec>) {
    let tb = Basis::suspend(&r.space);
    let iota = tb.columns_into(&r.iota, v);
    let pi = v.columns_into(&r.pi, &tb);
    (tb, iota, pi)
}

fn apply_pi(pi: &[SVec], v: &std::collections::BTreeMap<Idx, Q>) -> SVec {
    let mut acc = std::collections::BTreeMap::new();
    for (i, c) in v {
        super::tensor::svec_add(&mut acc, &pi[*i as usize], c);
    }
    svec_from_map(acc)
}

fn set_nonzero(m: &mut MultiMap, w: TWord, v: SVec) {
    if !v.is_empty() {
        m.set(w, v);
    }
}

/// Transfers `a` to `tV`:
/// `b'_1 = π b_1 ι`, `b'_n = π pr_1 m α̃ ι^{⊗n}`, with
/// `incl_n = pr_1 α̃ ι^{⊗n}` and `proj_n = π pr_1 β̃`.
///
/// Reports: `STASHEFF-n` for the result, `INCL-n` and `PROJ-n` morphism
/// checks and `PROJ-INCL-n` for `proj ∘ incl = id`. The perturbed Hodge
/// axioms are checked separately by [`perturbed_hodge_reports`].
pub fn transfer_minimal(a: &AInfStructure, hd: &HodgeData, cap: usize) -> Minimal {
    let a = &a.truncate(cap);
    let bar = BarData::new(a, hd);
    let r = retract(a.space(), &hd.t);
    let (tb, iota, pi) = retract_columns(&r, &a.basis);
    let mut ops = vec![MultiMap::new(); cap];
    let mut incl = vec![MultiMap::new(); cap];
    for n in 1..=cap {
        for u in tb.words(n) {
            let v = tensor_power(&iota, &TVec::word(u.clone()));
            let av = bar.alpha(&v);
            set_nonzero(&mut incl[n - 1], u.clone(), av.pr1());
            if !tb.has_sdeg(tb.word_sdeg(&u) + 1) {
                continue;
            }
            let out = if n == 1 {
                a.pr1_apply(&v)
            } else {
                single_letters(&bar.m(&av))
            };
            set_nonzero(&mut ops[n - 1], u, apply_pi(&pi, &out));
        }
    }
    let structure = AInfStructure {
        basis: tb.clone(),
        cap,
        ops,
    };
    let mut proj = vec![MultiMap::new(); cap];
    for n in 1..=cap {
        for w in a.basis.words(n) {
            if !tb.has_sdeg(a.basis.word_sdeg(&w)) {
                continue;
            }
            let bw = bar.beta(&TVec::word(w.clone()));
            set_nonzero(&mut proj[n - 1], w, apply_pi(&pi, &single_letters(&bw)));
        }
    }
    let incl = AInfMorphism {
        source: structure.clone(),
        target: a.clone(),
        cap,
        comps: incl,
    };
    let proj = AInfMorphism {
        source: a.clone(),
        target: structure.clone(),
        cap,
        comps: proj,
    };
    let mut reports = codifferential_check(&structure);
    reports.extend(morphism_check_named(&incl, "INCL"));
    reports.extend(morphism_check_named(&proj, "PROJ"));
    reports.extend(components_equal(
        &incl.then(&proj),
        &AInfMorphism::identity(&structure),
        "PROJ-INCL",
    ));
    Minimal {
        structure,
        retract: r,
        incl,
        proj,
        reports,
    }
}

/// Length-one part of a tensor as a map.
fn single_letters(v: &TVec) -> std::collections::BTreeMap<Idx, Q> {
    v.terms()
        .filter(|(w, _)| w.len() == 1)
        .map(|(w, c)| (w[0], c.clone()))
        .collect()
}

/// Hodge axioms for `(α̃S̃, α̃T̃β̃)` against `D + m` on all words of length
/// at most `max_arity`, ids `PHD-n.k`. The cost grows like `dim V^n`.
pub fn perturbed_hodge_reports(
    a: &AInfStructure,
    hd: &HodgeData,
    max_arity: usize,
) -> Vec<IdentityReport> {
    let a = a.truncate(a.cap.max(max_arity));
    let bar = BarData::new(&a, hd);
    (1..=max_arity)
        .flat_map(|n| perturbed_hodge_check(&bar, n))
        .collect()
}

fn perturbed_hodge_check(bar: &BarData<'_>, n: usize) -> Vec<IdentityReport> {
    let d = |v: &TVec| bar.codiff(v);
    let s = |v: &TVec| bar.alpha(&bar.th.s_vec(v));
    let t = |v: &TVec| bar.alpha(&bar.th.t_vec(&bar.beta(v)));
    let ops = OperatorTriple {
        d: &d,
        s: &s,
        t: &t,
    };
    hodge_axioms(
        &bar.a.basis,
        &bar.a.basis.words(n),
        &ops,
        &format!("PHD-{n}"),
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::massey;
    use crate::linear::build_hodge;
    use crate::report::all_pass;
    use crate::scalar::format_q;

    #[test]
    fn massey_triple_product() {
        let alg = massey();
        let hd = build_hodge(&alg.complex());
        let min = transfer_minimal(&alg.structure(4), &hd, 4);
        let failed: Vec<_> = min.reports.iter().filter(|r| !r.passed()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        let m = min.structure.to_m_family();
        let tb = &min.structure.basis;
        let (u, v, wu) = (
            tb.find("u").unwrap(),
            tb.find("v").unwrap(),
            tb.find("wu").unwrap(),
        );
        let val = m[2].get(&[u, v, u]).unwrap();
        assert_eq!(val.len(), 1);
        assert_eq!(val[0].0, wu);
        eprintln!("m3(u,v,u) = {} wu", format_q(&val[0].1));
        assert!(all_pass(&min.reports));
        assert!(all_pass(&perturbed_hodge_reports(
            &alg.structure(4),
            &hd,
            4
        )));
    }
}
