//! A∞ modules and their transfer, by series expansion and by summation over
//! admissible trees.
//!
//! A word of `B(ΣV) ⊗ ΣM` is a [`TWord`] whose last letter indexes the
//! module basis and whose other letters index the algebra basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::structure::{signed, suspension_sign_of, AInfStructure};
use super::tensor::{svec_add, svec_from_map, Basis, Idx, MultiMap, SVec, TVec, TWord};
use super::transfer::retract_columns;
use super::trees::{enumerate_admissible_trees, AdmissibleTree};
use crate::linear::{retract, GradedMap, GradedSpace, HodgeData, Retract};
use crate::report::{IdentityReport, Witness};
use crate::scalar::{format_q, Q};
use crate::{Error, Result};

/// Operations `b^M_n: (ΣV)^{⊗(n-1)} ⊗ ΣM → ΣM` of degree +1,
/// `ops[n - 1] = b^M_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfModule {
    pub algebra: AInfStructure,
    pub basis: Basis,
    pub cap: usize,
    pub ops: Vec<MultiMap>,
}

impl AInfModule {
    pub fn zero(algebra: &AInfStructure, basis: Basis, cap: usize) -> AInfModule {
        AInfModule {
            algebra: algebra.clone(),
            basis,
            cap,
            ops: vec![MultiMap::new(); cap],
        }
    }

    /// `V` as a module over itself, `b^M_n = b_n`.
    pub fn regular(a: &AInfStructure) -> AInfModule {
        AInfModule {
            algebra: a.clone(),
            basis: a.basis.clone(),
            cap: a.cap,
            ops: a.ops.clone(),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        self.basis.space()
    }

    pub fn b(&self, n: usize) -> Option<&MultiMap> {
        self.ops.get(n.checked_sub(1)?)
    }

    fn sdegs(&self, w: &[Idx]) -> Vec<i32> {
        let (mu, h) = w.split_last().expect("module word");
        let mut out: Vec<i32> = h.iter().map(|&i| self.algebra.basis.sdeg(i)).collect();
        out.push(self.basis.sdeg(*mu));
        out
    }

    pub fn word_sdeg(&self, w: &[Idx]) -> i32 {
        self.sdegs(w).iter().sum()
    }

    pub fn format_word(&self, w: &[Idx]) -> String {
        let (mu, h) = w.split_last().expect("module word");
        let mut parts: Vec<&str> = h.iter().map(|&i| self.algebra.basis.label(i)).collect();
        parts.push(self.basis.label(*mu));
        parts.join("⊗")
    }

    /// Words with `n - 1` algebra letters and one module letter.
    pub fn words(&self, n: usize) -> Vec<TWord> {
        let mut out = Vec::new();
        for h in self.algebra.basis.words(n - 1) {
            for mu in self.basis.indices() {
                let mut w = h.clone();
                w.push(mu);
                out.push(w);
            }
        }
        out
    }

    /// Converts `m^M_n` of degree `2 - n` into `b^M_n` with the algebra's
    /// suspension convention.
    pub fn from_m_family(
        algebra: &AInfStructure,
        space: &GradedSpace,
        m_ops: &[MultiMap],
    ) -> Result<AInfModule> {
        let mut out = AInfModule::zero(algebra, Basis::suspend(space), algebra.cap);
        if let Some((n, _)) = m_ops
            .iter()
            .enumerate()
            .skip(algebra.cap)
            .find(|(_, m)| !m.is_zero())
        {
            return Err(Error::Arity(format!(
                "module operation of arity {} exceeds cap {}",
                n + 1,
                algebra.cap
            )));
        }
        for (k, m) in m_ops.iter().enumerate().take(algebra.cap) {
            let n = k + 1;
            for (w, vals) in m.entries() {
                if w.len() != n {
                    return Err(Error::Arity(format!(
                        "entry of length {} in module m_{n}",
                        w.len()
                    )));
                }
                let sdegs = out.sdegs(w);
                let in_deg: i32 = sdegs.iter().map(|d| d + 1).sum();
                for (o, c) in vals {
                    let expected = in_deg + 2 - n as i32;
                    if out.basis.degree(*o) != expected {
                        return Err(Error::Degree(format!(
                            "module m_{n}({}) = {} has degree {}, expected {expected}",
                            out.format_word(w),
                            out.basis.label(*o),
                            out.basis.degree(*o)
                        )));
                    }
                    out.ops[k].add_entry(w.clone(), *o, signed(c, suspension_sign_of(&sdegs)));
                }
            }
        }
        Ok(out)
    }

    pub fn to_m_family(&self) -> Vec<MultiMap> {
        self.ops
            .iter()
            .map(|b| {
                let mut m = MultiMap::new();
                for (w, vals) in b.entries() {
                    let neg = suspension_sign_of(&self.sdegs(w));
                    m.set(
                        w.clone(),
                        vals.iter().map(|(o, c)| (*o, signed(c, neg))).collect(),
                    );
                }
                m
            })
            .collect()
    }

    /// Adds the comodule coderivation pieces to `out`: the algebra
    /// codifferential on the prefix when `with_algebra`, and the module
    /// operations taking between `rmin` and `rmax` algebra inputs.
    fn apply_word(
        &self,
        w: &[Idx],
        coeff: &Q,
        with_algebra: bool,
        rmin: usize,
        rmax: usize,
        out: &mut TVec,
    ) {
        let (mu, h) = w.split_last().expect("module word");
        if with_algebra {
            let mut bh = TVec::zero();
            self.algebra
                .coder_apply(h, 1, self.algebra.cap, coeff, &mut bh);
            for (mut word, c) in bh.into_terms() {
                word.push(*mu);
                out.add_term(word, c);
            }
        }
        let mut prefix_sdeg = 0i32;
        for i in 0..=h.len() {
            let r = h.len() - i;
            if (rmin..=rmax).contains(&r) {
                if let Some(vals) = self.b(r + 1).and_then(|b| b.get(&w[i..])) {
                    let neg = prefix_sdeg.rem_euclid(2) == 1;
                    for (o, c) in vals {
                        let mut word: TWord = h[..i].iter().copied().collect();
                        word.push(*o);
                        out.add_term(word, signed(&(c * coeff), neg));
                    }
                }
            }
            if i < h.len() {
                prefix_sdeg += self.algebra.basis.sdeg(h[i]);
            }
        }
    }

    fn apply(&self, v: &TVec, with_algebra: bool, rmin: usize, rmax: usize) -> TVec {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            self.apply_word(w, c, with_algebra, rmin, rmax, &mut out);
        }
        out
    }

    /// The full codifferential `D_M` on `B(ΣV) ⊗ ΣM`.
    pub fn codiff(&self, v: &TVec) -> TVec {
        self.apply(v, true, 0, usize::MAX)
    }

    /// `D_0 = B ⊗ 1 + 1 ⊗ b^M_1`.
    pub fn d0(&self, v: &TVec) -> TVec {
        self.apply(v, true, 0, 0)
    }

    /// Module operations with at least one algebra input.
    pub fn x(&self, v: &TVec) -> TVec {
        self.apply(v, false, 1, usize::MAX)
    }

    /// `pr_M D_M(v) = Σ b^M_{|w|}(w)`.
    pub fn pr_apply(&self, v: &TVec) -> BTreeMap<Idx, Q> {
        let mut acc = BTreeMap::new();
        for (w, c) in v.terms() {
            if let Some(val) = self.b(w.len()).and_then(|b| b.get(w)) {
                svec_add(&mut acc, val, c);
            }
        }
        acc
    }

    /// `b^M_1` as a graded map on `M`.
    pub fn differential(&self) -> GradedMap {
        let mut d = GradedMap::zero(self.space(), 1);
        if let Some(b1) = self.b(1) {
            for (w, vals) in b1.entries() {
                let (n, col) = self.basis.position(w[0]);
                for (o, c) in vals {
                    d.set_entry(n, self.basis.position(*o).1, col, c.clone());
                }
            }
        }
        d
    }
}

/// The module codifferential identity `pr_M D_M² = 0` per arity, ids
/// `{prefix}-n`.
pub fn module_check_named(m: &AInfModule, prefix: &str) -> Vec<IdentityReport> {
    (1..=m.cap)
        .map(|n| {
            let witness = m
                .words(n)
                .into_iter()
                .filter(|w| m.basis.has_sdeg(m.word_sdeg(w) + 2))
                .find_map(|w| {
                    let val = m.pr_apply(&m.codiff(&TVec::word(w.clone())));
                    val.into_iter()
                        .find(|(_, c)| !c.is_zero())
                        .map(|(o, c)| Witness {
                            equation: format!("Σ b^M(..b..) = 0 at arity {n}"),
                            term: format!("{} -> {}", m.format_word(&w), m.basis.label(o)),
                            coefficient: format_q(&c),
                            grade: n as i64,
                        })
                });
            IdentityReport::new(format!("{prefix}-{n}"), m.cap, witness)
        })
        .collect()
}

pub fn module_check(m: &AInfModule) -> Vec<IdentityReport> {
    module_check_named(m, "MODULE-STASHEFF")
}

/// A morphism of modules over the identity of the algebra, components
/// `f_n: (ΣV)^{⊗(n-1)} ⊗ ΣM → ΣN` of degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMorphism {
    pub source: AInfModule,
    pub target: AInfModule,
    pub cap: usize,
    pub comps: Vec<MultiMap>,
}

impl ModuleMorphism {
    /// `F̂(h ⊗ μ) = Σ h' ⊗ f(h'' ⊗ μ)` over splittings `h = h' h''`.
    pub fn extend(&self, w: &[Idx]) -> TVec {
        let mut out = TVec::zero();
        let len = w.len();
        for i in 0..len {
            if let Some(vals) = self.comps.get(len - i - 1).and_then(|f| f.get(&w[i..])) {
                for (o, c) in vals {
                    let mut word: TWord = w[..i].iter().copied().collect();
                    word.push(*o);
                    out.add_term(word, c.clone());
                }
            }
        }
        out
    }

    pub fn pr_apply(&self, v: &TVec) -> BTreeMap<Idx, Q> {
        let mut acc = BTreeMap::new();
        for (w, c) in v.terms() {
            if let Some(val) = self.comps.get(w.len() - 1).and_then(|f| f.get(w)) {
                svec_add(&mut acc, val, c);
            }
        }
        acc
    }
}

/// `pr_N D_N F̂ = pr_N F̂ D_M` per arity, ids `{prefix}-n`.
pub fn module_morphism_check(f: &ModuleMorphism, prefix: &str) -> Vec<IdentityReport> {
    let (src, tgt) = (&f.source, &f.target);
    (1..=f.cap)
        .map(|n| {
            let witness = src
                .words(n)
                .into_iter()
                .filter(|w| tgt.basis.has_sdeg(src.word_sdeg(w) + 1))
                .find_map(|w| {
                    let lhs = tgt.pr_apply(&f.extend(&w));
                    let rhs = f.pr_apply(&src.codiff(&TVec::word(w.clone())));
                    super::morphism::first_difference(&lhs, &rhs).map(|(o, c)| Witness {
                        equation: format!("b^N F = F b^M at arity {n}"),
                        term: format!("{} -> {}", src.format_word(&w), tgt.basis.label(o)),
                        coefficient: format_q(&c),
                        grade: n as i64,
                    })
                });
            IdentityReport::new(format!("{prefix}-{n}"), f.cap, witness)
        })
        .collect()
}

/// `S(h ⊗ μ) = (-1)^{|h|} h ⊗ s μ` and `T(h ⊗ μ) = h ⊗ t μ`.
struct ModuleHodge<'a> {
    m: &'a AInfModule,
    s: Vec<SVec>,
    t: Vec<SVec>,
}

impl ModuleHodge<'_> {
    fn apply(&self, v: &TVec, cols: &[SVec], koszul: bool) -> TVec {
        let mut out = TVec::zero();
        for (w, c) in v.terms() {
            let (mu, h) = w.split_last().expect("module word");
            let neg = koszul && self.m.algebra.basis.word_sdeg(h).rem_euclid(2) == 1;
            for (o, x) in &cols[*mu as usize] {
                let mut word: TWord = h.iter().copied().collect();
                word.push(*o);
                out.add_term(word, signed(&(c * x), neg));
            }
        }
        out
    }

    fn s(&self, v: &TVec) -> TVec {
        self.apply(v, &self.s, true)
    }

    fn t(&self, v: &TVec) -> TVec {
        self.apply(v, &self.t, false)
    }

    /// `Σ_k (-Sx)^k v`.
    fn alpha(&self, v: &TVec) -> TVec {
        let mut acc = v.clone();
        let mut y = v.clone();
        loop {
            y = self.s(&self.m.x(&y)).neg();
            if y.is_zero() {
                return acc;
            }
            acc.add_scaled(&y, &Q::one());
        }
    }

    /// `Σ_k (-xS)^k v`.
    fn beta(&self, v: &TVec) -> TVec {
        let mut acc = v.clone();
        let mut y = v.clone();
        loop {
            y = self.m.x(&self.s(&y)).neg();
            if y.is_zero() {
                return acc;
            }
            acc.add_scaled(&y, &Q::one());
        }
    }
}

fn single_letters(v: &TVec) -> BTreeMap<Idx, Q> {
    v.terms()
        .filter(|(w, _)| w.len() == 1)
        .map(|(w, c)| (w[0], c.clone()))
        .collect()
}

fn apply_cols(cols: &[SVec], v: &BTreeMap<Idx, Q>) -> BTreeMap<Idx, Q> {
    let mut acc = BTreeMap::new();
    for (i, c) in v {
        svec_add(&mut acc, &cols[*i as usize], c);
    }
    acc
}

/// The composite `m_Γ` of a tree, evaluated with `y = -b^M` in place of the
/// module operations, on `h ⊗ μ`: leaf to root, `t` on the module input,
/// then for each branching `y_{r+1}` on the last `r` algebra inputs and the
/// module strand, followed by `s` (by `t` at the root).
pub fn tree_apply(
    tree: &AdmissibleTree,
    m: &AInfModule,
    hd: &HodgeData,
    w: &[Idx],
) -> Result<BTreeMap<Idx, Q>> {
    let s = m.basis.columns_of(&hd.s);
    let t = m.basis.columns_of(&hd.t);
    tree_apply_cols(tree, m, &s, &t, w)
}

fn tree_apply_cols(
    tree: &AdmissibleTree,
    m: &AInfModule,
    s: &[SVec],
    t: &[SVec],
    w: &[Idx],
) -> Result<BTreeMap<Idx, Q>> {
    if tree.arity() != w.len() {
        return Err(Error::Arity(format!(
            "tree {tree} has arity {}, input has {}",
            tree.arity(),
            w.len()
        )));
    }
    let (mu, h) = w.split_last().expect("module word");
    let mut strand = apply_cols(t, &[(*mu, Q::one())].into_iter().collect());
    let mut rest = h.len();
    let k = tree.composition.len();
    for (j, &r) in tree.composition.iter().enumerate() {
        let mut next = BTreeMap::new();
        let op = m.b(r + 1);
        for (nu, c) in &strand {
            let mut word: TWord = h[rest - r..rest].iter().copied().collect();
            word.push(*nu);
            if let Some(vals) = op.and_then(|b| b.get(&word)) {
                svec_add(&mut next, vals, &-c.clone());
            }
        }
        rest -= r;
        strand = apply_cols(if j + 1 == k { t } else { s }, &next);
        strand.retain(|_, c| !c.is_zero());
        if strand.is_empty() {
            break;
        }
    }
    Ok(strand)
}

#[derive(Clone, Debug)]
pub struct ModuleTransfer {
    /// The minimal module on `tM`, by series expansion.
    pub minimal: AInfModule,
    /// `-π (Σ_Γ m_Γ) (id ⊗ ι)`, arity by arity; equal to `minimal.ops`
    /// from arity 2 on.
    pub tree_sum: Vec<MultiMap>,
    pub retract: Retract,
    /// `b̌^M_1 = b^M_1`, `b̌^M_n = ι b^{tM}_n (id ⊗ π)`.
    pub split: AInfModule,
    /// `f_n = pr_M (1 + T - αT)β`, a module morphism `(M, b^M) → (M, b̌^M)`.
    pub split_iso: ModuleMorphism,
    pub reports: Vec<IdentityReport>,
}

/// Transfers a module along a Hodge decomposition of `(M, b^M_1)`.
///
/// Reports `TREE-SERIES-n`, `MODULE-STASHEFF-n` (on `tM`),
/// `SPLIT-STASHEFF-n` and `SPLIT-ISO-n`. Fails with
/// [`Error::TransferMismatch`] when the tree sum and the series disagree.
pub fn transfer_module(m: &AInfModule, hd: &HodgeData, cap: usize) -> Result<ModuleTransfer> {
    let mut m = m.clone();
    m.ops.resize(cap, MultiMap::new());
    m.cap = cap;
    m.algebra = m.algebra.truncate(cap);
    let m = &m;
    let r = retract(m.space(), &hd.t);
    let (tb, iota, pi) = retract_columns(&r, &m.basis);
    let mh = ModuleHodge {
        m,
        s: m.basis.columns_of(&hd.s),
        t: m.basis.columns_of(&hd.t),
    };
    let mut minimal = AInfModule::zero(&m.algebra, tb.clone(), cap);
    let mut tree_sum = vec![MultiMap::new(); cap];
    let mut reports = Vec::new();
    for n in 1..=cap {
        let trees = if n >= 2 {
            enumerate_admissible_trees(n)?
        } else {
            Vec::new()
        };
        let mut mismatch = None;
        for h in m.algebra.basis.words(n - 1) {
            for nu in tb.indices() {
                let mut u = h.clone();
                u.push(nu);
                if !tb.has_sdeg(m.algebra.basis.word_sdeg(&h) + tb.sdeg(nu) + 1) {
                    continue;
                }
                let v = iota_last(&h, &iota[nu as usize]);
                let series = if n == 1 {
                    m.pr_apply(&v)
                } else {
                    single_letters(&m.x(&mh.alpha(&v)))
                };
                let series = svec_from_map(apply_cols(&pi, &series));
                if n >= 2 {
                    let mut acc = BTreeMap::new();
                    for tree in &trees {
                        for (mu, c) in &iota[nu as usize] {
                            let mut word = h.clone();
                            word.push(*mu);
                            for (o, x) in tree_apply_cols(tree, m, &mh.s, &mh.t, &word)? {
                                *acc.entry(o).or_insert_with(Q::zero) -= c * x;
                            }
                        }
                    }
                    let trees_val = svec_from_map(apply_cols(&pi, &acc));
                    if trees_val != series && mismatch.is_none() {
                        mismatch = Some(format!(
                            "{}: trees {:?} vs series {:?}",
                            minimal.format_word(&u),
                            fmt_svec(&tb, &trees_val),
                            fmt_svec(&tb, &series)
                        ));
                    }
                    if !trees_val.is_empty() {
                        tree_sum[n - 1].set(u.clone(), trees_val);
                    }
                }
                if !series.is_empty() {
                    minimal.ops[n - 1].set(u, series);
                }
            }
        }
        if let Some(detail) = mismatch {
            return Err(Error::TransferMismatch { arity: n, detail });
        }
        if n >= 2 {
            reports.push(IdentityReport::new(format!("TREE-SERIES-{n}"), cap, None));
        }
    }
    reports.extend(module_check(&minimal));

    let mut split = AInfModule::zero(&m.algebra, m.basis.clone(), cap);
    let mut comps = vec![MultiMap::new(); cap];
    if cap > 0 {
        split.ops[0] = m.ops[0].clone();
    }
    for n in 1..=cap {
        for w in m.words(n) {
            let sw = m.word_sdeg(&w);
            let (mu, h) = w.split_last().expect("module word");
            if n >= 2 && m.basis.has_sdeg(sw + 1) {
                let mut acc = BTreeMap::new();
                for (nu, c) in &pi[*mu as usize] {
                    let mut u: TWord = h.iter().copied().collect();
                    u.push(*nu);
                    if let Some(val) = minimal.ops[n - 1].get(&u) {
                        svec_add(&mut acc, val, c);
                    }
                }
                let v = svec_from_map(apply_cols(&iota, &acc));
                if !v.is_empty() {
                    split.ops[n - 1].set(w.clone(), v);
                }
            }
            if m.basis.has_sdeg(sw) {
                // g = (1 + T - αT)β
                let bw = mh.beta(&TVec::word(w.clone()));
                let tb_w = mh.t(&bw);
                let mut g = bw.clone();
                g.add_scaled(&tb_w, &Q::one());
                g.add_scaled(&mh.alpha(&tb_w), &-Q::one());
                let v = svec_from_map(single_letters(&g));
                if !v.is_empty() {
                    comps[n - 1].set(w, v);
                }
            }
        }
    }
    let split_iso = ModuleMorphism {
        source: m.clone(),
        target: split.clone(),
        cap,
        comps,
    };
    reports.extend(module_check_named(&split, "SPLIT-STASHEFF"));
    reports.extend(module_morphism_check(&split_iso, "SPLIT-ISO"));
    Ok(ModuleTransfer {
        minimal,
        tree_sum,
        retract: r,
        split,
        split_iso,
        reports,
    })
}

/// `h ⊗ ι(ν)` as a tensor.
fn iota_last(h: &[Idx], iota_col: &SVec) -> TVec {
    let mut v = TVec::zero();
    for (mu, c) in iota_col {
        let mut w: TWord = h.iter().copied().collect();
        w.push(*mu);
        v.add_term(w, c.clone());
    }
    v
}

fn fmt_svec(b: &Basis, v: &SVec) -> String {
    v.iter()
        .map(|(i, c)| format!("{} {}", format_q(c), b.label(*i)))
        .collect::<Vec<_>>()
        .join(" + ")
}
