//! Identities of the localized perturbation algebra, as data.
//!
//! Each entry names an identity and builds one or more `lhs = rhs`
//! equations from a [`Context`] of precomputed constants at a given cap.
//! [`verify_catalog`] evaluates all of them and reports the first
//! discrepancy, ordered by x-count and then by word.

use super::element::Element;
use super::series::{
    apply_phi_series, gauge_action, series_constant, SeriesConstant, TruncatedSeries,
    TruncatedTensor,
};
use crate::report::{IdentityReport, Witness};
use crate::scalar::Scalar;

pub enum Side<K: Scalar> {
    Alg(TruncatedSeries<K>),
    Tensor(TruncatedTensor<K>),
}

pub struct Equation<K: Scalar> {
    pub label: String,
    pub lhs: Side<K>,
    pub rhs: Side<K>,
}

impl<K: Scalar> Equation<K> {
    fn alg(label: impl Into<String>, lhs: TruncatedSeries<K>, rhs: TruncatedSeries<K>) -> Self {
        Equation {
            label: label.into(),
            lhs: Side::Alg(lhs),
            rhs: Side::Alg(rhs),
        }
    }

    fn tensor(label: impl Into<String>, lhs: TruncatedTensor<K>, rhs: TruncatedTensor<K>) -> Self {
        Equation {
            label: label.into(),
            lhs: Side::Tensor(lhs),
            rhs: Side::Tensor(rhs),
        }
    }

    /// First nonzero term of `lhs - rhs` by (x-count, word order).
    pub fn discrepancy(&self) -> Option<Witness> {
        match (&self.lhs, &self.rhs) {
            (Side::Alg(l), Side::Alg(r)) => {
                let diff = l.clone() - r.clone();
                diff.element()
                    .terms()
                    .min_by_key(|(w, _)| (w.x_count(), (*w).clone()))
                    .map(|(w, c)| Witness {
                        equation: self.label.clone(),
                        term: w.to_string(),
                        coefficient: c.to_string(),
                        grade: w.x_count() as i64,
                    })
            }
            (Side::Tensor(l), Side::Tensor(r)) => {
                let diff = l.clone() - r.clone();
                diff.element()
                    .terms()
                    .min_by_key(|((a, b), _)| (a.x_count() + b.x_count(), a.clone(), b.clone()))
                    .map(|((a, b), c)| Witness {
                        equation: self.label.clone(),
                        term: format!("{a}⊗{b}"),
                        coefficient: c.to_string(),
                        grade: (a.x_count() + b.x_count()) as i64,
                    })
            }
            _ => Some(Witness {
                equation: self.label.clone(),
                term: "<type mismatch>".into(),
                coefficient: String::new(),
                grade: -1,
            }),
        }
    }
}

/// Constants shared by all catalog entries at one cap.
pub struct Context<K: Scalar> {
    pub cap: usize,
    pub one: TruncatedSeries<K>,
    pub s: TruncatedSeries<K>,
    pub t: TruncatedSeries<K>,
    pub x: TruncatedSeries<K>,
    pub alpha: TruncatedSeries<K>,
    pub beta: TruncatedSeries<K>,
    pub alpha_inv: TruncatedSeries<K>,
    pub beta_inv: TruncatedSeries<K>,
    pub xi: TruncatedSeries<K>,
    pub g: TruncatedSeries<K>,
    pub g_inv: TruncatedSeries<K>,
}

impl<K: Scalar> Context<K> {
    pub fn new(cap: usize) -> Self {
        let c = |n| series_constant::<K>(n, cap);
        Context {
            cap,
            one: TruncatedSeries::one(cap),
            s: TruncatedSeries::new(Element::s(), cap),
            t: TruncatedSeries::new(Element::t(), cap),
            x: TruncatedSeries::new(Element::x(), cap),
            alpha: c(SeriesConstant::Alpha),
            beta: c(SeriesConstant::Beta),
            alpha_inv: c(SeriesConstant::AlphaInv),
            beta_inv: c(SeriesConstant::BetaInv),
            xi: c(SeriesConstant::Xi),
            g: c(SeriesConstant::G),
            g_inv: c(SeriesConstant::GInv),
        }
    }

    fn series(&self, e: Element<K>) -> TruncatedSeries<K> {
        TruncatedSeries::new(e, self.cap)
    }

    fn phi(&self, a: &TruncatedSeries<K>) -> TruncatedSeries<K> {
        apply_phi_series(a, self.cap)
    }

    fn tensor(&self, a: &TruncatedSeries<K>, b: &TruncatedSeries<K>) -> TruncatedTensor<K> {
        TruncatedTensor::tensor(a, b)
    }
}

pub struct CatalogEntry<K: Scalar> {
    pub id: &'static str,
    pub build: fn(&Context<K>) -> Vec<Equation<K>>,
}

fn easy<K: Scalar>(c: &Context<K>) -> [Equation<K>; 7] {
    let (a, b, s, t, x) = (&c.alpha, &c.beta, &c.s, &c.t, &c.x);
    [
        Equation::alg("αs = sβ", a * s, s * b),
        Equation::alg("xα = βx", x * a, b * x),
        Equation::alg("sα = s", s * a, s.clone()),
        Equation::alg("βs = s", b * s, s.clone()),
        Equation::alg("tα = t", t * a, t.clone()),
        Equation::alg("βt = t", b * t, t.clone()),
        Equation::alg(
            "βα = α + β - 1",
            b * a,
            a.clone() + b.clone() - c.one.clone(),
        ),
    ]
}

fn nth_easy<K: Scalar>(c: &Context<K>, n: usize) -> Vec<Equation<K>> {
    easy(c).into_iter().nth(n).into_iter().collect()
}

fn e1<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 0)
}
fn e2<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 1)
}
fn e3<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 2)
}
fn e4<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 3)
}
fn e5<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 4)
}
fn e6<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 5)
}
fn e7<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    nth_easy(c, 6)
}

fn d1<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let rhs = &(&(&(&c.alpha * &c.t) - &c.one) * &c.x) * &c.alpha;
    vec![Equation::alg(
        "d(α) = (αt - 1)xα",
        c.alpha.differential(),
        rhs,
    )]
}

fn d2<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let rhs = &(&c.beta * &c.x) * &(&c.one - &(&c.t * &c.beta));
    vec![Equation::alg(
        "d(β) = βx(1 - tβ)",
        c.beta.differential(),
        rhs,
    )]
}

fn berg<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let rhs = &c.one - &(&(&c.x * &c.alpha) * &c.s);
    vec![Equation::alg(
        "(1+xs)^-1 = 1 - x(1+sx)^-1 s",
        c.beta.clone(),
        rhs,
    )]
}

fn phi_rel<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let zero = TruncatedSeries::zero(c.cap);
    let ps = c.phi(&c.s);
    let pt = c.phi(&c.t);
    let phi_alpha_inv = c.phi(&c.alpha_inv);
    let phi_beta_inv = c.phi(&c.beta_inv);
    vec![
        Equation::alg("φ(s)φ(s) = 0", &ps * &ps, zero.clone()),
        Equation::alg("φ(t)φ(t) = φ(t)", &pt * &pt, pt.clone()),
        Equation::alg("φ(s)φ(t) = 0", &ps * &pt, zero.clone()),
        Equation::alg("φ(t)φ(s) = 0", &pt * &ps, zero),
        Equation::alg(
            "α⁻¹φ(α⁻¹) = 1",
            &c.alpha_inv * &phi_alpha_inv,
            c.one.clone(),
        ),
        Equation::alg("φ(β⁻¹)β⁻¹ = 1", &phi_beta_inv * &c.beta_inv, c.one.clone()),
    ]
}

fn phi_inv<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    [
        ("φφ(s) = s", &c.s),
        ("φφ(t) = t", &c.t),
        ("φφ(x) = x", &c.x),
    ]
    .into_iter()
    .map(|(label, g)| Equation::alg(label, c.phi(&c.phi(g)), g.clone()))
    .collect()
}

fn phi_comod<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let at = &c.alpha * &c.t;
    let tb = &c.t * &c.beta;
    let atb = &at * &c.beta;
    let as_ = &c.alpha * &c.s;
    vec![
        Equation::tensor("Δ(αt) = αt⊗αt", at.coproduct(), c.tensor(&at, &at)),
        Equation::tensor("Δ(tβ) = tβ⊗tβ", tb.coproduct(), c.tensor(&tb, &tb)),
        Equation::tensor("Δ(αtβ) = αtβ⊗αtβ", atb.coproduct(), c.tensor(&atb, &atb)),
        Equation::tensor(
            "Δ(αs) = αs⊗1 + αtβ⊗αs",
            as_.coproduct(),
            c.tensor(&as_, &c.one) + c.tensor(&atb, &as_),
        ),
    ]
}

fn hpl<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    [
        ("φd(s) = d^xφ(s)", &c.s),
        ("φd(t) = d^xφ(t)", &c.t),
        ("φd(x) = d^xφ(x)", &c.x),
    ]
    .into_iter()
    .map(|(label, g)| {
        Equation::alg(
            label,
            c.phi(&g.differential()),
            c.phi(g).twisted_differential(),
        )
    })
    .collect()
}

fn xi_mc<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let alt = &(&(&c.t * &c.beta) * &c.x) * &c.t;
    vec![
        Equation::alg(
            "d(ξ) + ξ² = 0",
            c.xi.differential() + &c.xi * &c.xi,
            TruncatedSeries::zero(c.cap),
        ),
        Equation::alg("txαt = tβxt", c.xi.clone(), alt),
    ]
}

fn xi_prim<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    vec![Equation::tensor(
        "Δ(ξ) = ξ⊗t + t⊗ξ",
        c.xi.coproduct(),
        c.tensor(&c.xi, &c.t) + c.tensor(&c.t, &c.xi),
    )]
}

fn g1<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    vec![
        Equation::alg("g·g⁻¹ = 1", &c.g * &c.g_inv, c.one.clone()),
        Equation::alg("g⁻¹·g = 1", &c.g_inv * &c.g, c.one.clone()),
        Equation::alg("g⁻¹ = φ(g)", c.g_inv.clone(), c.phi(&c.g)),
    ]
}

fn g2<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let atb = &(&c.alpha * &c.t) * &c.beta;
    vec![Equation::alg(
        "(αtβ)g(αtβ) = αtβ",
        &(&atb * &c.g) * &atb,
        atb,
    )]
}

fn g3<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    vec![Equation::alg("tg = tβ", &c.t * &c.g, &c.t * &c.beta)]
}

fn g4<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    vec![Equation::alg("g⁻¹t = αt", &c.g_inv * &c.t, &c.alpha * &c.t)]
}

fn gauge<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let lhs = gauge_action(&c.g, &c.x, c.cap).expect("g has unit constant term");
    vec![Equation::alg("g·x = ξ", lhs, c.xi.clone())]
}

fn rho_g<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    let h = c.g.rho().invert().expect("ρ(g) has unit constant term");
    let closed = &(&(&c.one - &c.t) + &(&c.s * &c.x)) + &(&c.t * &c.beta);
    let lhs = gauge_action(&h, &c.x, c.cap).expect("invertible");
    vec![
        Equation::alg("ρ(g)⁻¹·x = ξ", lhs, c.xi.clone()),
        Equation::alg("ρ(g)⁻¹ = 1 - t + sx + tβ", h, closed),
    ]
}

/// Sample elements for the transfer isomorphism.
pub const ISO_SAMPLES: [&str; 6] = ["1", "s", "t", "x", "xsx", "sxt"];

fn iso<K: Scalar>(c: &Context<K>) -> Vec<Equation<K>> {
    ISO_SAMPLES
        .iter()
        .map(|name| {
            let a = c.series(Element::parse(name).expect("sample parses"));
            let tat = &(&c.t * &a) * &c.t;
            let lhs = (&(&c.alpha * &tat) * &c.beta).twisted_differential();
            // d^ξ(a) = d(a) + ξa - (-1)^{|a|} aξ
            let comm = c.series(c.xi.element().graded_commutator(a.element()));
            let inner = &(&c.t * &(a.differential() + comm)) * &c.t;
            let rhs = &(&c.alpha * &inner) * &c.beta;
            Equation::alg(
                format!("d^x(α(tat)β) = α(t d^ξ(a) t)β, a = {name}"),
                lhs,
                rhs,
            )
        })
        .collect()
}

pub fn catalog<K: Scalar>() -> Vec<CatalogEntry<K>> {
    vec![
        CatalogEntry {
            id: "E1",
            build: e1::<K>,
        },
        CatalogEntry {
            id: "E2",
            build: e2::<K>,
        },
        CatalogEntry {
            id: "E3",
            build: e3::<K>,
        },
        CatalogEntry {
            id: "E4",
            build: e4::<K>,
        },
        CatalogEntry {
            id: "E5",
            build: e5::<K>,
        },
        CatalogEntry {
            id: "E6",
            build: e6::<K>,
        },
        CatalogEntry {
            id: "E7",
            build: e7::<K>,
        },
        CatalogEntry {
            id: "D1",
            build: d1::<K>,
        },
        CatalogEntry {
            id: "D2",
            build: d2::<K>,
        },
        CatalogEntry {
            id: "BERG",
            build: berg::<K>,
        },
        CatalogEntry {
            id: "PHI-REL",
            build: phi_rel::<K>,
        },
        CatalogEntry {
            id: "PHI-INV",
            build: phi_inv::<K>,
        },
        CatalogEntry {
            id: "PHI-COMOD",
            build: phi_comod::<K>,
        },
        CatalogEntry {
            id: "HPL",
            build: hpl::<K>,
        },
        CatalogEntry {
            id: "XI-MC",
            build: xi_mc::<K>,
        },
        CatalogEntry {
            id: "XI-PRIM",
            build: xi_prim::<K>,
        },
        CatalogEntry {
            id: "G1",
            build: g1::<K>,
        },
        CatalogEntry {
            id: "G2",
            build: g2::<K>,
        },
        CatalogEntry {
            id: "G3",
            build: g3::<K>,
        },
        CatalogEntry {
            id: "G4",
            build: g4::<K>,
        },
        CatalogEntry {
            id: "GAUGE",
            build: gauge::<K>,
        },
        CatalogEntry {
            id: "RHO-G",
            build: rho_g::<K>,
        },
        CatalogEntry {
            id: "ISO",
            build: iso::<K>,
        },
    ]
}

pub fn verify_entry<K: Scalar>(entry: &CatalogEntry<K>, ctx: &Context<K>) -> IdentityReport {
    let witness = (entry.build)(ctx).iter().find_map(Equation::discrepancy);
    IdentityReport::new(entry.id, ctx.cap, witness)
}

/// Evaluates every catalog identity at x-count cap `cap`.
pub fn verify_catalog<K: Scalar>(cap: usize) -> Vec<IdentityReport> {
    let ctx = Context::<K>::new(cap);
    catalog::<K>()
        .iter()
        .map(|e| verify_entry(e, &ctx))
        .collect()
}

/// Verifies one catalog identity, or `None` for an unknown id.
pub fn verify_identity<K: Scalar>(id: &str, cap: usize) -> Option<IdentityReport> {
    let ctx = Context::<K>::new(cap);
    catalog::<K>()
        .iter()
        .find(|e| e.id == id)
        .map(|e| verify_entry(e, &ctx))
}

/// A deliberately false identity, used to exercise failure reporting.
pub fn failing_example<K: Scalar>(cap: usize) -> IdentityReport {
    let ctx = Context::<K>::new(cap);
    let eq = Equation::alg("sα = α (false)", &ctx.s * &ctx.alpha, ctx.alpha.clone());
    IdentityReport::new("FALSE-EXAMPLE", cap, eq.discrepancy())
}
