//! The representation `Â → End(V)` determined by `(d, s, t, x)`.

use std::collections::HashMap;

use super::graded::GradedMap;
use super::hodge::{ChainComplex, HodgeData};
use super::perturb::Perturbation;
use crate::algebra::{AlgebraElement, Letter, SeriesConstant, TruncatedSeries, Word};
use crate::scalar::q;
use crate::{Error, Result};

/// Evaluates symbolic elements as operators on one perturbed complex.
pub struct Representation<'a> {
    pub complex: &'a ChainComplex,
    pub hd: &'a HodgeData,
    pub p: &'a Perturbation,
    cache: HashMap<Word, GradedMap>,
}

impl<'a> Representation<'a> {
    pub fn new(complex: &'a ChainComplex, hd: &'a HodgeData, p: &'a Perturbation) -> Self {
        Representation {
            complex,
            hd,
            p,
            cache: HashMap::new(),
        }
    }

    fn letter(&self, l: Letter) -> &GradedMap {
        match l {
            Letter::S => &self.hd.s,
            Letter::T => &self.hd.t,
            Letter::X => &self.p.x,
        }
    }

    fn identity(&self) -> GradedMap {
        GradedMap::identity(&self.complex.space)
    }

    /// A word `l_1 ⋯ l_k` acts as the composite `l_1 ∘ ⋯ ∘ l_k`.
    pub fn word(&mut self, w: &Word) -> GradedMap {
        if let Some(m) = self.cache.get(w) {
            return m.clone();
        }
        let m = match w.letters().split_first() {
            None => self.identity(),
            Some((&first, rest)) => {
                let tail = crate::algebra::normal_form_word(rest)
                    .expect("suffix of a normal word is normal");
                let tail_map = self.word(&tail);
                self.letter(first).compose(&tail_map)
            }
        };
        self.cache.insert(w.clone(), m.clone());
        m
    }

    /// Image of a homogeneous element; the zero element maps to the zero
    /// operator of shift 0.
    pub fn element(&mut self, e: &AlgebraElement) -> Result<GradedMap> {
        if e.is_zero() {
            return Ok(GradedMap::zero(&self.complex.space, 0));
        }
        e.degree().ok_or(Error::Inhomogeneous)?;
        let mut acc: Option<GradedMap> = None;
        for (w, c) in e.terms() {
            let term = self.word(w).scale(c);
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        Ok(acc.expect("nonzero element has a term"))
    }

    /// Closed form of a named constant, using the cached `α`, `β`.
    pub fn constant(&self, name: SeriesConstant) -> GradedMap {
        let (s, t, x) = (&self.hd.s, &self.hd.t, &self.p.x);
        let (alpha, beta) = (&self.p.alpha, &self.p.beta);
        let one_minus_t_plus_at = &(t.scale(&q(-1)).one_plus()) + &(alpha * t);
        let k = &t.one_plus() - &(alpha * t);
        match name {
            SeriesConstant::Alpha => alpha.clone(),
            SeriesConstant::Beta => beta.clone(),
            SeriesConstant::AlphaInv => s.compose(x).one_plus(),
            SeriesConstant::BetaInv => x.compose(s).one_plus(),
            SeriesConstant::Xi => &(&(t * x) * alpha) * t,
            SeriesConstant::K => k,
            SeriesConstant::G => &k * beta,
            SeriesConstant::GInv => &x.compose(s).one_plus() * &one_minus_t_plus_at,
        }
    }

    /// Smallest `ν` with `(sx)^ν = (xs)^ν = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let sx = self.hd.s.compose(&self.p.x);
        let xs = self.p.x.compose(&self.hd.s);
        let bound = self.complex.space.total_dim() + 1;
        let (mut a, mut b) = (sx.clone(), xs.clone());
        for k in 1..=bound {
            if a.is_zero() && b.is_zero() {
                return Some(k);
            }
            a = a.compose(&sx);
            b = b.compose(&xs);
        }
        None
    }

    /// Smallest cap at which truncation is exact on this complex.
    ///
    /// A word whose maximal `x(sx)^j` runs number `R` has degree at least
    /// `R - 3`, so nonzero words have at most `D + 3` runs of at most `ν`
    /// letters `x` each, where `D` is the degree span.
    pub fn exact_cap(&self) -> Option<usize> {
        let nu = self.nilpotency_index()?;
        Some(nu * (self.complex.space.degree_span() as usize + 3))
    }

    /// Evaluates a truncated series, refusing caps where the discarded tail
    /// could act nontrivially.
    pub fn series(&mut self, e: &TruncatedSeries) -> Result<GradedMap> {
        let need = self.exact_cap().ok_or_else(|| {
            Error::Nilpotency("sx or xs is not nilpotent; use a closed-form constant".into())
        })?;
        if e.cap() < need {
            return Err(Error::Nilpotency(format!(
                "cap {} is below the exact cap {need} for this complex",
                e.cap()
            )));
        }
        self.element(e.element())
    }
}

/// `evaluate_element` for an element of `A`.
pub fn evaluate_element(
    c: &ChainComplex,
    hd: &HodgeData,
    p: &Perturbation,
    e: &AlgebraElement,
) -> Result<GradedMap> {
    Representation::new(c, hd, p).element(e)
}

pub fn evaluate_series(
    c: &ChainComplex,
    hd: &HodgeData,
    p: &Perturbation,
    e: &TruncatedSeries,
) -> Result<GradedMap> {
    Representation::new(c, hd, p).series(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::series_constant;
    use crate::linear::hodge::build_hodge;
    use crate::linear::matrix::Matrix;
    use crate::linear::perturb::{gauge_conjugation, make_perturbation};
    use crate::linear::GradedSpace;
    use crate::scalar::Q;

    fn abc() -> (ChainComplex, HodgeData, Perturbation) {
        let v = GradedSpace::from_labels(
            [(0, vec!["a".into(), "b".into()]), (1, vec!["c".into()])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let d = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1, 0]]))].into_iter().collect(),
        )
        .unwrap();
        let c = ChainComplex::new(v, d).unwrap();
        let hd = build_hodge(&c);
        let x = GradedMap::from_blocks(
            &c.space,
            1,
            [(0, Matrix::from_i64(&[&[1, 1]]))].into_iter().collect(),
        )
        .unwrap();
        let p = make_perturbation(&c, &hd, x).unwrap();
        (c, hd, p)
    }

    /// deg0 {a, b}, deg1 {c, e}; d(a) = c, x(a) = e, x(b) = c, so sx and xs
    /// are nilpotent.
    fn nilpotent() -> (ChainComplex, HodgeData, Perturbation) {
        let v = GradedSpace::from_labels(
            [
                (0, vec!["a".into(), "b".into()]),
                (1, vec!["c".into(), "e".into()]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let d = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1, 0], &[0, 0]]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let c = ChainComplex::new(v, d).unwrap();
        let hd = build_hodge(&c);
        let x = GradedMap::from_blocks(
            &c.space,
            1,
            [(0, Matrix::from_i64(&[&[0, 1], &[1, 0]]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let p = make_perturbation(&c, &hd, x).unwrap();
        (c, hd, p)
    }

    #[test]
    fn idempotent_t() {
        let (c, hd, p) = abc();
        let tt = AlgebraElement::parse("t").unwrap() * AlgebraElement::parse("t").unwrap();
        assert_eq!(evaluate_element(&c, &hd, &p, &tt).unwrap(), hd.t);
    }

    #[test]
    fn differential_of_s_is_homotopy_relation() {
        let (c, hd, p) = abc();
        let ds = AlgebraElement::s().differential();
        let lhs = evaluate_element(&c, &hd, &p, &ds).unwrap();
        assert_eq!(lhs, &(&c.d * &hd.s) + &(&hd.s * &c.d));
    }

    #[test]
    fn g_series_matches_gauge_element() {
        let (c, hd, p) = nilpotent();
        let mut rep = Representation::new(&c, &hd, &p);
        let cap = rep.exact_cap().unwrap();
        let g = series_constant::<Q>(SeriesConstant::G, cap);
        let (g_v, _) = gauge_conjugation(&c, &hd, &p).unwrap();
        assert_eq!(rep.series(&g).unwrap(), g_v);
        assert_eq!(rep.constant(SeriesConstant::G), g_v);
        assert!(matches!(
            rep.series(&series_constant::<Q>(SeriesConstant::G, 0)),
            Err(Error::Nilpotency(_))
        ));
    }

    #[test]
    fn closed_forms_agree_with_series() {
        let (c, hd, p) = nilpotent();
        let mut rep = Representation::new(&c, &hd, &p);
        let cap = rep.exact_cap().unwrap();
        for name in [
            "alpha",
            "beta",
            "alpha_inv",
            "beta_inv",
            "xi",
            "g",
            "g_inv",
            "k",
        ] {
            let k: SeriesConstant = name.parse().unwrap();
            let series = series_constant::<Q>(k, cap);
            assert_eq!(rep.series(&series).unwrap(), rep.constant(k), "{name}");
        }
    }

    #[test]
    fn non_nilpotent_series_is_refused() {
        let (c, hd, p) = abc();
        let mut rep = Representation::new(&c, &hd, &p);
        assert_eq!(rep.nilpotency_index(), None);
        assert!(matches!(
            rep.series(&series_constant::<Q>(SeriesConstant::G, 8)),
            Err(Error::Nilpotency(_))
        ));
    }

    #[test]
    fn inhomogeneous_is_rejected() {
        let (c, hd, p) = abc();
        let e = AlgebraElement::parse("s + t").unwrap();
        assert_eq!(evaluate_element(&c, &hd, &p, &e), Err(Error::Inhomogeneous));
    }
}
