//! x-adically truncated elements of the localized perturbation algebra.
//!
//! The localization is only ever seen through its completion at the ideal
//! generated by `x`: a [`TruncatedSeries`] keeps every term with at most
//! `cap` letters `x`. All operations here never lower the x-count of a term,
//! so truncating a cap-N result to M < N agrees with computing at cap M.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::element::Element;
use super::tensor::TensorSquare;
use super::word::{Letter, Word};
use crate::scalar::{Scalar, Q};
use crate::Error;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<K: Scalar = Q> {
    cap: usize,
    elem: Element<K>,
}

impl<K: Scalar> TruncatedSeries<K> {
    pub fn new(elem: Element<K>, cap: usize) -> Self {
        let elem = elem.filter(|w| w.x_count() <= cap);
        TruncatedSeries { cap, elem }
    }

    pub fn zero(cap: usize) -> Self {
        TruncatedSeries {
            cap,
            elem: Element::zero(),
        }
    }

    pub fn one(cap: usize) -> Self {
        TruncatedSeries {
            cap,
            elem: Element::one(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn element(&self) -> &Element<K> {
        &self.elem
    }

    pub fn into_element(self) -> Element<K> {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    /// The part made of words with exactly `n` letters `x`.
    pub fn component(&self, n: usize) -> Element<K> {
        self.elem.filter(|w| w.x_count() == n)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Self::new(self.elem.clone(), cap.min(self.cap))
    }

    fn same_cap(&self, other: &Self) -> usize {
        self.cap.min(other.cap)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let cap = self.same_cap(other);
        let elem = self
            .elem
            .mul_filtered(&other.elem, |a, b| a.x_count() + b.x_count() <= cap);
        TruncatedSeries { cap, elem }
    }

    pub fn scale(&self, c: &K) -> Self {
        TruncatedSeries {
            cap: self.cap,
            elem: self.elem.scale(c),
        }
    }

    pub fn differential(&self) -> Self {
        Self::new(self.elem.differential(), self.cap)
    }

    pub fn rho(&self) -> Self {
        TruncatedSeries {
            cap: self.cap,
            elem: self.elem.rho(),
        }
    }

    /// `d^x(a) = d(a) + xa - (-1)^{|a|} ax`, word by word.
    pub fn twisted_differential(&self) -> Self {
        let x = Element::<K>::x();
        let cap = self.cap;
        let elem = self.elem.map_words(|w| {
            let a = Element::from_word(w.clone());
            let mut out = super::element::word_differential::<K>(w);
            if w.x_count() < cap {
                out = out + x.mul_ref(&a);
                let ax = a.mul_ref(&x);
                out = if w.is_odd() { out + ax } else { out - ax };
            }
            out
        });
        Self::new(elem, cap)
    }

    pub fn coproduct(&self) -> TruncatedTensor<K> {
        let cap = self.cap;
        let t = self
            .elem
            .coproduct_filtered(|l, r| l.x_count() + r.x_count() <= cap);
        TruncatedTensor { cap, elem: t }
    }

    /// Inverse up to the cap.
    ///
    /// The x-free part must be a unit of `H = span{1, s, t}`; those are
    /// `a + bt + cs` with `a != 0` and `a + b != 0`.
    pub fn invert(&self) -> Result<Self, Error> {
        let u0 = self.component(0);
        let u0_inv = invert_in_h(&u0)?;
        let inv0 = TruncatedSeries {
            cap: self.cap,
            elem: u0_inv,
        };
        let w = TruncatedSeries {
            cap: self.cap,
            elem: self.elem.filter(|w| w.x_count() > 0),
        };
        // u^{-1} = sum_k (-u0^{-1} w)^k u0^{-1}; each power raises the x-count.
        let step = -inv0.mul_ref(&w);
        let mut power = inv0.clone();
        let mut acc = inv0;
        for _ in 0..self.cap {
            power = step.mul_ref(&power);
            if power.is_zero() {
                break;
            }
            acc = acc + power.clone();
        }
        Ok(acc)
    }

    pub fn map_coefficients<L: Scalar>(&self, f: impl Fn(&K) -> L) -> TruncatedSeries<L> {
        TruncatedSeries {
            cap: self.cap,
            elem: self.elem.map_coefficients(f),
        }
    }
}

fn invert_in_h<K: Scalar>(u0: &Element<K>) -> Result<Element<K>, Error> {
    let a = u0.coefficient(&Word::empty());
    let b = u0.coefficient(&Word::letter(Letter::T));
    let c = u0.coefficient(&Word::letter(Letter::S));
    let fail = || Error::NotInvertible(u0.to_string());
    let a_inv = a.inverse().ok_or_else(fail)?;
    let ab_inv = (a.clone() + b.clone()).inverse().ok_or_else(fail)?;
    // (a + bt + cs)(p + qt + rs) = 1 with p = 1/a, q = -b/(a(a+b)), r = -c/a^2.
    let q = -(b * a_inv.clone() * ab_inv);
    let r = -(c * a_inv.clone() * a_inv.clone());
    Ok(Element::scalar(a_inv) + Element::t().scale(&q) + Element::s().scale(&r))
}

impl<K: Scalar> Add for TruncatedSeries<K> {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        let cap = self.same_cap(&other);
        TruncatedSeries::new(self.elem + other.elem, cap)
    }
}

impl<K: Scalar> Sub for TruncatedSeries<K> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        let cap = self.same_cap(&other);
        TruncatedSeries::new(self.elem - other.elem, cap)
    }
}

impl<K: Scalar> Neg for TruncatedSeries<K> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncatedSeries {
            cap: self.cap,
            elem: -self.elem,
        }
    }
}

impl<K: Scalar> Mul for TruncatedSeries<K> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl<'a, K: Scalar> Mul<&'a TruncatedSeries<K>> for &'a TruncatedSeries<K> {
    type Output = TruncatedSeries<K>;
    fn mul(self, other: &'a TruncatedSeries<K>) -> TruncatedSeries<K> {
        self.mul_ref(other)
    }
}

impl<'a, K: Scalar> Add<&'a TruncatedSeries<K>> for &'a TruncatedSeries<K> {
    type Output = TruncatedSeries<K>;
    fn add(self, other: &'a TruncatedSeries<K>) -> TruncatedSeries<K> {
        self.clone() + other.clone()
    }
}

impl<'a, K: Scalar> Sub<&'a TruncatedSeries<K>> for &'a TruncatedSeries<K> {
    type Output = TruncatedSeries<K>;
    fn sub(self, other: &'a TruncatedSeries<K>) -> TruncatedSeries<K> {
        self.clone() - other.clone()
    }
}

impl<K: Scalar> fmt::Display for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.elem, self.cap + 1)
    }
}

impl<K: Scalar> fmt::Debug for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A truncated element of the completed tensor square; the cap bounds the
/// total x-count of each term.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedTensor<K: Scalar = Q> {
    cap: usize,
    elem: TensorSquare<K>,
}

impl<K: Scalar> TruncatedTensor<K> {
    pub fn new(elem: TensorSquare<K>, cap: usize) -> Self {
        let elem = elem.filter(|l, r| l.x_count() + r.x_count() <= cap);
        TruncatedTensor { cap, elem }
    }

    pub fn tensor(a: &TruncatedSeries<K>, b: &TruncatedSeries<K>) -> Self {
        Self::new(TensorSquare::tensor(&a.elem, &b.elem), a.cap.min(b.cap))
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn element(&self) -> &TensorSquare<K> {
        &self.elem
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        TruncatedTensor {
            cap,
            elem: self
                .elem
                .mul_filtered(&other.elem, |l, r| l.x_count() + r.x_count() <= cap),
        }
    }
}

impl<K: Scalar> Add for TruncatedTensor<K> {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        let cap = self.cap.min(other.cap);
        TruncatedTensor::new(self.elem + other.elem, cap)
    }
}

impl<K: Scalar> Sub for TruncatedTensor<K> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        let cap = self.cap.min(other.cap);
        TruncatedTensor::new(self.elem - other.elem, cap)
    }
}

/// Named elements of the localization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesConstant {
    Alpha,
    Beta,
    AlphaInv,
    BetaInv,
    Xi,
    G,
    GInv,
    K,
}

impl SeriesConstant {
    pub const ALL: [SeriesConstant; 8] = [
        SeriesConstant::Alpha,
        SeriesConstant::Beta,
        SeriesConstant::AlphaInv,
        SeriesConstant::BetaInv,
        SeriesConstant::Xi,
        SeriesConstant::G,
        SeriesConstant::GInv,
        SeriesConstant::K,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesConstant::Alpha => "alpha",
            SeriesConstant::Beta => "beta",
            SeriesConstant::AlphaInv => "alpha_inv",
            SeriesConstant::BetaInv => "beta_inv",
            SeriesConstant::Xi => "xi",
            SeriesConstant::G => "g",
            SeriesConstant::GInv => "g_inv",
            SeriesConstant::K => "k",
        }
    }
}

impl std::str::FromStr for SeriesConstant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        SeriesConstant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

fn geometric<K: Scalar>(first: Letter, second: Letter, cap: usize) -> TruncatedSeries<K> {
    // sum_n (-1)^n (ab)^n
    let mut acc = Element::<K>::zero();
    let mut letters = Vec::new();
    for n in 0..=cap {
        let c = if n % 2 == 0 { K::one() } else { -K::one() };
        acc = acc + Element::letters(&letters).scale(&c);
        letters.push(first);
        letters.push(second);
    }
    TruncatedSeries::new(acc, cap)
}

/// `series_constant`: the named element truncated at x-count `cap`.
pub fn series_constant<K: Scalar>(name: SeriesConstant, cap: usize) -> TruncatedSeries<K> {
    let one = TruncatedSeries::<K>::one(cap);
    let t = TruncatedSeries::new(Element::t(), cap);
    let x = TruncatedSeries::new(Element::x(), cap);
    match name {
        SeriesConstant::Alpha => geometric(Letter::S, Letter::X, cap),
        SeriesConstant::Beta => geometric(Letter::X, Letter::S, cap),
        SeriesConstant::AlphaInv => TruncatedSeries::new(
            Element::one() + Element::letters(&[Letter::S, Letter::X]),
            cap,
        ),
        SeriesConstant::BetaInv => TruncatedSeries::new(
            Element::one() + Element::letters(&[Letter::X, Letter::S]),
            cap,
        ),
        SeriesConstant::Xi => {
            let alpha = series_constant(SeriesConstant::Alpha, cap);
            &(&(&t * &x) * &alpha) * &t
        }
        SeriesConstant::K => {
            let alpha = series_constant(SeriesConstant::Alpha, cap);
            one.clone() + t.clone() - &alpha * &t
        }
        SeriesConstant::G => {
            let k = series_constant(SeriesConstant::K, cap);
            &k * &series_constant(SeriesConstant::Beta, cap)
        }
        SeriesConstant::GInv => {
            let alpha = series_constant(SeriesConstant::Alpha, cap);
            let beta_inv = series_constant(SeriesConstant::BetaInv, cap);
            &beta_inv * &(one - t.clone() + &alpha * &t)
        }
    }
}

/// The involution `φ(s) = αs`, `φ(t) = αtβ`, `φ(x) = -x`, extended
/// multiplicatively and truncated at `cap`.
pub fn apply_phi<K: Scalar>(a: &Element<K>, cap: usize) -> TruncatedSeries<K> {
    let alpha = series_constant::<K>(SeriesConstant::Alpha, cap);
    let beta = series_constant::<K>(SeriesConstant::Beta, cap);
    let s = TruncatedSeries::new(Element::s(), cap);
    let t = TruncatedSeries::new(Element::t(), cap);
    let phi_s = &alpha * &s;
    let phi_t = &(&alpha * &t) * &beta;
    let phi_x = TruncatedSeries::new(-Element::<K>::x(), cap);
    let mut out = TruncatedSeries::zero(cap);
    for (w, c) in a.terms() {
        if w.x_count() > cap {
            continue;
        }
        let mut img = TruncatedSeries::one(cap);
        for &l in w.letters() {
            let g = match l {
                Letter::S => &phi_s,
                Letter::T => &phi_t,
                Letter::X => &phi_x,
            };
            img = img.mul_ref(g);
            if img.is_zero() {
                break;
            }
        }
        out = out + img.scale(c);
    }
    out
}

pub fn apply_phi_series<K: Scalar>(a: &TruncatedSeries<K>, cap: usize) -> TruncatedSeries<K> {
    apply_phi(a.element(), cap.min(a.cap()))
}

/// The gauge action `γ·x = γxγ⁻¹ - d(γ)γ⁻¹`.
pub fn gauge_action<K: Scalar>(
    gamma: &TruncatedSeries<K>,
    x: &TruncatedSeries<K>,
    cap: usize,
) -> Result<TruncatedSeries<K>, Error> {
    let gamma = gamma.truncate(cap);
    let x = x.truncate(cap);
    let inv = gamma.invert()?;
    let conj = &(&gamma * &x) * &inv;
    let drift = &gamma.differential() * &inv;
    Ok(conj - drift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;

    fn e(s: &str) -> AlgebraElement {
        AlgebraElement::parse(s).unwrap()
    }

    fn c(name: SeriesConstant, cap: usize) -> TruncatedSeries {
        series_constant(name, cap)
    }

    #[test]
    fn constant_examples() {
        assert_eq!(
            c(SeriesConstant::Alpha, 2).into_element(),
            e("1 - sx + sxsx")
        );
        assert!(c(SeriesConstant::Xi, 0).is_zero());
        assert_eq!(c(SeriesConstant::Xi, 1).into_element(), e("txt"));
        assert_eq!(c(SeriesConstant::G, 1).into_element(), e("1 - xs + sxt"));
        assert!("delta".parse::<SeriesConstant>().is_err());
    }

    #[test]
    fn inversion_examples() {
        let u = TruncatedSeries::new(e("1 + sx"), 5);
        assert_eq!(u.invert().unwrap(), c(SeriesConstant::Alpha, 5));
        assert_eq!(
            TruncatedSeries::<Q>::one(3).invert().unwrap(),
            TruncatedSeries::one(3)
        );
        assert_eq!(
            c(SeriesConstant::G, 4).invert().unwrap(),
            c(SeriesConstant::GInv, 4)
        );
        let bad = TruncatedSeries::new(e("1 - t + sx"), 3);
        assert!(matches!(bad.invert(), Err(Error::NotInvertible(_))));
        let h_unit = TruncatedSeries::new(e("2 + 3 t + 5 s"), 0);
        let inv = h_unit.invert().unwrap();
        assert_eq!((&h_unit * &inv).into_element(), e("1"));
        assert_eq!((&inv * &h_unit).into_element(), e("1"));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(apply_phi(&e("x"), 3).into_element(), e("-x"));
        assert_eq!(apply_phi(&e("t"), 1).into_element(), e("t - sxt - txs"));
        let phi_s = apply_phi(&e("s"), 4);
        assert_eq!(apply_phi_series(&phi_s, 4).into_element(), e("s"));
    }

    #[test]
    fn twisted_differential_examples() {
        let one = TruncatedSeries::new(e("1"), 3);
        assert!(one.twisted_differential().is_zero());
        let t = TruncatedSeries::new(e("t"), 3);
        assert_eq!(t.twisted_differential().into_element(), e("xt - tx"));
        let phi_s = apply_phi(&e("s"), 3);
        let phi_ds = apply_phi(&e("1 - t"), 3);
        assert_eq!(phi_s.twisted_differential(), phi_ds);
    }

    #[test]
    fn gauge_examples() {
        let x = TruncatedSeries::new(e("x"), 6);
        assert_eq!(gauge_action(&TruncatedSeries::one(6), &x, 6).unwrap(), x);
        let g = c(SeriesConstant::G, 6);
        assert_eq!(gauge_action(&g, &x, 6).unwrap(), c(SeriesConstant::Xi, 6));
        let beta = c(SeriesConstant::Beta, 6);
        let bxt = &(&beta * &x) * &TruncatedSeries::new(e("t"), 6);
        assert_eq!(gauge_action(&beta, &x, 6).unwrap(), bxt);
    }
}
