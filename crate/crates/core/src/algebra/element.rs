use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::{normal_form_word, Letter, Word};
use crate::scalar::{Scalar, Q};
use crate::Error;

/// A finite linear combination of normal-form words.
///
/// Terms are kept in the word order with no zero coefficients, so two
/// elements are equal iff their term maps are equal.
#[derive(Clone, PartialEq)]
pub struct Element<K: Scalar = Q> {
    terms: BTreeMap<Word, K>,
}

pub type AlgebraElement = Element<Q>;

impl<K: Scalar> Default for Element<K> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Scalar> Element<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(K::one(), w)
    }

    pub fn term(c: K, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn scalar(c: K) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn s() -> Self {
        Self::from_word(Word::letter(Letter::S))
    }

    pub fn t() -> Self {
        Self::from_word(Word::letter(Letter::T))
    }

    pub fn x() -> Self {
        Self::from_word(Word::letter(Letter::X))
    }

    /// Parses a sum like `"1 - sx + 2/3 sxsx"`. Words that reduce to zero
    /// are dropped.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut out = Self::zero();
        let cleaned = s.replace('-', "+-");
        for raw in cleaned.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let (neg, body) = match raw.strip_prefix('-') {
                Some(b) => (true, b.trim()),
                None => (false, raw),
            };
            let (coef, word) = match body.split_once(' ') {
                Some((c, w)) => (c.trim(), w.trim()),
                None if body.chars().all(|c| c.is_ascii_digit() || c == '/') => (body, "1"),
                None => ("1", body),
            };
            let c = crate::scalar::parse_q(coef)?;
            let mut c = K::from_i64(0) + rational_to_scalar::<K>(&c)?;
            if neg {
                c = -c;
            }
            let letters = word
                .chars()
                .filter(|&ch| ch != '1')
                .map(|ch| {
                    Letter::from_char(ch).ok_or_else(|| Error::Parse(format!("bad letter {ch:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            out = out + Self::letters(&letters).scale(&c);
        }
        Ok(out)
    }

    /// `normal_form`: the image of a raw letter sequence, zero or one word.
    pub fn letters(letters: &[Letter]) -> Self {
        match normal_form_word(letters) {
            Some(w) => Self::from_word(w),
            None => Self::zero(),
        }
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let nv = v.clone() + c;
                if nv.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    /// Common degree of all terms; `None` if inhomogeneous or zero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Word::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear extension of a per-word map.
    pub fn map_words(&self, f: impl Fn(&Word) -> Self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (w2, c2) in f(w).terms {
                out.add_term(w2, c2 * c.clone());
            }
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_, _| true)
    }

    /// Product keeping only pairs of words accepted by `keep`.
    pub(crate) fn mul_filtered(&self, other: &Self, keep: impl Fn(&Word, &Word) -> bool) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if !keep(a, b) {
                    continue;
                }
                if let Some(w) = a.concat(b) {
                    out.add_term(w, ca.clone() * cb.clone());
                }
            }
        }
        out
    }

    /// The dg differential: `d(s) = 1 - t`, `d(t) = 0`, `d(x) = -x^2`,
    /// extended as a degree +1 derivation with the Koszul sign of the prefix.
    pub fn differential(&self) -> Self {
        self.map_words(word_differential)
    }

    /// Counit: `1` on words made of `t` only, `0` otherwise.
    pub fn counit(&self) -> K {
        let mut acc = K::zero();
        for (w, c) in &self.terms {
            if w.letters().iter().all(|&l| l == Letter::T) {
                acc = acc + c.clone();
            }
        }
        acc
    }

    /// The anti-automorphism fixing `s, t` and sending `x` to `-x`, with
    /// `rho(ab) = (-1)^{|a||b|} rho(b) rho(a)`.
    pub fn rho(&self) -> Self {
        self.map_words(word_rho)
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba`, on homogeneous
    /// components.
    pub fn graded_commutator(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca.clone() * cb.clone();
                if let Some(w) = a.concat(b) {
                    out.add_term(w, c.clone());
                }
                if let Some(w) = b.concat(a) {
                    let sign_flip = a.is_odd() && b.is_odd();
                    out.add_term(w, if sign_flip { c } else { -c });
                }
            }
        }
        out
    }

    /// Maps coefficients into another field.
    pub fn map_coefficients<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Element<L> {
        let mut out = Element::<L>::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn leading_term(&self) -> Option<(&Word, &K)> {
        self.terms.iter().next()
    }
}

pub(crate) fn rational_to_scalar<K: Scalar>(c: &Q) -> Result<K, Error> {
    use num_traits::ToPrimitive;
    let n = c
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Parse(format!("coefficient {c} too large")))?;
    let d = c
        .denom()
        .to_i64()
        .ok_or_else(|| Error::Parse(format!("coefficient {c} too large")))?;
    let inv = K::from_i64(d)
        .inverse()
        .ok_or_else(|| Error::Parse(format!("denominator of {c} vanishes")))?;
    Ok(K::from_i64(n) * inv)
}

fn letter_differential<K: Scalar>(l: Letter) -> Element<K> {
    match l {
        Letter::S => Element::one() - Element::t(),
        Letter::T => Element::zero(),
        Letter::X => -Element::letters(&[Letter::X, Letter::X]),
    }
}

pub(crate) fn word_differential<K: Scalar>(w: &Word) -> Element<K> {
    let mut out = Element::zero();
    let letters = w.letters();
    let mut prefix_odd = false;
    for (i, &l) in letters.iter().enumerate() {
        let dl = letter_differential::<K>(l);
        if !dl.is_zero() {
            let left = Element::letters(&letters[..i]);
            let right = Element::letters(&letters[i + 1..]);
            let term = left.mul_ref(&dl).mul_ref(&right);
            out = if prefix_odd { out - term } else { out + term };
        }
        prefix_odd ^= l.is_odd();
    }
    out
}

pub(crate) fn word_rho<K: Scalar>(w: &Word) -> Element<K> {
    let odd = w.odd_count();
    // Reversing k odd letters costs (-1)^{k(k-1)/2}; each x contributes -1.
    let flips = odd * odd.saturating_sub(1) / 2 + w.x_count();
    let c = if flips.is_multiple_of(2) {
        K::one()
    } else {
        -K::one()
    };
    Element::term(c, w.reversed())
}

impl<K: Scalar> Add for Element<K> {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        for (w, c) in other.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<K: Scalar> Sub for Element<K> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<K: Scalar> Neg for Element<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Element {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<K: Scalar> Mul for Element<K> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl<K: Scalar> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() && !w.is_empty() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}){w}")?;
            }
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::F32003;

    fn e(s: &str) -> AlgebraElement {
        AlgebraElement::parse(s).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(e("t") * e("t"), e("t"));
        assert!((e("sx") * e("st")).is_zero());
        assert_eq!((e("1") - e("sx")) * (e("1") + e("sx")), e("1 - sxsx"));
    }

    #[test]
    fn differential_examples() {
        assert_eq!(e("s").differential(), e("1 - t"));
        assert_eq!(e("x").differential(), e("-xx"));
        let dsx = e("sx").differential();
        assert_eq!(dsx, e("x - tx + sxx"));
        assert!(dsx.differential().is_zero());
    }

    #[test]
    fn counit_examples() {
        assert_eq!(e("t").counit(), crate::scalar::q(1));
        assert_eq!(e("sxt").counit(), crate::scalar::q(0));
        assert_eq!(e("1").counit(), crate::scalar::q(1));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(e("x").rho(), e("-x"));
        assert_eq!(e("t").rho(), e("t"));
        assert_eq!(e("sx").rho(), e("xs"));
        assert_eq!(e("sx").rho().rho(), e("sx"));
    }

    #[test]
    fn degree_and_homogeneity() {
        assert_eq!(e("sx + txs").degree(), Some(0));
        assert_eq!(e("s + x").degree(), None);
        assert_eq!(e("0").degree(), None);
    }

    #[test]
    fn prime_field_mode() {
        let a: Element<F32003> = Element::parse("2 sx - 1/2 t").unwrap();
        let b = a.differential();
        assert!(b.differential().is_zero());
    }
}
