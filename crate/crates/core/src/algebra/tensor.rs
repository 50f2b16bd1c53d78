use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::element::Element;
use super::word::{Letter, Word};
use crate::scalar::{Scalar, Q};

/// Element of `A ⊗ A`, canonical in the (left, right) word order.
#[derive(Clone, PartialEq)]
pub struct TensorSquare<K: Scalar = Q> {
    terms: BTreeMap<(Word, Word), K>,
}

pub type TensorSquareElement = TensorSquare<Q>;

impl<K: Scalar> Default for TensorSquare<K> {
    fn default() -> Self {
        TensorSquare {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Scalar> TensorSquare<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        let mut t = Self::zero();
        t.add_term(Word::empty(), Word::empty(), K::one());
        t
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: K) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let nv = v.clone() + c;
                if nv.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &Element<K>, b: &Element<K>) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                out.add_term(wa.clone(), wb.clone(), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &K)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn filter(&self, keep: impl Fn(&Word, &Word) -> bool) -> Self {
        TensorSquare {
            terms: self
                .terms
                .iter()
                .filter(|((l, r), _)| keep(l, r))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd`, keeping pairs accepted by `keep`
    /// (applied to the product words).
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&Word, &Word) -> bool) -> Self {
        let mut out = Self::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let Some(l) = a.concat(c) else { continue };
                let Some(r) = b.concat(d) else { continue };
                if !keep(&l, &r) {
                    continue;
                }
                let coeff = c1.clone() * c2.clone();
                let coeff = if b.is_odd() && c.is_odd() {
                    -coeff
                } else {
                    coeff
                };
                out.add_term(l, r, coeff);
            }
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_, _| true)
    }

    /// `(ε ⊗ id)`: collapses the left factor through the counit.
    pub fn counit_left(&self) -> Element<K> {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            let e = Element::<K>::from_word(l.clone()).counit();
            out.add_term(r.clone(), e * c.clone());
        }
        out
    }

    pub fn counit_right(&self) -> Element<K> {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            let e = Element::<K>::from_word(r.clone()).counit();
            out.add_term(l.clone(), e * c.clone());
        }
        out
    }

    /// `d ⊗ 1 + 1 ⊗ d` with the Koszul sign on the right factor.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            for (w, dc) in Element::<K>::from_word(l.clone()).differential().terms() {
                out.add_term(w.clone(), r.clone(), dc.clone() * c.clone());
            }
            let sign_flip = l.is_odd();
            for (w, dc) in Element::<K>::from_word(r.clone()).differential().terms() {
                let v = dc.clone() * c.clone();
                out.add_term(l.clone(), w.clone(), if sign_flip { -v } else { v });
            }
        }
        out
    }
}

fn letter_coproduct<K: Scalar>(l: Letter) -> TensorSquare<K> {
    let one = Word::empty();
    let mut out = TensorSquare::zero();
    match l {
        Letter::S => {
            out.add_term(Word::letter(Letter::S), one.clone(), K::one());
            out.add_term(Word::letter(Letter::T), Word::letter(Letter::S), K::one());
        }
        Letter::T => out.add_term(Word::letter(Letter::T), Word::letter(Letter::T), K::one()),
        Letter::X => {
            out.add_term(Word::letter(Letter::X), one.clone(), K::one());
            out.add_term(one, Word::letter(Letter::X), K::one());
        }
    }
    out
}

/// `Δ` on one word, dropping tensor terms rejected by `keep`. The filter is
/// applied to partial products, which is sound whenever `keep` is monotone
/// (e.g. a cap on total x-count, since x-counts only grow).
pub(crate) fn word_coproduct_filtered<K: Scalar>(
    w: &Word,
    keep: &impl Fn(&Word, &Word) -> bool,
) -> TensorSquare<K> {
    let mut acc = TensorSquare::unit();
    for &l in w.letters() {
        acc = acc.mul_filtered(&letter_coproduct(l), keep);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

impl<K: Scalar> Element<K> {
    /// The coproduct `Δ(s) = s⊗1 + t⊗s`, `Δ(t) = t⊗t`, `Δ(x) = x⊗1 + 1⊗x`,
    /// extended multiplicatively.
    pub fn coproduct(&self) -> TensorSquare<K> {
        self.coproduct_filtered(|_, _| true)
    }

    pub(crate) fn coproduct_filtered(
        &self,
        keep: impl Fn(&Word, &Word) -> bool,
    ) -> TensorSquare<K> {
        let mut out = TensorSquare::zero();
        for (w, c) in self.terms() {
            for ((l, r), v) in word_coproduct_filtered::<K>(w, &keep).terms {
                out.add_term(l, r, v * c.clone());
            }
        }
        out
    }
}

impl<K: Scalar> Add for TensorSquare<K> {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        for ((l, r), c) in other.terms {
            self.add_term(l, r, c);
        }
        self
    }
}

impl<K: Scalar> Neg for TensorSquare<K> {
    type Output = Self;
    fn neg(self) -> Self {
        TensorSquare {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Scalar> Sub for TensorSquare<K> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<K: Scalar> fmt::Display for TensorSquare<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{l}⊗{r}")?;
            } else {
                write!(f, "({c}){l}⊗{r}")?;
            }
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for TensorSquare<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;

    fn e(s: &str) -> AlgebraElement {
        AlgebraElement::parse(s).unwrap()
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(e("t").coproduct(), TensorSquare::tensor(&e("t"), &e("t")));
        assert_eq!(e("1").coproduct(), TensorSquare::unit());
        let expected = TensorSquare::tensor(&e("1 + sx"), &e("1"))
            + TensorSquare::tensor(&e("s"), &e("x"))
            - TensorSquare::tensor(&e("tx"), &e("s"))
            + TensorSquare::tensor(&e("t"), &e("sx"));
        assert_eq!(e("1 + sx").coproduct(), expected);
    }

    #[test]
    fn counit_axioms_on_generators() {
        for w in ["s", "t", "x", "sxt", "xsxtx"] {
            let a = e(w);
            let d = a.coproduct();
            assert_eq!(d.counit_left(), a);
            assert_eq!(d.counit_right(), a);
        }
    }
}
