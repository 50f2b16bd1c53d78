//! Randomized structural laws of the perturbation algebra.

use std::collections::BTreeMap;

use proptest::prelude::*;

use super::series::{apply_phi, series_constant, SeriesConstant, TruncatedSeries};
use super::word::{Letter, Word};
use super::{verify_catalog, AlgebraElement, Element};
use crate::scalar::{q, Q};

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::S), Just(Letter::T), Just(Letter::X)]
}

fn word_letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..6)
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((-3i64..=3, word_letters()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Element::zero(), |acc, (c, w)| {
            acc + Element::letters(&w).scale(&q(c))
        })
    })
}

type Triple = BTreeMap<(Word, Word, Word), Q>;

fn add(t: &mut Triple, k: (Word, Word, Word), c: Q) {
    let e = t.entry(k).or_default();
    *e += c;
}

fn left_coassoc(a: &AlgebraElement) -> Triple {
    let mut out = Triple::new();
    for ((l, r), c) in a.coproduct().terms() {
        for ((ll, lr), c2) in Element::<Q>::from_word(l.clone()).coproduct().terms() {
            add(&mut out, (ll.clone(), lr.clone(), r.clone()), c * c2);
        }
    }
    out.retain(|_, c| *c != Q::default());
    out
}

fn right_coassoc(a: &AlgebraElement) -> Triple {
    let mut out = Triple::new();
    for ((l, r), c) in a.coproduct().terms() {
        for ((rl, rr), c2) in Element::<Q>::from_word(r.clone()).coproduct().terms() {
            add(&mut out, (l.clone(), rl.clone(), rr.clone()), c * c2);
        }
    }
    out.retain(|_, c| *c != Q::default());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn differential_squares_to_zero(a in element()) {
        prop_assert!(a.differential().differential().is_zero());
    }

    #[test]
    fn differential_is_a_derivation(a in word_letters(), b in element()) {
        let a = Element::letters(&a);
        let sign = if a.degree().is_some_and(|d| d % 2 != 0) { -q(1) } else { q(1) };
        let lhs = (a.clone() * b.clone()).differential();
        let rhs = a.differential() * b.clone() + (a * b.differential()).scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_a_chain_map(a in element()) {
        prop_assert!(a.differential().coproduct() == a.coproduct().differential());
    }

    #[test]
    fn coproduct_is_multiplicative(a in element(), b in element()) {
        prop_assert!((a.clone() * b.clone()).coproduct() == a.coproduct().mul_ref(&b.coproduct()));
    }

    #[test]
    fn coassociative_and_counital(a in element()) {
        prop_assert_eq!(left_coassoc(&a), right_coassoc(&a));
        let d = a.coproduct();
        prop_assert_eq!(d.counit_left(), a.clone());
        prop_assert_eq!(d.counit_right(), a);
    }

    #[test]
    fn rho_is_an_involutive_antihomomorphism(a in word_letters(), b in word_letters()) {
        let (a, b) = (Element::<Q>::letters(&a), Element::<Q>::letters(&b));
        prop_assert_eq!(a.rho().rho(), a.clone());
        let odd = |e: &AlgebraElement| e.degree().is_some_and(|d| d % 2 != 0);
        let sign = if odd(&a) && odd(&b) { -q(1) } else { q(1) };
        prop_assert_eq!((a.clone() * b.clone()).rho(), (b.rho() * a.rho()).scale(&sign));
        prop_assert_eq!(a.differential().rho(), a.rho().differential());
    }

    #[test]
    fn phi_commutes_with_rho_and_is_involutive(a in element(), cap in 0usize..4) {
        let lhs = apply_phi(&a.rho(), cap);
        let rhs = apply_phi(&a, cap).rho();
        prop_assert_eq!(lhs.element(), rhs.element());
        let twice = apply_phi(apply_phi(&a, cap).element(), cap);
        let a_cap = TruncatedSeries::new(a, cap);
        prop_assert_eq!(twice.element(), a_cap.element());
    }

    #[test]
    fn normal_forms_are_homogeneous(w in word_letters()) {
        let raw: i64 = w.iter().map(|l| l.degree()).sum();
        let e = Element::<Q>::letters(&w);
        if !e.is_zero() {
            prop_assert_eq!(e.degree(), Some(raw));
            let d = e.differential();
            prop_assert!(d.is_zero() || d.degree() == Some(raw + 1));
            prop_assert!(e.coproduct().terms().all(|((l, r), _)| l.degree() + r.degree() == raw));
        }
    }
}

#[test]
fn series_constants_are_truncation_coherent() {
    for name in SeriesConstant::ALL {
        let top = series_constant::<Q>(name, 6);
        for cap in 0..6 {
            assert_eq!(
                top.truncate(cap).element(),
                series_constant::<Q>(name, cap).element(),
                "{name:?} at {cap}"
            );
        }
    }
}

#[test]
fn catalog_passes_at_small_caps() {
    for cap in 0..=4 {
        let failed: Vec<_> = verify_catalog::<Q>(cap)
            .into_iter()
            .filter(|r| !r.passed())
            .collect();
        assert!(failed.is_empty(), "cap {cap}: {failed:?}");
    }
}
