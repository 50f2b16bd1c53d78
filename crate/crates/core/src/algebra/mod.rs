//! Symbolic engine for the perturbation algebra `A` and its localization.
//!
//! `A` is generated by `s` (degree -1), `t` (degree 0) and `x` (degree 1)
//! subject to `s² = st = ts = 0`, `t² = t`. Its localization inverts
//! `1 + sx` and `1 + xs`; elements of the localization are handled as
//! [`TruncatedSeries`] in the x-adic completion.

pub mod catalog;
pub mod element;
pub mod series;
pub mod tensor;
pub mod word;

#[cfg(test)]
mod properties;

pub use catalog::{verify_catalog, verify_identity};
pub use element::{AlgebraElement, Element};
pub use series::{
    apply_phi, apply_phi_series, gauge_action, series_constant, SeriesConstant, TruncatedSeries,
    TruncatedTensor,
};
pub use tensor::{TensorSquare, TensorSquareElement};
pub use word::{normal_form_word, Letter, Word};

/// `normal_form` on a raw letter sequence.
pub fn normal_form(letters: &[Letter]) -> AlgebraElement {
    AlgebraElement::letters(letters)
}
