//! The minimal model of the Massey fixture against a dense, from-scratch
//! expansion of `b'_3 = π pr_1 m Σ_k (-S̃m)^k ι^{⊗3}` on `T^{≤3}(sV)`.

mod common;

use pertalg::ainf::{codifferential_check, transfer_minimal};
use pertalg::gen::massey;
use pertalg::linear::build_hodge;
use pertalg::report::all_pass;

#[test]
fn m3_matches_dense_oracle() {
    assert_eq!(common::massey_m3_against_oracle(), 1);
}

#[test]
fn stasheff_to_arity_6() {
    let alg = massey();
    let hd = build_hodge(&alg.complex());
    let min = transfer_minimal(&alg.structure(6), &hd, 6);
    assert!(all_pass(&min.reports));
    assert!(all_pass(&codifferential_check(&min.structure)));
    assert_eq!(min.structure.ops.len(), 6);
}
