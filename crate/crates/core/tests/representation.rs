//! Evaluation on complexes is an algebra map intertwining `d` with the
//! graded commutator `[d_V, -]`.

mod common;

#[test]
fn thousand_pairs() {
    let nontrivial = common::representation_bridge(1000);
    assert!(nontrivial > 100, "{nontrivial}");
}
