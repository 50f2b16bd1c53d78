//! Hodge decomposition of a small complex, a Maurer-Cartan perturbation and
//! the transferred differential on the retract.

use pertalg::linear::{
    build_hodge, make_perturbation, transferred_structure, verify_hodge, ChainComplex, GradedMap,
    GradedSpace, Matrix,
};
use pertalg::report::all_pass;

fn main() -> pertalg::Result<()> {
    // deg 0 {a, b}, deg 1 {c}, d(a) = c.
    let v = GradedSpace::from_labels(
        [(0, vec!["a".into(), "b".into()]), (1, vec!["c".into()])]
            .into_iter()
            .collect(),
    )?;
    let d = GradedMap::from_blocks(
        &v,
        1,
        [(0, Matrix::from_i64(&[&[1, 0]]))].into_iter().collect(),
    )?;
    let c = ChainComplex::new(v.clone(), d)?;
    let hd = build_hodge(&c);
    println!("Hodge axioms: {}", all_pass(&verify_hodge(&c, &hd)));
    // x(b) = c kills the remaining cohomology.
    let x = GradedMap::from_blocks(
        &v,
        1,
        [(0, Matrix::from_i64(&[&[0, 1]]))].into_iter().collect(),
    )?;
    let p = make_perturbation(&c, &hd, x)?;
    let tr = transferred_structure(&c, &hd, &p);
    for r in &tr.reports {
        println!("{:<12} {:?}", r.identity_id, r.status);
    }
    println!(
        "retract dims {:?}, transferred differential {:?}",
        tr.retract.space.dims(),
        (&tr.d_t + &tr.xi).entries().collect::<Vec<_>>()
    );
    Ok(())
}
