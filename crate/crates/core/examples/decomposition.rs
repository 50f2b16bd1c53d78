//! Splits a random dg algebra into its minimal model and a linear
//! contractible part, and prints the nonzero components of the isomorphism.

use pertalg::ainf::decomposition;
use pertalg::gen::{random_dg_algebra, rng};
use pertalg::linear::build_hodge;
use pertalg::report::all_pass;

fn main() {
    // First seed whose minimal model has a ternary operation.
    let (alg, dec) = (0..)
        .map(|seed| {
            let alg = random_dg_algebra(&mut rng(seed), 2, true);
            let dec = decomposition(&alg.structure(4), &build_hodge(&alg.complex()), 4);
            (alg, dec)
        })
        .find(|(_, dec)| !dec.minimal.structure.ops[2].is_zero())
        .unwrap();
    println!(
        "dims {:?}, minimal dims {:?}",
        alg.space.dims(),
        dec.minimal.structure.space().dims()
    );
    println!("all checks pass: {}", all_pass(&dec.reports));
    for (k, f) in dec.iso.comps.iter().enumerate() {
        println!("f_{}: {} nonzero entries", k + 1, f.len());
    }
    for (k, b) in dec.split.ops.iter().enumerate() {
        println!("split b_{}: {} nonzero entries", k + 1, b.len());
    }
}
