//! Checks the identity catalog of the perturbation algebra at increasing
//! x-count caps, over the rationals and over a prime field.

use pertalg::algebra::verify_catalog;
use pertalg::report::all_pass;
use pertalg::scalar::{F32003, Q};

fn main() {
    for cap in 0..=6 {
        let reports = verify_catalog::<Q>(cap);
        let ok = all_pass(&reports);
        println!(
            "cap {cap}: {} identities, {}",
            reports.len(),
            if ok { "all pass" } else { "FAILURES" }
        );
    }
    let modp = verify_catalog::<F32003>(4);
    println!(
        "mod 32003 at cap 4: {}",
        if all_pass(&modp) {
            "all pass"
        } else {
            "FAILURES"
        }
    );
    let e = pertalg::algebra::AlgebraElement::parse("sx").unwrap();
    println!("d(sx) = {}", e.differential());
    println!("Δ(sx) = {}", e.coproduct());
}
