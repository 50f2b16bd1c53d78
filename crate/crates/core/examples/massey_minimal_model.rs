//! Minimal model of the Massey fixture: the only higher operation is
//! m_3(u, v, u) = ±wu.

use pertalg::ainf::transfer_minimal;
use pertalg::gen::massey;
use pertalg::io::problem::structure_file;
use pertalg::linear::build_hodge;
use pertalg::report::all_pass;

fn main() {
    let alg = massey();
    let hd = build_hodge(&alg.complex());
    let min = transfer_minimal(&alg.structure(5), &hd, 5);
    println!("checks pass: {}", all_pass(&min.reports));
    let file = structure_file(&min.structure);
    println!("{}", serde_json::to_string_pretty(&file).unwrap());
}
