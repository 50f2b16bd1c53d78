//! Transfers the regular module of the mirrored Massey algebra, comparing
//! the admissible-tree sum with the series expansion arity by arity.

use pertalg::ainf::{transfer_module, AInfModule};
use pertalg::gen::massey_mirrored;
use pertalg::linear::{build_hodge, ChainComplex};

fn main() -> pertalg::Result<()> {
    let m = AInfModule::regular(&massey_mirrored().structure(6));
    let hd = build_hodge(&ChainComplex::new(m.space().clone(), m.differential())?);
    let tr = transfer_module(&m, &hd, 6)?;
    for r in &tr.reports {
        println!("{:<20} {:?}", r.identity_id, r.status);
    }
    for (k, op) in tr.minimal.ops.iter().enumerate() {
        for (w, v) in op.entries() {
            let out: Vec<String> = v
                .iter()
                .map(|(o, c)| {
                    format!(
                        "{} {}",
                        pertalg::scalar::format_q(c),
                        tr.minimal.basis.label(*o)
                    )
                })
                .collect();
            println!(
                "m_{}({}) = {}",
                k + 1,
                tr.minimal.format_word(w),
                out.join(" + ")
            );
        }
    }
    Ok(())
}
