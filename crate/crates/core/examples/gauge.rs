//! The gauge element g = (1 + t - αt)β conjugates d + x into d + txαt, both
//! as a matrix identity and through the symbolic series evaluated on V.

use pertalg::algebra::{series_constant, SeriesConstant};
use pertalg::gen::{random_complex, random_mc_perturbation, rng};
use pertalg::linear::{build_hodge, gauge_conjugation, Representation};
use pertalg::scalar::Q;

fn main() -> pertalg::Result<()> {
    // First generated complex where sx is nilpotent and x is nonzero.
    let (c, hd, p) = (0..)
        .map(|seed| {
            let mut r = rng(seed);
            let c = random_complex(&mut r);
            let hd = build_hodge(&c);
            let p = random_mc_perturbation(&mut r, &c, &hd);
            (c, hd, p)
        })
        .find(|(c, hd, p)| !p.x.is_zero() && Representation::new(c, hd, p).exact_cap().is_some())
        .unwrap();
    let (g, report) = gauge_conjugation(&c, &hd, &p)?;
    println!("dims {:?}, conjugation {:?}", c.space.dims(), report.status);
    let mut rep = Representation::new(&c, &hd, &p);
    match rep.exact_cap() {
        Some(cap) => {
            let series = rep.series(&series_constant::<Q>(SeriesConstant::G, cap))?;
            println!(
                "series for g at cap {cap} equals the matrix: {}",
                series == g
            );
        }
        None => println!("sx is not nilpotent here; the series is not evaluated"),
    }
    Ok(())
}
