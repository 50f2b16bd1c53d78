use std::collections::BTreeMap;

use super::graded::{cohomology_dims, GradedMap, GradedSpace};
use super::hodge::{verify_hodge_against, ChainComplex, HodgeData};
use crate::report::{IdentityReport, Witness};
use crate::scalar::format_q;
use crate::{Error, Result};

/// A Maurer-Cartan perturbation `x` with `(d + x)² = 0`, together with the
/// inverses `alpha = (1 + sx)⁻¹` and `beta = (1 + xs)⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub x: GradedMap,
    pub alpha: GradedMap,
    pub beta: GradedMap,
}

pub fn make_perturbation(c: &ChainComplex, hd: &HodgeData, x: GradedMap) -> Result<Perturbation> {
    if x.shift() != 1 {
        return Err(Error::Shape(format!(
            "perturbation has shift {}",
            x.shift()
        )));
    }
    if x.dims() != c.d.dims() || !x.is_endomorphism() {
        return Err(Error::Shape(
            "perturbation does not act on the complex".into(),
        ));
    }
    let dx = &c.d + &x;
    if let Some((degree, row, col, entry)) = dx.compose(&dx).first_nonzero() {
        return Err(Error::MaurerCartan {
            degree,
            row,
            col,
            entry: format_q(&entry),
        });
    }
    let alpha = hd.s.compose(&x).one_plus().inverse("sx")?;
    let beta = x.compose(&hd.s).one_plus().inverse("xs")?;
    Ok(Perturbation { x, alpha, beta })
}

/// The retract `tV` with inclusion `iota: tV → V` and projection
/// `pi: V → tV`, `pi ∘ iota = id`, `iota ∘ pi = t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Retract {
    pub space: GradedSpace,
    pub iota: GradedMap,
    pub pi: GradedMap,
}

/// Basis of `tV` = the pivot columns of `t`, labelled like the basis
/// vectors they come from.
pub fn retract(space: &GradedSpace, t: &GradedMap) -> Retract {
    let mut labels = BTreeMap::new();
    let mut iotas = BTreeMap::new();
    for n in space.degrees() {
        let tn = t.block(n);
        let pivots = tn.rref().pivots;
        labels.insert(
            n,
            pivots
                .iter()
                .map(|&j| space.labels(n)[j].clone())
                .collect::<Vec<_>>(),
        );
        iotas.insert(n, tn.select_columns(&pivots));
    }
    let tspace = GradedSpace::from_labels(labels).expect("labels inherited from V");
    let mut pis = BTreeMap::new();
    for (&n, iota) in &iotas {
        if iota.cols() == 0 {
            continue;
        }
        let it = iota.transpose();
        let gram_inv = (&it * iota)
            .inverse()
            .expect("pivot columns are independent");
        pis.insert(n, &(&gram_inv * &it) * &t.block(n));
    }
    let iotas = iotas.into_iter().filter(|(_, m)| m.cols() > 0).collect();
    Retract {
        iota: GradedMap::from_blocks_between(&tspace, space, 0, iotas).expect("shapes"),
        pi: GradedMap::from_blocks_between(space, &tspace, 0, pis).expect("shapes"),
        space: tspace,
    }
}

/// Output of the linear perturbation lemma.
#[derive(Clone, Debug)]
pub struct Transferred {
    pub retract: Retract,
    /// Differential of `tV` induced by `d`; zero for harmonious data.
    pub d_t: GradedMap,
    /// `t x α t` restricted to `tV`.
    pub xi: GradedMap,
    /// The perturbed decomposition `(αs, αtβ)` for `d + x`.
    pub hd_perturbed: HodgeData,
    /// `αt: tV → V`.
    pub incl: GradedMap,
    /// `tβ: V → tV`.
    pub proj: GradedMap,
    pub reports: Vec<IdentityReport>,
}

fn report(id: &str, lhs: &GradedMap, rhs: &GradedMap, eq: &str) -> IdentityReport {
    IdentityReport::new(id, 0, lhs.diff_witness(rhs, eq))
}

pub fn transferred_structure(c: &ChainComplex, hd: &HodgeData, p: &Perturbation) -> Transferred {
    let r = retract(&c.space, &hd.t);
    let (d, x, s, t) = (&c.d, &p.x, &hd.s, &hd.t);
    let (alpha, beta) = (&p.alpha, &p.beta);
    let d_t = &(&r.pi * d) * &r.iota;
    let xi = &(&(&r.pi * x) * alpha) * &r.iota;
    let hd_perturbed = HodgeData {
        s: alpha * s,
        t: &(alpha * t) * beta,
    };
    let incl = alpha * &r.iota;
    let proj = &r.pi * beta;
    let dx = d + x;
    let dxi = &d_t + &xi;
    let mut reports = vec![report(
        "XI-MC",
        &(&dxi * &dxi),
        &GradedMap::zero_like(&(&dxi * &dxi)),
        "(d + ξ)² = 0 on tV",
    )];
    for mut rep in verify_hodge_against(&dx, &hd_perturbed) {
        rep.identity_id = format!("P{}", rep.identity_id);
        reports.push(rep);
    }
    reports.push(report(
        "INCL-CHAIN",
        &(&dx * &incl),
        &(&incl * &dxi),
        "(d + x)αt = αt(d + ξ)",
    ));
    reports.push(report(
        "PROJ-CHAIN",
        &(&proj * &dx),
        &(&dxi * &proj),
        "tβ(d + x) = (d + ξ)tβ",
    ));
    reports.push(report(
        "PROJ-INCL",
        &(&proj * &incl),
        &GradedMap::identity(&r.space),
        "tβ αt = id on tV",
    ));
    reports.push(report(
        "INCL-PROJ",
        &(&incl * &proj),
        &hd_perturbed.t,
        "αt tβ = αtβ",
    ));
    reports.push(homology_report(&dx, &dxi));
    Transferred {
        retract: r,
        d_t,
        xi,
        hd_perturbed,
        incl,
        proj,
        reports,
    }
}

fn homology_report(dx: &GradedMap, dxi: &GradedMap) -> IdentityReport {
    let hv = cohomology_dims(dx);
    let ht = cohomology_dims(dxi);
    let degrees: std::collections::BTreeSet<i32> = hv.keys().chain(ht.keys()).copied().collect();
    let witness = degrees.into_iter().find_map(|n| {
        let (a, b) = (
            hv.get(&n).copied().unwrap_or(0),
            ht.get(&n).copied().unwrap_or(0),
        );
        (a != b).then(|| Witness {
            equation: "dim H(V, d + x) = dim H(tV, d + ξ)".into(),
            term: format!("degree {n}: {a} vs {b}"),
            coefficient: (a as i64 - b as i64).to_string(),
            grade: n as i64,
        })
    });
    IdentityReport::new("HOMOLOGY", 0, witness)
}

/// `g = (1 + t - αt)β` and the check `g(d + x)g⁻¹ = d + t x α t`.
pub fn gauge_conjugation(
    c: &ChainComplex,
    hd: &HodgeData,
    p: &Perturbation,
) -> Result<(GradedMap, IdentityReport)> {
    let (t, alpha, beta) = (&hd.t, &p.alpha, &p.beta);
    let k = &t.one_plus() - &(alpha * t);
    let g = &k * beta;
    let g_inv = g.inverse("g")?;
    let xi_hat = &(&(t * &p.x) * alpha) * t;
    let lhs = &(&g * &(&c.d + &p.x)) * &g_inv;
    let rhs = &c.d + &xi_hat;
    Ok((g, report("CONJ", &lhs, &rhs, "g(d + x)g⁻¹ = d + txαt")))
}

/// `x = P d P⁻¹ - d`, a Maurer-Cartan element for any invertible degree-0 `P`.
pub fn conjugation_perturbation(d: &GradedMap, p: &GradedMap) -> Result<GradedMap> {
    let p_inv = p.inverse("P")?;
    Ok(&(&(p * d) * &p_inv) - d)
}

/// Dimension check used by tests: `dim tV = dim H(V, d)` degreewise.
pub fn is_harmonious(c: &ChainComplex, hd: &HodgeData) -> bool {
    let h = cohomology_dims(&c.d);
    c.space
        .degrees()
        .all(|n| hd.t.rank(n) == h.get(&n).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::hodge::build_hodge;
    use crate::linear::matrix::Matrix;
    use crate::report::all_pass;
    use crate::scalar::q_frac;

    fn abc() -> ChainComplex {
        let v = GradedSpace::from_labels(
            [(0, vec!["a".into(), "b".into()]), (1, vec!["c".into()])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let d = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1, 0]]))].into_iter().collect(),
        )
        .unwrap();
        ChainComplex::new(v, d).unwrap()
    }

    fn x_of(c: &ChainComplex, row: &[i64]) -> GradedMap {
        GradedMap::from_blocks(
            &c.space,
            1,
            [(0, Matrix::from_i64(&[row]))].into_iter().collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_perturbation_is_trivial() {
        let c = abc();
        let hd = build_hodge(&c);
        let p = make_perturbation(&c, &hd, GradedMap::zero(&c.space, 1)).unwrap();
        assert_eq!(p.alpha, GradedMap::identity(&c.space));
        assert_eq!(p.beta, GradedMap::identity(&c.space));
        let tr = transferred_structure(&c, &hd, &p);
        assert!(tr.xi.is_zero());
        assert_eq!(tr.hd_perturbed, hd);
        assert!(all_pass(&tr.reports));
    }

    #[test]
    fn alpha_on_degree_zero() {
        let c = abc();
        let hd = build_hodge(&c);
        let p = make_perturbation(&c, &hd, x_of(&c, &[1, 1])).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![q_frac(1, 2), q_frac(-1, 2)],
            vec![q_frac(0, 1), q_frac(1, 1)],
        ]);
        assert_eq!(p.alpha.block(0), expected);
    }

    #[test]
    fn singular_one_plus_sx() {
        let c = abc();
        let hd = build_hodge(&c);
        let err = make_perturbation(&c, &hd, x_of(&c, &[-1, 0])).unwrap_err();
        assert_eq!(
            err,
            Error::Singular {
                which: "sx",
                degree: 0
            }
        );
    }

    #[test]
    fn maurer_cartan_violation_is_reported() {
        let v = GradedSpace::from_dims(&[(0, 1), (1, 1), (2, 1)].into_iter().collect());
        let c = ChainComplex::zero_differential(v.clone());
        let hd = build_hodge(&c);
        let x = GradedMap::from_blocks(
            &v,
            1,
            [
                (0, Matrix::from_i64(&[&[1]])),
                (1, Matrix::from_i64(&[&[1]])),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        assert!(matches!(
            make_perturbation(&c, &hd, x),
            Err(Error::MaurerCartan { degree: 0, .. })
        ));
    }

    #[test]
    fn transfer_on_abc() {
        let c = abc();
        let hd = build_hodge(&c);
        let p = make_perturbation(&c, &hd, x_of(&c, &[1, 1])).unwrap();
        let tr = transferred_structure(&c, &hd, &p);
        assert_eq!(tr.retract.space.labels(0), ["b"]);
        assert!(tr.xi.is_zero());
        assert!(all_pass(&tr.reports), "{:?}", tr.reports);
        assert_eq!(
            cohomology_dims(&(&c.d + &p.x)),
            [(0, 1)].into_iter().collect()
        );
    }

    #[test]
    fn trivial_hodge_data_transfers_x_itself() {
        let v = GradedSpace::from_dims(&[(0, 2), (1, 2)].into_iter().collect());
        let c = ChainComplex::zero_differential(v.clone());
        let hd = HodgeData::trivial(&v);
        let x = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1, 2], &[3, 4]]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let p = make_perturbation(&c, &hd, x.clone()).unwrap();
        let tr = transferred_structure(&c, &hd, &p);
        assert_eq!(tr.xi, x);
    }

    #[test]
    fn gauge_on_abc() {
        let c = abc();
        let hd = build_hodge(&c);
        let p = make_perturbation(&c, &hd, x_of(&c, &[1, 1])).unwrap();
        let (g, rep) = gauge_conjugation(&c, &hd, &p).unwrap();
        assert!(rep.passed());
        let half = q_frac(1, 2);
        assert_eq!(
            g.block(0),
            Matrix::from_rows(vec![
                vec![q_frac(1, 1), half.clone()],
                vec![q_frac(0, 1), q_frac(1, 1)]
            ])
        );
        assert_eq!(g.block(1), Matrix::from_rows(vec![vec![half]]));
    }
}
