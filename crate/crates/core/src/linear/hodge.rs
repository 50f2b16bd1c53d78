use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::graded::{GradedMap, GradedSpace};
use super::matrix::Matrix;
use crate::report::IdentityReport;
use crate::scalar::Q;
use crate::{Error, Result};

/// A finite-dimensional cochain complex; `d` has shift +1 and squares to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    pub space: GradedSpace,
    pub d: GradedMap,
}

impl ChainComplex {
    pub fn new(space: GradedSpace, d: GradedMap) -> Result<ChainComplex> {
        if d.shift() != 1 {
            return Err(Error::Shape(format!(
                "differential has shift {}",
                d.shift()
            )));
        }
        if d.dims() != &space.dims() {
            return Err(Error::Shape(
                "differential does not act on the given space".into(),
            ));
        }
        if let Some((n, ..)) = d.compose(&d).first_nonzero() {
            return Err(Error::NotComplex { degree: n });
        }
        Ok(ChainComplex { space, d })
    }

    pub fn zero_differential(space: GradedSpace) -> ChainComplex {
        let d = GradedMap::zero(&space, 1);
        ChainComplex { space, d }
    }
}

/// Operators `(s, t)` with `s² = 0`, `sd + ds = 1 - t`, `dt = td`, `t² = t`,
/// `st = ts = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeData {
    pub s: GradedMap,
    pub t: GradedMap,
}

impl HodgeData {
    /// `s = 0`, `t = id`; valid exactly when `d = 0`.
    pub fn trivial(space: &GradedSpace) -> HodgeData {
        HodgeData {
            s: GradedMap::zero(space, -1),
            t: GradedMap::identity(space),
        }
    }
}

/// Deterministic harmonious Hodge decomposition.
///
/// Per degree `n`, `V_n = B_n ⊕ H_n ⊕ C_n` where `C_n` is spanned by the
/// leftmost standard basis vectors completing `ker d_n`, `B_n = d(C_{n-1})`,
/// and `H_n` by the leftmost RREF kernel vectors completing `B_n`. Then `t`
/// projects onto `H` and `s` inverts `d: C_{n-1} → B_n`.
pub fn build_hodge(c: &ChainComplex) -> HodgeData {
    let space = &c.space;
    let mut comps: BTreeMap<i32, Vec<Vec<Q>>> = BTreeMap::new();
    let mut kernels: BTreeMap<i32, Vec<Vec<Q>>> = BTreeMap::new();
    for n in space.degrees() {
        let dim = space.dim(n);
        let ker = c.d.block(n).kernel();
        let standard: Vec<Vec<Q>> = (0..dim).map(|i| unit(dim, i)).collect();
        comps.insert(n, Matrix::extend_basis(dim, &ker, &standard, dim));
        kernels.insert(n, ker);
    }
    let mut s_blocks = BTreeMap::new();
    let mut t_blocks = BTreeMap::new();
    for n in space.degrees() {
        let dim = space.dim(n);
        let prev = comps.get(&(n - 1)).cloned().unwrap_or_default();
        let d_prev = c.d.block(n - 1);
        let im: Vec<Vec<Q>> = prev.iter().map(|v| d_prev.mul_vec(v)).collect();
        let ker = &kernels[&n];
        let harm = Matrix::extend_basis(dim, &im, ker, ker.len());
        let comp = &comps[&n];
        let mut cols = im.clone();
        cols.extend(harm.iter().cloned());
        cols.extend(comp.iter().cloned());
        let qinv = Matrix::from_columns(dim, &cols)
            .inverse()
            .expect("B ⊕ H ⊕ C spans V");
        let (nb, nh) = (im.len(), harm.len());
        let mut proj_h = Matrix::zeros(dim, dim);
        for k in nb..nb + nh {
            proj_h.set(k, k, Q::one());
        }
        let qmat = Matrix::from_columns(dim, &cols);
        t_blocks.insert(n, &(&qmat * &proj_h) * &qinv);
        // s sends the k-th image vector back to its preimage in C_{n-1}.
        let prev_dim = space.dim(n - 1);
        let mut lift = Matrix::zeros(prev_dim, dim);
        for (k, v) in prev.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                lift.set(i, k, x.clone());
            }
        }
        s_blocks.insert(n, &lift * &qinv);
    }
    HodgeData {
        s: GradedMap::from_blocks(space, -1, s_blocks).expect("shapes by construction"),
        t: GradedMap::from_blocks(space, 0, t_blocks).expect("shapes by construction"),
    }
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

/// Checks the five Hodge axioms against a differential `d`; ids `HD1`..`HD5`.
pub fn verify_hodge_against(d: &GradedMap, hd: &HodgeData) -> Vec<IdentityReport> {
    let (s, t) = (&hd.s, &hd.t);
    let zero_m1 = GradedMap::zero_like(s);
    let id = GradedMap::zero_like(t).one_plus();
    let sd_ds = &(s * d) + &(d * s);
    let checks: [(&str, &str, GradedMap, GradedMap); 6] = [
        ("HD1", "s² = 0", s * s, GradedMap::zero_like(&(s * s))),
        ("HD2", "sd + ds = 1 - t", sd_ds, &id - t),
        ("HD3", "dt = td", d * t, t * d),
        ("HD4", "t² = t", t * t, t.clone()),
        ("HD5", "st = 0", s * t, zero_m1.clone()),
        ("HD5", "ts = 0", t * s, zero_m1),
    ];
    let mut out: Vec<IdentityReport> = Vec::new();
    for (id, eq, lhs, rhs) in checks {
        let w = lhs.diff_witness(&rhs, eq);
        match out.iter_mut().find(|r| r.identity_id == id) {
            Some(r) if r.witness.is_none() && w.is_some() => *r = IdentityReport::new(id, 0, w),
            Some(_) => {}
            None => out.push(IdentityReport::new(id, 0, w)),
        }
    }
    out
}

pub fn verify_hodge(c: &ChainComplex, hd: &HodgeData) -> Vec<IdentityReport> {
    verify_hodge_against(&c.d, hd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn space(spec: &[(i32, &[&str])]) -> GradedSpace {
        GradedSpace::from_labels(
            spec.iter()
                .map(|(n, ls)| (*n, ls.iter().map(|s| s.to_string()).collect()))
                .collect(),
        )
        .unwrap()
    }

    fn abc() -> ChainComplex {
        let v = space(&[(0, &["a", "b"]), (1, &["c"])]);
        let d = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1, 0]]))].into_iter().collect(),
        )
        .unwrap();
        ChainComplex::new(v, d).unwrap()
    }

    #[test]
    fn zero_differential_gives_identity_projection() {
        let c = ChainComplex::zero_differential(space(&[(0, &["a"]), (2, &["b", "c"])]));
        let hd = build_hodge(&c);
        assert_eq!(hd, HodgeData::trivial(&c.space));
        assert!(all_pass(&verify_hodge(&c, &hd)));
    }

    #[test]
    fn acyclic_two_term_complex() {
        let v = space(&[(0, &["a"]), (1, &["c"])]);
        let d = GradedMap::from_blocks(
            &v,
            1,
            [(0, Matrix::from_i64(&[&[1]]))].into_iter().collect(),
        )
        .unwrap();
        let c = ChainComplex::new(v, d).unwrap();
        let hd = build_hodge(&c);
        assert!(hd.t.is_zero());
        assert_eq!(hd.s.block(1), Matrix::from_i64(&[&[1]]));
        assert!(all_pass(&verify_hodge(&c, &hd)));
    }

    #[test]
    fn pivot_rule_example() {
        let c = abc();
        let hd = build_hodge(&c);
        assert_eq!(hd.t.block(0), Matrix::from_i64(&[&[0, 0], &[0, 1]]));
        assert_eq!(hd.t.block(1), Matrix::from_i64(&[&[0]]));
        assert_eq!(hd.s.block(1), Matrix::from_i64(&[&[1], &[0]]));
        assert!(all_pass(&verify_hodge(&c, &hd)));
    }

    #[test]
    fn zero_t_fails_axiom_two() {
        let c = ChainComplex::zero_differential(space(&[(0, &["a"])]));
        let hd = HodgeData {
            s: GradedMap::zero(&c.space, -1),
            t: GradedMap::zero(&c.space, 0),
        };
        let reports = verify_hodge(&c, &hd);
        let failing: Vec<&str> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.identity_id.as_str())
            .collect();
        assert_eq!(failing, ["HD2"]);
        assert_eq!(reports[1].witness.as_ref().unwrap().coefficient, "-1");
    }

    #[test]
    fn non_complex_rejected() {
        let v = space(&[(0, &["a"]), (1, &["b"]), (2, &["c"])]);
        let d = GradedMap::from_blocks(
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
        assert_eq!(
            ChainComplex::new(v, d),
            Err(Error::NotComplex { degree: 0 })
        );
    }
}
