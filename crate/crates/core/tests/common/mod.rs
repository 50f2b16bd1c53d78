//! Oracles and suites shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use pertalg::ainf::transfer_minimal;
use pertalg::algebra::{AlgebraElement, Element, Letter};
use pertalg::gen::{massey, random_complex, random_mc_perturbation, rng};
use pertalg::linear::{
    build_hodge, gauge_conjugation, transferred_structure, verify_hodge, GradedMap, Representation,
};
use pertalg::report::all_pass;
use pertalg::scalar::{q, Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Runs the perturbation lemma on `count` generated complexes; returns how
/// many had a nonzero perturbation.
pub fn hpl_suite(count: u64) -> usize {
    let mut perturbed = 0;
    for seed in 0..count {
        let mut r = rng(seed);
        let c = random_complex(&mut r);
        assert!(c
            .space
            .degrees()
            .all(|n| (-3..=3).contains(&n) && c.space.dim(n) <= 6));
        let hd = build_hodge(&c);
        assert!(all_pass(&verify_hodge(&c, &hd)), "seed {seed}");
        let p = random_mc_perturbation(&mut r, &c, &hd);
        perturbed += usize::from(!p.x.is_zero());
        let tr = transferred_structure(&c, &hd, &p);
        let failed: Vec<_> = tr.reports.iter().filter(|r| !r.passed()).collect();
        assert!(failed.is_empty(), "seed {seed}: {failed:?}");
        let (_, conj) = gauge_conjugation(&c, &hd, &p).unwrap();
        assert!(conj.passed(), "seed {seed}: {conj:?}");
    }
    perturbed
}

fn random_word(r: &mut ChaCha8Rng) -> Vec<Letter> {
    let len = r.gen_range(0..=5);
    (0..len)
        .map(|_| [Letter::S, Letter::T, Letter::X][r.gen_range(0..3)])
        .collect()
}

/// A nonzero homogeneous element with up to three terms.
fn random_element(r: &mut ChaCha8Rng) -> AlgebraElement {
    loop {
        let first = Element::letters(&random_word(r));
        let Some(deg) = first.degree() else { continue };
        let mut e = first.scale(&q(r.gen_range(1..=3)));
        for _ in 0..r.gen_range(0..3) {
            let w = Element::letters(&random_word(r));
            if w.degree() == Some(deg) {
                e = e + w.scale(&q(r.gen_range(-3..=3)));
            }
        }
        if !e.is_zero() {
            return e;
        }
    }
}

fn same(a: &GradedMap, b: &GradedMap) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

/// Checks `count` random (element pair, complex) samples; returns how many
/// gave a nonzero product under a nonzero perturbation.
pub fn representation_bridge(count: usize) -> usize {
    let mut r = rng(7);
    let mut nontrivial = 0;
    for k in 0..count {
        let c = random_complex(&mut r);
        let hd = build_hodge(&c);
        let p = random_mc_perturbation(&mut r, &c, &hd);
        let mut rep = Representation::new(&c, &hd, &p);
        let (a, b) = (random_element(&mut r), random_element(&mut r));
        let (ea, eb) = (rep.element(&a).unwrap(), rep.element(&b).unwrap());
        let ab = a.clone() * b.clone();
        let eab = if ab.is_zero() {
            GradedMap::zero(&c.space, 0)
        } else {
            rep.element(&ab).unwrap()
        };
        assert!(same(&eab, &ea.compose(&eb)), "pair {k}: E({a} · {b})");
        let da = a.differential();
        let eda = if da.is_zero() {
            GradedMap::zero(&c.space, 0)
        } else {
            rep.element(&da).unwrap()
        };
        let odd = a.degree().unwrap() % 2 != 0;
        let (d_ea, ea_d) = (c.d.compose(&ea), ea.compose(&c.d));
        let comm = if odd { &d_ea + &ea_d } else { &d_ea - &ea_d };
        assert!(same(&eda, &comm), "pair {k}: E(d {a}) vs [d, E({a})]");
        nontrivial += usize::from(!eab.is_zero() && !p.x.is_zero());
    }
    nontrivial
}

const LABELS: [&str; 5] = ["u", "v", "w", "uv", "wu"];
const SDEG: [i32; 5] = [0, 0, 0, 1, 1];

/// Sparse vectors on letters, used to write the structure maps by hand.
type Lin = BTreeMap<usize, i64>;

fn product(x: usize, y: usize) -> Lin {
    match (LABELS[x], LABELS[y]) {
        ("u", "v") => [(3, 1)].into(),
        ("w", "u") => [(4, 1)].into(),
        _ => Lin::new(),
    }
}

/// `b_2(x, y) = (-1)^{sdeg x} m_2(x, y)`.
fn b2(x: usize, y: usize) -> Lin {
    let sign = if SDEG[x] % 2 != 0 { -1 } else { 1 };
    product(x, y)
        .into_iter()
        .map(|(k, c)| (k, sign * c))
        .collect()
}

/// `s(uv) = w`.
fn s(x: usize) -> Lin {
    if LABELS[x] == "uv" {
        [(2, 1)].into()
    } else {
        Lin::new()
    }
}

/// `t` projects onto `span{u, v, wu}`.
fn t(x: usize) -> Lin {
    if ["u", "v", "wu"].contains(&LABELS[x]) {
        [(x, 1)].into()
    } else {
        Lin::new()
    }
}

struct Words {
    all: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

fn words() -> Words {
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..3 {
        layer = layer
            .iter()
            .flat_map(|w| (0..5).map(move |i| [w.clone(), vec![i]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    let index = all
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    Words { all, index }
}

type Dense = Vec<Vec<Q>>;

fn zeros(n: usize) -> Dense {
    vec![vec![Q::zero(); n]; n]
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn prefix_sign(w: &[usize]) -> i64 {
    if w.iter().map(|&i| SDEG[i]).sum::<i32>() % 2 != 0 {
        -1
    } else {
        1
    }
}

/// Coderivation of `b_2`: `Σ (-1)^{sdeg w_<i} w_<i ⊗ b_2(w_i, w_{i+1}) ⊗ w_>i+1`.
fn m_matrix(ws: &Words) -> Dense {
    let mut m = zeros(ws.all.len());
    for (col, w) in ws.all.iter().enumerate() {
        for i in 0..w.len().saturating_sub(1) {
            let sign = prefix_sign(&w[..i]);
            for (k, c) in b2(w[i], w[i + 1]) {
                let out = [&w[..i], &[k], &w[i + 2..]].concat();
                m[ws.index[&out]][col] += Q::from_integer((sign * c).into());
            }
        }
    }
    m
}

/// `S̃ = Σ (-1)^{sdeg w_<i} t^{⊗(i-1)} ⊗ s ⊗ id`.
fn s_tilde(ws: &Words) -> Dense {
    let mut m = zeros(ws.all.len());
    for (col, w) in ws.all.iter().enumerate() {
        for i in 0..w.len() {
            let sign = prefix_sign(&w[..i]);
            let mut terms: Vec<(Vec<usize>, i64)> = vec![(vec![], sign)];
            for &x in &w[..i] {
                terms = terms
                    .into_iter()
                    .flat_map(|(p, c)| {
                        t(x).into_iter()
                            .map(move |(k, d)| ([p.clone(), vec![k]].concat(), c * d))
                    })
                    .collect();
            }
            for (p, c) in terms {
                for (k, d) in s(w[i]) {
                    let out = [&p[..], &[k], &w[i + 1..]].concat();
                    m[ws.index[&out]][col] += Q::from_integer((c * d).into());
                }
            }
        }
    }
    m
}

/// Compares every `m_3` value of the Massey minimal model with the dense
/// oracle; returns the number of nonzero values.
pub fn massey_m3_against_oracle() -> usize {
    let ws = words();
    let n = ws.all.len();
    let m = m_matrix(&ws);
    let step: Dense = mul(&s_tilde(&ws), &m)
        .into_iter()
        .map(|r| r.into_iter().map(|c| -c).collect())
        .collect();
    let mut alpha = zeros(n);
    for (i, row) in alpha.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    let mut power = alpha.clone();
    for _ in 0..3 {
        power = mul(&step, &power);
        for i in 0..n {
            for j in 0..n {
                alpha[i][j] += &power[i][j];
            }
        }
    }
    let m_alpha = mul(&m, &alpha);

    let alg = massey();
    let a = alg.structure(3);
    let hd = build_hodge(&alg.complex());
    let min = transfer_minimal(&a, &hd, 3);
    let tb = &min.structure.basis;
    let m3 = &min.structure.to_m_family()[2];
    let harmonic = [0usize, 1, 4];
    let mut nonzero = 0;
    for &x in &harmonic {
        for &y in &harmonic {
            for &z in &harmonic {
                let col = ws.index[&vec![x, y, z]];
                // `m_3 = (-1)^{sdeg y} b_3` on three letters.
                let sign = if SDEG[y] % 2 != 0 {
                    -Q::one()
                } else {
                    Q::one()
                };
                let key: Vec<u16> = [x, y, z]
                    .iter()
                    .map(|&i| tb.find(LABELS[i]).unwrap())
                    .collect();
                let got: BTreeMap<&str, Q> = m3
                    .get(&key)
                    .map(|v| v.iter().map(|(o, c)| (tb.label(*o), c.clone())).collect())
                    .unwrap_or_default();
                let mut expected = BTreeMap::new();
                for &o in &harmonic {
                    let c = &sign * &m_alpha[ws.index[&vec![o]]][col];
                    if !c.is_zero() {
                        expected.insert(LABELS[o], c);
                    }
                }
                assert_eq!(
                    got, expected,
                    "m_3({}, {}, {})",
                    LABELS[x], LABELS[y], LABELS[z]
                );
                nonzero += usize::from(!expected.is_empty());
            }
        }
    }
    let uvu: Vec<u16> = ["u", "v", "u"]
        .iter()
        .map(|l| tb.find(l).unwrap())
        .collect();
    let val = m3.get(&uvu).expect("m_3(u, v, u) ≠ 0");
    assert_eq!(val.len(), 1);
    assert_eq!(tb.label(val[0].0), "wu");
    assert!(val[0].1 == Q::one() || val[0].1 == -Q::one());
    nonzero
}
