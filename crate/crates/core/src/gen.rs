//! Fixtures and seeded random generators for complexes, perturbations and
//! A∞ structures. Every generator is deterministic in its seed.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::smallvec;

use crate::ainf::{AInfMorphism, AInfStructure, Basis, Idx, MultiMap};
use crate::linear::{
    make_perturbation, ChainComplex, GradedMap, GradedSpace, HodgeData, Matrix, Perturbation,
};
use crate::scalar::{q, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(pairs: &[(i32, &[&str])]) -> GradedSpace {
    GradedSpace::from_labels(
        pairs
            .iter()
            .map(|(n, ls)| (*n, ls.iter().map(|s| s.to_string()).collect()))
            .collect(),
    )
    .expect("distinct labels")
}

/// A dg algebra given by its differential and product table (m-convention).
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    pub space: GradedSpace,
    pub d: GradedMap,
    pub product: MultiMap,
}

impl DgAlgebra {
    pub fn complex(&self) -> ChainComplex {
        ChainComplex::new(self.space.clone(), self.d.clone()).expect("d² = 0 by construction")
    }

    pub fn structure(&self, cap: usize) -> AInfStructure {
        AInfStructure::from_dg_algebra(&self.space, &self.d, &self.product, cap)
            .expect("degrees by construction")
    }
}

fn dg_from_table(
    space: GradedSpace,
    d_entries: &[(&str, &str)],
    products: &[(&str, &str, &str)],
) -> DgAlgebra {
    let basis = Basis::suspend(&space);
    let idx = |l: &str| basis.find(l).expect("fixture label");
    let mut d = GradedMap::zero(&space, 1);
    for (a, b) in d_entries {
        let (n, col) = space.find(a).expect("fixture label");
        let (_, row) = space.find(b).expect("fixture label");
        d.set_entry(n, row, col, q(1));
    }
    let mut product = MultiMap::new();
    for (a, b, c) in products {
        product.add_entry(smallvec![idx(a), idx(b)], idx(c), q(1));
    }
    DgAlgebra { space, d, product }
}

/// deg 1 `{u, v, w}`, deg 2 `{uv, wu}`; `d(w) = uv`, `u·v = uv`,
/// `w·u = wu`. The Massey product `⟨u, v, u⟩` is `±wu`.
pub fn massey() -> DgAlgebra {
    let space = labels(&[(1, &["u", "v", "w"]), (2, &["uv", "wu"])]);
    dg_from_table(space, &[("w", "uv")], &[("u", "v", "uv"), ("w", "u", "wu")])
}

/// Mirror image of [`massey`]: deg 2 `{vu, uw}`, `d(w) = vu`, `v·u = vu`,
/// `u·w = uw`, so that left multiplication carries the Massey product.
pub fn massey_mirrored() -> DgAlgebra {
    let space = labels(&[(1, &["u", "v", "w"]), (2, &["vu", "uw"])]);
    dg_from_table(space, &[("w", "vu")], &[("v", "u", "vu"), ("u", "w", "uw")])
}

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    q(rng.gen_range(-bound..=bound))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, small(rng, 2));
            }
        }
    }
    m
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = &Matrix::identity(n) + &random_matrix(rng, n, n, 0.4);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Random invertible degree-0 map on `space`.
pub fn random_automorphism(rng: &mut ChaCha8Rng, space: &GradedSpace) -> GradedMap {
    let blocks = space
        .degrees()
        .map(|n| (n, random_invertible(rng, space.dim(n))))
        .collect();
    GradedMap::from_blocks(space, 0, blocks).expect("square blocks")
}

/// Random complex in degrees within `-3..=3`, each of dimension at most 6:
/// a standard `B ⊕ H ⊕ C` complex conjugated by a random automorphism.
pub fn random_complex(rng: &mut ChaCha8Rng) -> ChainComplex {
    let lo = rng.gen_range(-3..=2);
    let hi = rng.gen_range(lo + 1..=3);
    let mut dims = BTreeMap::new();
    let mut rank_in = 0usize;
    let mut ranks = BTreeMap::new();
    for n in lo..=hi {
        let h = rng.gen_range(0..=2usize.min(6 - rank_in));
        let room = 6 - rank_in - h;
        let c = if n == hi {
            0
        } else {
            rng.gen_range(0..=room.min(3))
        };
        dims.insert(n, rank_in + h + c);
        ranks.insert(n, (rank_in, h, c));
        rank_in = c;
    }
    dims.retain(|_, d| *d > 0);
    let space = GradedSpace::from_dims(&dims);
    let mut d = GradedMap::zero(&space, 1);
    for (&n, &(b, h, c)) in &ranks {
        for k in 0..c {
            d.set_entry(n, k, b + h + k, q(1));
        }
    }
    let p = random_automorphism(rng, &space);
    let p_inv = p.inverse("P").expect("invertible by construction");
    let d = &(&p * &d) * &p_inv;
    ChainComplex::new(space, d).expect("conjugate of a complex")
}

/// Maurer-Cartan perturbation `x = P d P⁻¹ - d` with `P = 1 + N`, `N`
/// sparse; retries until `1 + sx` is invertible and `x ≠ 0` when possible.
pub fn random_mc_perturbation(
    rng: &mut ChaCha8Rng,
    c: &ChainComplex,
    hd: &HodgeData,
) -> Perturbation {
    let mut fallback = None;
    for _ in 0..64 {
        let blocks = c.space.degrees().map(|n| {
            let k = c.space.dim(n);
            (n, &Matrix::identity(k) + &random_matrix(rng, k, k, 0.25))
        });
        let p = GradedMap::from_blocks(&c.space, 0, blocks.collect()).expect("square blocks");
        let Ok(x) = crate::linear::conjugation_perturbation(&c.d, &p) else {
            continue;
        };
        if let Ok(pert) = make_perturbation(c, hd, x) {
            if !pert.x.is_zero() {
                return pert;
            }
            fallback = Some(pert);
        }
    }
    fallback.unwrap_or_else(|| {
        make_perturbation(c, hd, GradedMap::zero(&c.space, 1)).expect("zero is Maurer-Cartan")
    })
}

/// Random dg algebra concentrated in degrees 1 and 2 with product
/// `V¹ ⊗ V¹ → V²` (all identities hold for degree reasons). The
/// differential `d: V¹ → V²` has rank at least 1 and leaves some cohomology
/// in degree 1, so that Massey-type products can appear. With `exterior`,
/// the algebra is tensored with `Λ[y]`, `|y| = -1`, which spreads it over
/// degrees 0, 1, 2 and brings in Koszul signs.
pub fn random_dg_algebra(rng: &mut ChaCha8Rng, max_dim: usize, exterior: bool) -> DgAlgebra {
    let max_dim = max_dim.max(2);
    let d1 = rng.gen_range(2..=max_dim);
    let d2 = rng.gen_range(1..=max_dim);
    let rank = rng.gen_range(1..=d2.min(d1 - 1));
    let v1: Vec<String> = (0..d1).map(|i| format!("a{i}")).collect();
    let v2: Vec<String> = (0..d2).map(|i| format!("b{i}")).collect();
    let mut std_d = Matrix::zeros(d2, d1);
    for k in 0..rank {
        std_d.set(k, k, q(1));
    }
    let dmat = &(&random_invertible(rng, d2) * &std_d) * &random_invertible(rng, d1);
    let mut prod = vec![vec![vec![Q::zero(); d2]; d1]; d1];
    for row in prod.iter_mut() {
        for entry in row.iter_mut() {
            for c in entry.iter_mut() {
                if rng.gen_bool(0.5) {
                    *c = small(rng, 2);
                }
            }
        }
    }
    if !exterior {
        let space =
            GradedSpace::from_labels([(1, v1), (2, v2)].into_iter().collect()).expect("distinct");
        let basis = Basis::suspend(&space);
        let d =
            GradedMap::from_blocks(&space, 1, [(1, dmat)].into_iter().collect()).expect("shape");
        let mut product = MultiMap::new();
        for (i, row) in prod.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                for (k, c) in entry.iter().enumerate() {
                    product.add_entry(
                        smallvec![basis.index(1, i), basis.index(1, j)],
                        basis.index(2, k),
                        c.clone(),
                    );
                }
            }
        }
        return DgAlgebra { space, d, product };
    }
    // Basis a⊗1, b⊗1 and a⊗y (degree 0), b⊗y (degree 1).
    let ay: Vec<String> = (0..d1).map(|i| format!("a{i}y")).collect();
    let by: Vec<String> = (0..d2).map(|i| format!("b{i}y")).collect();
    let mut deg1 = v1.clone();
    deg1.extend(by.iter().cloned());
    let space = GradedSpace::from_labels([(0, ay), (1, deg1), (2, v2)].into_iter().collect())
        .expect("distinct");
    let basis = Basis::suspend(&space);
    let mut d = GradedMap::zero(&space, 1);
    for i in 0..d1 {
        for k in 0..d2 {
            let c = dmat.get(k, i).clone();
            // d(a⊗1) = da⊗1 and d(a⊗y) = da⊗y.
            d.set_entry(1, k, i, c.clone());
            d.set_entry(0, d1 + k, i, c);
        }
    }
    let a = |i: usize| basis.index(1, i);
    let ay = |i: usize| basis.index(0, i);
    let b = |k: usize| basis.index(2, k);
    let by = |k: usize| basis.index(1, d1 + k);
    let mut product = MultiMap::new();
    for (i, row) in prod.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            for (k, c) in entry.iter().enumerate() {
                // (a⊗1)(a'⊗1) = aa'⊗1; (a⊗1)(a'⊗y) = aa'⊗y;
                // (a⊗y)(a'⊗1) = (-1)^{|y||a'|} aa'⊗y = -aa'⊗y.
                product.add_entry(smallvec![a(i), a(j)], b(k), c.clone());
                product.add_entry(smallvec![a(i), ay(j)], by(k), c.clone());
                product.add_entry(smallvec![ay(i), a(j)], by(k), -c.clone());
            }
        }
    }
    DgAlgebra { space, d, product }
}

/// Random degree-0 A∞ automorphism of `a`: `f_1 = 1 + N` with `N` sparse
/// and strictly lower triangular in each degree, sparse random higher
/// components up to arity 3.
pub fn random_iso(rng: &mut ChaCha8Rng, a: &AInfStructure) -> AInfMorphism {
    let basis = &a.basis;
    let blocks = a.space().degrees().map(|n| {
        let k = a.space().dim(n);
        let mut m = Matrix::identity(k);
        for i in 0..k {
            for j in 0..i {
                if rng.gen_bool(0.3) {
                    m.set(i, j, small(rng, 2));
                }
            }
        }
        (n, m)
    });
    let f1 = GradedMap::from_blocks(a.space(), 0, blocks.collect()).expect("square blocks");
    let mut f = AInfMorphism::identity(a);
    for (i, col) in basis.columns_of(&f1).into_iter().enumerate() {
        f.comps[0].set(smallvec![i as Idx], col);
    }
    for n in 2..=a.cap.min(3) {
        for w in basis.words(n) {
            let out = basis.word_sdeg(&w);
            for o in basis.indices().filter(|&o| basis.sdeg(o) == out) {
                if rng.gen_bool(0.15) {
                    f.comps[n - 1].add_entry(w.clone(), o, small(rng, 2));
                }
            }
        }
    }
    f
}

/// The structure `F B F⁻¹`: `b'_n = pr_1 F̂ B Ĝ` with `G = F⁻¹`.
pub fn push_forward(a: &AInfStructure, f: &AInfMorphism) -> AInfStructure {
    let g = f.inverse().expect("f_1 invertible");
    let mut out = AInfStructure::zero(a.basis.clone(), a.cap);
    for n in 1..=a.cap {
        for u in a.basis.words(n) {
            if !a.basis.has_sdeg(a.basis.word_sdeg(&u) + 1) {
                continue;
            }
            let bg = a.coder(&g.extend(&u), 1);
            let v: Vec<(Idx, Q)> = crate::ainf::tensor::svec_from_map(f.pr1_apply(&bg));
            out.ops[n - 1].set(u, v);
        }
    }
    out
}

/// Adds an acyclic pair `c → dc` in degrees `n`, `n + 1` with no higher
/// operations.
pub fn with_contractible_pair(a: &AInfStructure, n: i32) -> AInfStructure {
    let mut basis_map = a.space().basis().clone();
    basis_map.entry(n).or_default().push("c".into());
    basis_map.entry(n + 1).or_default().push("dc".into());
    let space = GradedSpace::from_labels(basis_map).expect("fresh labels");
    let basis = Basis::suspend(&space);
    let relabel = |i: Idx| basis.find(a.basis.label(i)).expect("old label");
    let mut out = AInfStructure::zero(basis.clone(), a.cap);
    for (k, op) in a.ops.iter().enumerate() {
        for (w, vals) in op.entries() {
            let w2 = w.iter().map(|&i| relabel(i)).collect();
            out.ops[k].set(
                w2,
                vals.iter().map(|(o, c)| (relabel(*o), c.clone())).collect(),
            );
        }
    }
    if a.cap > 0 {
        out.ops[0].add_entry(
            smallvec![basis.find("c").expect("added")],
            basis.find("dc").expect("added"),
            q(1),
        );
    }
    out
}
