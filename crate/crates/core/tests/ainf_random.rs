use pertalg::ainf::decomposition::b1_map;
use pertalg::ainf::{
    codifferential_check, decomposition, morphism_check, perturbed_hodge_reports, transfer_minimal,
    AInfStructure,
};
use pertalg::gen::{
    massey, push_forward, random_dg_algebra, random_iso, rng, with_contractible_pair,
};
use pertalg::linear::{build_hodge, ChainComplex, HodgeData};
use pertalg::report::all_pass;

fn hodge_of(a: &AInfStructure) -> HodgeData {
    build_hodge(&ChainComplex::new(a.space().clone(), b1_map(a)).unwrap())
}

fn failures(reports: &[pertalg::IdentityReport]) -> Vec<&pertalg::IdentityReport> {
    reports.iter().filter(|r| !r.passed()).collect()
}

#[test]
fn random_transfers_satisfy_stasheff_to_arity_6() {
    let mut nontrivial = 0;
    for seed in 0..16 {
        let mut r = rng(seed);
        let alg = random_dg_algebra(&mut r, 2, seed % 2 == 1);
        let a = alg.structure(6);
        assert!(all_pass(&codifferential_check(&a)), "seed {seed}: input");
        let min = transfer_minimal(&a, &build_hodge(&alg.complex()), 6);
        assert!(
            all_pass(&min.reports),
            "seed {seed}: {:?}",
            failures(&min.reports)
        );
        assert!(
            min.structure.ops[0].is_zero(),
            "harmonious data gives a minimal model"
        );
        if min.structure.ops.iter().skip(2).any(|o| !o.is_zero()) {
            nontrivial += 1;
        }
    }
    assert!(
        nontrivial >= 4,
        "only {nontrivial} transfers had higher products"
    );
}

#[test]
fn perturbed_hodge_axioms_on_random_algebras() {
    for seed in 0..6 {
        let alg = random_dg_algebra(&mut rng(50 + seed), 2, seed % 2 == 0);
        let reports = perturbed_hodge_reports(&alg.structure(3), &build_hodge(&alg.complex()), 3);
        assert!(all_pass(&reports), "seed {seed}: {:?}", failures(&reports));
    }
}

#[test]
fn pushed_forward_structures_split_and_keep_their_minimal_model() {
    let base = with_contractible_pair(&massey().structure(5), 1);
    let reference = transfer_minimal(&base, &hodge_of(&base), 5);
    for seed in 0..5 {
        let mut f = random_iso(&mut rng(200 + seed), &base);
        let a = push_forward(&base, &f);
        f.target = a.clone();
        assert!(all_pass(&codifferential_check(&a)), "seed {seed}");
        assert!(
            all_pass(&morphism_check(&f)),
            "seed {seed}: {:?}",
            failures(&morphism_check(&f))
        );
        let dec = decomposition(&a, &hodge_of(&a), 5);
        assert!(
            all_pass(&dec.reports),
            "seed {seed}: {:?}",
            failures(&dec.reports)
        );
        assert!(all_pass(&dec.minimal.reports), "seed {seed}");
        assert_eq!(
            dec.minimal.structure.space().dims(),
            reference.structure.space().dims()
        );
        // Massey products survive, so some ternary operation is nonzero.
        assert!(!dec.minimal.structure.ops[2].is_zero(), "seed {seed}");
    }
}

#[test]
fn transfer_is_truncation_coherent() {
    let alg = random_dg_algebra(&mut rng(3), 2, true);
    let hd = build_hodge(&alg.complex());
    let hi = transfer_minimal(&alg.structure(6), &hd, 6);
    for cap in 1..6 {
        let lo = transfer_minimal(&alg.structure(6).truncate(cap), &hd, cap);
        assert_eq!(lo.structure.ops[..], hi.structure.ops[..cap], "cap {cap}");
        assert_eq!(lo.incl.comps[..], hi.incl.comps[..cap]);
        assert_eq!(lo.proj.comps[..], hi.proj.comps[..cap]);
    }
}
