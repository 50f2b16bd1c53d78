use std::time::Instant;

use pertalg::ainf::{enumerate_admissible_trees, transfer_module, AInfModule, AdmissibleTree};
use pertalg::gen::{massey_mirrored, random_dg_algebra, rng};
use pertalg::linear::{build_hodge, ChainComplex, HodgeData};
use pertalg::report::all_pass;

fn hodge_of(m: &AInfModule) -> HodgeData {
    build_hodge(&ChainComplex::new(m.space().clone(), m.differential()).unwrap())
}

#[test]
fn tree_counts_and_composite_of_312() {
    for i in 2..=7 {
        let trees = enumerate_admissible_trees(i).unwrap();
        assert_eq!(trees.len(), 1 << (i - 2));
        assert!(trees.iter().all(|t| t.arity() == i));
        assert!(trees.windows(2).all(|w| w[0] < w[1]));
    }
    let tree = AdmissibleTree::new(vec![3, 1, 2]).unwrap();
    assert_eq!(
        tree.formula(),
        "tm_3(id^{⊗2}⊗sm_2)(id^{⊗3}⊗sm_4)(id^{⊗6}⊗t)"
    );
}

#[test]
fn tree_sum_equals_series_to_arity_7() {
    let start = Instant::now();
    let a = massey_mirrored().structure(7);
    let m = AInfModule::regular(&a);
    let tr = transfer_module(&m, &hodge_of(&m), 7).expect("tree sum equals series");
    assert!(
        all_pass(&tr.reports),
        "{:?}",
        tr.reports
            .iter()
            .filter(|r| !r.passed())
            .collect::<Vec<_>>()
    );
    for n in 2..=7 {
        assert_eq!(tr.tree_sum[n - 1], tr.minimal.ops[n - 1], "arity {n}");
    }
    assert!(!tr.minimal.ops[2].is_zero());
    eprintln!("arity 7 module transfer: {:?}", start.elapsed());
}

#[test]
fn random_modules_transfer_to_arity_5() {
    let mut nontrivial = 0;
    for seed in 0..12 {
        let mut r = rng(100 + seed);
        let a = random_dg_algebra(&mut r, 2, seed % 2 == 1).structure(5);
        let m = AInfModule::regular(&a);
        let tr =
            transfer_module(&m, &hodge_of(&m), 5).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(
            all_pass(&tr.reports),
            "seed {seed}: {:?}",
            tr.reports
                .iter()
                .filter(|r| !r.passed())
                .collect::<Vec<_>>()
        );
        if tr.minimal.ops.iter().skip(2).any(|o| !o.is_zero()) {
            nontrivial += 1;
        }
    }
    assert!(
        nontrivial >= 3,
        "only {nontrivial} modules had higher operations"
    );
}
