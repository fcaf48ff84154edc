use std::time::Instant;

use drinfeld_core::groupverify::*;

#[test]
fn level2_trials_find_no_proper_subgroup() {
    let start = Instant::now();
    let rep = verify_prop_5_6_level2(1000, 20240601).unwrap();
    assert!(rep.passed, "{rep:?}");
    assert_eq!(rep.group_order, 3888);
    assert_eq!(rep.kernel_quotient_order, 3888);
    assert!(rep.hypotheses_satisfied > 0);
    eprintln!("{} of {} trials met the hypotheses in {:?}", rep.hypotheses_satisfied, rep.trials, start.elapsed());
}

#[test]
fn lemma_6_1_for_larger_fields() {
    for qf in [8, 16] {
        let start = Instant::now();
        let rep = verify_lemma_6_1(qf, 11).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.sl2_order, qf * (qf * qf - 1));
        assert_eq!(rep.exhaustive, qf == 8);
        eprintln!("qf = {qf}: {:?}", start.elapsed());
    }
    assert!(verify_lemma_6_1(2, 0).is_err());
}

#[test]
fn reports_are_reproducible() {
    let a = serde_json::to_string(&verify_prop_5_6_level2(50, 3).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_prop_5_6_level2(50, 3).unwrap()).unwrap();
    assert_eq!(a, b);
}
