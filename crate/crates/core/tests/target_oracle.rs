use abcover::target::{derive_targets, derive_targets_oracle, TargetOutcome};

#[test]
fn closed_form_agrees_with_enumeration() {
    for d in 2..=12 {
        let oracle = derive_targets_oracle(d).unwrap();
        match derive_targets(d).unwrap() {
            TargetOutcome::Feasible(t) => {
                assert_eq!(oracle.matches, vec![t], "d = {d}");
                // four 4's need at least four twists, i.e. d - 1 >= 4
                assert_eq!(oracle.four_fours_candidates > 0, d >= 6, "d = {d}");
                assert_eq!(
                    oracle.four_fours_rejected_by_p2 + oracle.four_fours_rejected_by_p3,
                    oracle.four_fours_candidates,
                    "d = {d}"
                );
            }
            TargetOutcome::Infeasible(_) => {
                assert!(oracle.matches.is_empty(), "d = {d}");
                assert!(oracle.integrality_failed);
            }
        }
    }
}

#[test]
fn oracle_refuses_large_degrees() {
    assert!(derive_targets_oracle(13).is_err());
}
