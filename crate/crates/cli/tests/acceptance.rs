//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p abcover-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use abcover::automorphism::AutomorphismAction;
use abcover::bounds::{
    case_bound, chi_upper_bound, equality_fingerprint, my_degree_bound, BoundCase, InvariantTuple,
};
use abcover::classify::{
    enumerate_assignments, expected_invariants, solve_system, EffortLimits, SystemTemplate,
    FLAG_SMOOTHNESS_UNSUPPORTED,
};
use abcover::cohomology::h;
use abcover::cover::{BranchComponent, CoverData};
use abcover::fixtures::{fixtures, verify_cover};
use abcover::oracle::grid_solutions;
use abcover::smooth::{reduce_exponent_matrix, reduce_exponent_matrix_with, ExponentMatrix};
use abcover::target::{derive_targets, derive_targets_oracle, TargetOutcome};
use abcover::{enumerate_groups, FiniteAbelianGroup};
use abcover_cli::run;
use serde_json::Value;

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("abcover").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn fixture_reproduction() -> Outcome {
    let start = Instant::now();
    let explicit: Vec<_> = fixtures().into_iter().filter(|f| f.explicit).collect();
    let degrees: Vec<u32> = explicit.iter().map(|f| f.degree).collect();
    check(degrees == [2, 4, 8, 16, 32], || {
        format!("degrees {degrees:?}")
    })?;
    for f in &explicit {
        let c = verify_cover(f.name, &f.cover(), f.expected_smoothness);
        check(c.passed(), || format!("{}: {:?}", f.name, c.failure))?;
        let d = i64::from(f.degree);
        let inv = c.invariants.expect("checked");
        check(
            (inv.p_g, inv.q, inv.chi_o, inv.k3, inv.p2, inv.p3)
                == (4, 0, -3, d, d / 2 + 9, 5 * d / 2 + 15)
                && inv == expected_invariants(d),
            || format!("{}: {inv:?}", f.name),
        )?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("5 covers, {:.2?}", start.elapsed()))
}

fn target_oracle_agreement() -> Outcome {
    let start = Instant::now();
    for d in 2..=12u32 {
        let oracle = derive_targets_oracle(d).map_err(|e| e.to_string())?;
        match derive_targets(d).map_err(|e| e.to_string())? {
            TargetOutcome::Feasible(t) => {
                check(d % 2 == 0 && oracle.matches == [t], || {
                    format!("d = {d}: {:?}", oracle.matches)
                })?;
                check(
                    (oracle.four_fours_candidates > 0) == (d >= 6)
                        && oracle.four_fours_rejected_by_p2 + oracle.four_fours_rejected_by_p3
                            == oracle.four_fours_candidates,
                    || format!("d = {d}: four 4's not rejected"),
                )?;
            }
            TargetOutcome::Infeasible(_) => {
                check(d % 2 == 1 && oracle.matches.is_empty(), || {
                    format!("d = {d}: {:?}", oracle.matches)
                })?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("d = 2..12, {:.2?}", start.elapsed()))
}

fn desk_classification(report: &str) -> Outcome {
    let v: Value = serde_json::from_str(report).map_err(|e| e.to_string())?;
    let degrees = v["degrees"].as_array().ok_or("no degrees")?;
    let mut feasible = BTreeSet::new();
    for d in degrees {
        let n = d["degree"].as_u64().ok_or("bad degree")?;
        check(d["complete"] == true, || format!("d = {n} incomplete"))?;
        if d["feasible"] == true {
            feasible.insert(n);
        }
        let flagged = d["flags"]
            .as_array()
            .is_some_and(|f| f.iter().any(|s| s == FLAG_SMOOTHNESS_UNSUPPORTED));
        check(flagged == (n == 6 || n == 18), || {
            format!("d = {n}: flags {}", d["flags"])
        })?;
    }
    let expect: BTreeSet<u64> = [2, 4, 6, 8, 16, 18].into();
    check(feasible == expect, || format!("feasible {feasible:?}"))?;
    Ok(format!("feasible {feasible:?}"))
}

fn degree_32_witness() -> Outcome {
    let start = Instant::now();
    let (code, out) = cli(&["solve", "--group", "2,2,2,2,2", "--fixture", "degree-32"]);
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    check(code == 0 && v["status"] == "complete", || {
        format!("exit {code}, status {}", v["status"])
    })?;
    check(v["reference_found"] == true, || {
        "reference solution not found".into()
    })?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{} nodes, {:.2?}", v["nodes"], start.elapsed()))
}

fn solver_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut systems_checked = 0;
    for d in 2..=8u32 {
        let Some(target) = derive_targets(d)
            .map_err(|e| e.to_string())?
            .feasible()
            .cloned()
        else {
            continue;
        };
        for g in enumerate_groups(d).map_err(|e| e.to_string())? {
            let template = SystemTemplate::new(&g);
            let systems: Vec<_> = enumerate_assignments(&g, &target, false)
                .map_err(|e| e.to_string())?
                .map(|a| template.instantiate(&a))
                .collect();
            for (sys, expect) in systems.iter().zip(grid_solutions(&systems)) {
                let out = solve_system(sys, EffortLimits::default());
                let got: BTreeSet<Vec<i64>> =
                    out.solutions.iter().map(|s| s.totals.clone()).collect();
                let expect: BTreeSet<Vec<i64>> = expect.into_iter().collect();
                check(out.is_complete() && got == expect, || {
                    format!("{g}: mismatch")
                })?;
                systems_checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{systems_checked} systems, {:.2?}",
        start.elapsed()
    ))
}

fn bounds_audit() -> Outcome {
    let base = InvariantTuple::new(4, 2, 5, 360, true);
    let dim2 = InvariantTuple {
        q: 3,
        chi_omega: 4,
        k3: 288,
        dim_y: Some(2),
        ..base
    };
    let dim1 = InvariantTuple {
        p_g: 6,
        q: 3,
        chi_omega: 6,
        k3: 192,
        dim_y: Some(1),
        p_g_fiber: Some(3),
        ..base
    };
    let got = (
        my_degree_bound(&base).ok(),
        case_bound(BoundCase::AlbaneseDimGe2, &dim2).ok(),
        case_bound(BoundCase::AlbaneseDim1, &dim1).ok(),
        chi_upper_bound(4, 2),
        equality_fingerprint(&base),
    );
    check(
        got == (Some(360), Some(288), Some(192), Some(5), true),
        || format!("{got:?}"),
    )?;
    Ok("360 / 288 / 192, chi <= 5, fingerprint".into())
}

fn serre_duality() -> Result<(), String> {
    for n in 1..=4 {
        for m in -10..=10 {
            for i in 0..=n {
                let lhs = h(i, n, m).map_err(|e| e.to_string())?;
                let rhs = h(n - i, n, -m - n - 1).map_err(|e| e.to_string())?;
                check(lhs == rhs, || format!("h^{i}(P^{n}, O({m}))"))?;
            }
        }
    }
    Ok(())
}

fn aut_equivariance() -> Result<(), String> {
    for factors in [&[2, 2][..], &[2, 2, 2], &[2, 4], &[6], &[3, 3], &[8]] {
        let g = FiniteAbelianGroup::new(factors).map_err(|e| e.to_string())?;
        let comps = g
            .nonzero_elements()
            .zip([2i64, 1, 3, 4].iter().cycle())
            .map(|(a, &d)| BranchComponent::new(a, d))
            .collect();
        let cover = CoverData::new(g.clone(), comps);
        let Ok(before) = cover.spectrum() else {
            continue;
        };
        let action = AutomorphismAction::new(&g).map_err(|e| format!("{e:?}"))?;
        let mut result = Ok(());
        action.for_each(|s| {
            if result.is_err() {
                return;
            }
            let after = cover.relabel(s).spectrum().expect("relabel keeps validity");
            if (0..g.order()).any(|i| after.get(i) != before.get(s.apply_adjoint(i))) {
                result = Err(format!("{g}: spectrum not equivariant"));
            }
        });
        result?;
    }
    Ok(())
}

fn reduction_order_independence() -> Result<(), String> {
    for k in 1..=4usize {
        for s in 1..=3usize {
            for bits in 0u32..1 << (k * s) {
                let rows: Vec<Vec<u8>> = (0..k)
                    .map(|i| (0..s).map(|c| ((bits >> (i * s + c)) & 1) as u8).collect())
                    .collect();
                let m = ExponentMatrix::new(rows.clone());
                let first = reduce_exponent_matrix(&m).verdict;
                for shift in 1..4 {
                    let other = reduce_exponent_matrix_with(&m, |c| c.len() - 1 - shift % c.len());
                    check(other.verdict == first, || format!("{rows:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn property_suites(first_run: &str) -> Outcome {
    serre_duality().map_err(|e| format!("Serre duality: {e}"))?;
    aut_equivariance().map_err(|e| format!("equivariance: {e}"))?;
    reduction_order_independence().map_err(|e| format!("reduction order: {e}"))?;
    let (_, second) = cli(&["classify", "--min", "2", "--max", "20"]);
    check(second == first_run, || {
        "repeated classification differs".into()
    })?;
    Ok("duality, equivariance, reduction order, determinism".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (code, sweep) = cli(&["classify", "--min", "2", "--max", "20"]);
    let sweep_time = start.elapsed();
    let sweep = if code == 0 {
        Ok(sweep)
    } else {
        Err(format!("classify exited {code}"))
    };

    let results: Vec<(&str, Outcome)> = vec![
        ("fixture reproduction", fixture_reproduction()),
        ("twist target oracle", target_oracle_agreement()),
        (
            "classification 2..20",
            sweep
                .as_deref()
                .map_err(Clone::clone)
                .and_then(desk_classification)
                .map(|s| format!("{s}, {sweep_time:.2?}")),
        ),
        ("degree-32 witness", degree_32_witness()),
        ("solver oracle equivalence", solver_oracle_equivalence()),
        ("bounds audit", bounds_audit()),
        (
            "property suites",
            sweep
                .as_deref()
                .map_err(Clone::clone)
                .and_then(property_suites),
        ),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
