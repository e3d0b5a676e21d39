//! Classification of canonical degrees by exhaustive solution of the
//! integer-linear systems attached to every group and assignment.

pub mod assignment;
pub mod solver;
pub mod system;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

pub use assignment::{enumerate_assignments, Assignment, AssignmentRecord, Assignments};
pub use solver::{solve_system, EffortLimits, Solution, SolveOutcome, SolveStatus};
pub use system::{build_system, LinearSystem, Row, RowKind, SystemTemplate};

use crate::automorphism::AutomorphismAction;
use crate::cover::{CoverData, CoverInvariants};
use crate::error::{domain, Result};
use crate::group::{enumerate_groups, FiniteAbelianGroup, GroupElement};
use crate::smooth::{check_cover_smooth, Smoothness};
use crate::target::{derive_targets, Infeasibility, TargetOutcome};

/// Default upper end of a sweep: Miyaoka-Yau with `chi(omega) = 3`, `p_g = 4`.
pub const DEFAULT_MAX_DEGREE: u32 = 216;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyConfig {
    pub dedup: bool,
    /// Skip assignments that fail a kernel relation of the pairing matrix
    /// (see [`SystemTemplate::rationally_consistent`]) without searching.
    pub prefilter: bool,
    pub node_budget: u64,
    /// Restrict the sweep to one group.
    pub group: Option<FiniteAbelianGroup>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            dedup: true,
            prefilter: true,
            node_budget: solver::DEFAULT_NODE_BUDGET,
            group: None,
        }
    }
}

impl ClassifyConfig {
    fn limits(&self) -> EffortLimits {
        EffortLimits {
            node_budget: self.node_budget,
        }
    }
}

/// First element whose computed twist differs from the assignment.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("spectrum mismatch at element index {element}: expected {expected}, found {found}")]
pub struct Mismatch {
    pub element: usize,
    pub expected: i64,
    pub found: i64,
}

/// Rebuilds the cover from the solution and checks its spectrum against the
/// assignment through the cover model, independently of the solver.
pub fn verify_solution(
    group: &FiniteAbelianGroup,
    a: &Assignment,
    s: &Solution,
) -> std::result::Result<(), Mismatch> {
    let fail = |element, found| Mismatch {
        element,
        expected: a.target(element),
        found,
    };
    if s.totals.len() != group.order() || s.totals.iter().any(|&x| x < 0) {
        return Err(fail(0, -1));
    }
    let cover = CoverData::from_totals(group, &s.totals);
    let spectrum = cover.spectrum().map_err(|_| fail(0, -1))?;
    match (0..group.order()).find(|&g| spectrum.get(g) != a.target(g)) {
        Some(g) => Err(fail(g, spectrum.get(g))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DedupMode {
    /// One witness per automorphism orbit.
    Orbit,
    /// Automorphisms unavailable; witnesses are merged when their
    /// `(t_g, x_g)` multisets agree, which may leave orbit duplicates.
    BestEffort,
    Off,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelDegree {
    pub label: GroupElement,
    pub x: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessSummary {
    pub overall: Smoothness,
    pub strata_checked: usize,
    /// Components (by label) of the first stratum that did not reduce.
    pub first_failure: Option<Vec<GroupElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub assignment: AssignmentRecord,
    pub solution: Vec<LabelDegree>,
    pub invariants: CoverInvariants,
    /// Invariants equal `(4, 0, 0, -3, d, d/2 + 9, 5d/2 + 15)`.
    pub invariants_ok: bool,
    pub smoothness: SmoothnessSummary,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Effort {
    pub assignments_tried: u64,
    /// Assignments closed by a kernel relation before any search.
    pub rejected_by_relations: u64,
    pub nodes: u64,
    /// Assignment indices (in enumeration order) whose search hit the budget.
    pub incomplete_cells: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub group: FiniteAbelianGroup,
    pub dedup: DedupMode,
    pub raw_solutions: u64,
    pub witnesses: Vec<Witness>,
    pub effort: Effort,
    /// Solver outputs that failed independent verification; always empty
    /// unless something is broken.
    pub verification_failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: u32,
    pub target: Option<Vec<i64>>,
    pub infeasibility: Option<Infeasibility>,
    pub feasible: bool,
    /// False if any cell exceeded its node budget.
    pub complete: bool,
    pub groups: Vec<GroupReport>,
    pub flags: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl DegreeReport {
    pub fn witness_count(&self) -> usize {
        self.groups.iter().map(|g| g.witnesses.len()).sum()
    }

    pub fn any_smooth(&self) -> bool {
        self.witnesses()
            .any(|w| w.smoothness.overall == Smoothness::Smooth)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.groups.iter().flat_map(|g| g.witnesses.iter())
    }

    pub fn nodes(&self) -> u64 {
        self.groups.iter().map(|g| g.effort.nodes).sum()
    }
}

pub const FLAG_SMOOTHNESS_UNSUPPORTED: &str =
    "smoothness unsupported / terminality not established";

pub fn expected_invariants(d: i64) -> CoverInvariants {
    CoverInvariants {
        p_g: 4,
        q: 0,
        h2: 0,
        chi_o: -3,
        k3: d,
        p2: d / 2 + 9,
        p3: 5 * d / 2 + 15,
    }
}

/// Result of solving one assignment, with solutions merged up to the
/// automorphisms that fix the assignment.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub assignment: Assignment,
    pub outcome: SolveOutcome,
    pub distinct: Vec<Solution>,
}

/// Solves one assignment. When `action` is given, solutions related by an
/// automorphism preserving the assignment are merged (keeping the
/// lexicographically least image).
pub fn solve_cell(
    template: &SystemTemplate,
    action: Option<&AutomorphismAction>,
    a: &Assignment,
    limits: EffortLimits,
) -> CellResult {
    let system = template.instantiate(a);
    let outcome = solve_system(&system, limits);
    let distinct = match action {
        Some(action) if outcome.solutions.len() > 1 => {
            // s relabels a solution with assignment t into one with t o s*,
            // so the relevant maps are adjoints of the pushforward stabilizer
            let stab: Vec<_> = action
                .stabilizer(a.targets())
                .iter()
                .map(|b| b.adjoint())
                .collect();
            let reps: BTreeSet<Vec<i64>> = outcome
                .solutions
                .iter()
                .map(|s| {
                    stab.iter()
                        .map(|sigma| sigma.push_forward(&s.totals))
                        .min()
                        .expect("stabilizer contains the identity")
                })
                .collect();
            reps.into_iter().map(|totals| Solution { totals }).collect()
        }
        _ => outcome.solutions.clone(),
    };
    CellResult {
        assignment: a.clone(),
        outcome,
        distinct,
    }
}

fn witness(group: &FiniteAbelianGroup, a: &Assignment, s: &Solution) -> Result<Witness> {
    let cover = CoverData::from_totals(group, &s.totals);
    let invariants = cover.invariants()?;
    let smooth = check_cover_smooth(&cover);
    let labels = |comps: &[usize]| {
        comps
            .iter()
            .map(|&c| cover.components()[c].label.clone())
            .collect()
    };
    Ok(Witness {
        assignment: a.record(group),
        solution: cover
            .components()
            .iter()
            .map(|c| LabelDegree {
                label: c.label.clone(),
                x: c.degree,
            })
            .collect(),
        invariants,
        invariants_ok: invariants == expected_invariants(group.order() as i64),
        smoothness: SmoothnessSummary {
            overall: smooth.overall,
            strata_checked: smooth.strata.len(),
            first_failure: smooth.first_failure().map(|f| labels(&f.components)),
        },
    })
}

/// Sweeps every assignment on one group.
pub fn classify_group(group: &FiniteAbelianGroup, config: &ClassifyConfig) -> Result<GroupReport> {
    let d = group.order() as u32;
    let target = match derive_targets(d)? {
        TargetOutcome::Feasible(t) => t,
        TargetOutcome::Infeasible(why) => {
            return Err(domain(format!("degree {d} is infeasible: {why}")))
        }
    };
    let assignments = enumerate_assignments(group, &target, config.dedup)?;
    let action = if config.dedup {
        AutomorphismAction::new(group).ok()
    } else {
        None
    };
    let dedup = match (config.dedup, &action) {
        (false, _) => DedupMode::Off,
        (true, Some(_)) => DedupMode::Orbit,
        (true, None) => DedupMode::BestEffort,
    };
    let assignments: Vec<Assignment> = assignments.collect();
    let template = SystemTemplate::new(group);
    let limits = config.limits();
    let cells: Vec<Option<CellResult>> = assignments
        .par_iter()
        .map(|a| {
            (!config.prefilter || template.rationally_consistent(a))
                .then(|| solve_cell(&template, action.as_ref(), a, limits))
        })
        .collect();

    let mut report = GroupReport {
        group: group.clone(),
        dedup,
        raw_solutions: 0,
        witnesses: Vec::new(),
        effort: Effort {
            assignments_tried: assignments.len() as u64,
            ..Effort::default()
        },
        verification_failures: Vec::new(),
    };
    let mut best_effort_seen = BTreeSet::new();
    for (i, cell) in cells.iter().enumerate() {
        let Some(cell) = cell else {
            report.effort.rejected_by_relations += 1;
            continue;
        };
        report.effort.nodes += cell.outcome.nodes;
        report.raw_solutions += cell.outcome.solutions.len() as u64;
        if !cell.outcome.is_complete() {
            report.effort.incomplete_cells.push(i as u64);
        }
        for s in &cell.distinct {
            if let Err(m) = verify_solution(group, &cell.assignment, s) {
                report
                    .verification_failures
                    .push(format!("assignment {i}: {m}"));
                continue;
            }
            if dedup == DedupMode::BestEffort {
                let mut key: Vec<(u8, i64)> = (1..group.order())
                    .map(|g| (cell.assignment.targets()[g], s.totals[g]))
                    .collect();
                key.sort_unstable();
                if !best_effort_seen.insert(key) {
                    continue;
                }
            }
            report.witnesses.push(witness(group, &cell.assignment, s)?);
        }
    }
    Ok(report)
}

pub fn classify_degree(d: u32, config: &ClassifyConfig) -> Result<DegreeReport> {
    let start = Instant::now();
    let mut report = DegreeReport {
        degree: d,
        target: None,
        infeasibility: None,
        feasible: false,
        complete: true,
        groups: Vec::new(),
        flags: Vec::new(),
        elapsed: Duration::ZERO,
    };
    match derive_targets(d)? {
        TargetOutcome::Infeasible(why) => report.infeasibility = Some(why),
        TargetOutcome::Feasible(t) => {
            report.target = Some(t.values().to_vec());
            for group in enumerate_groups(d)? {
                if config.group.as_ref().is_some_and(|g| g != &group) {
                    continue;
                }
                report.groups.push(classify_group(&group, config)?);
            }
        }
    }
    report.complete = report
        .groups
        .iter()
        .all(|g| g.effort.incomplete_cells.is_empty());
    report.feasible = report.witness_count() > 0;
    if report.feasible && !report.any_smooth() {
        if report
            .witnesses()
            .all(|w| w.smoothness.overall == Smoothness::Unsupported)
        {
            report.flags.push(FLAG_SMOOTHNESS_UNSUPPORTED.to_string());
        } else {
            report.flags.push("no witness certified smooth".to_string());
        }
    }
    if !report.complete {
        report
            .flags
            .push("effort exceeded: classification incomplete".to_string());
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

pub fn classify_range(
    d_min: u32,
    d_max: u32,
    config: &ClassifyConfig,
) -> Result<Vec<DegreeReport>> {
    if d_min < 2 || d_min > d_max {
        return Err(domain(format!("invalid degree range [{d_min}, {d_max}]")));
    }
    (d_min..=d_max)
        .map(|d| classify_degree(d, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(&[2, 2]).unwrap()
    }

    #[test]
    fn verify_degree_four_solution() {
        let g = klein();
        let e = |c: &[u32]| g.element(c).unwrap();
        let a = Assignment::new(&g, &e(&[1, 1]), &[e(&[1, 0])], &[e(&[0, 1])]).unwrap();
        let good = Solution {
            totals: vec![0, 4, 6, 0],
        };
        assert!(verify_solution(&g, &a, &good).is_ok());
        let bad = Solution {
            totals: vec![0, 4, 6, 1],
        };
        assert!(verify_solution(&g, &a, &bad).is_err());
    }

    #[test]
    fn degree_four_systems() {
        let g = klein();
        let e = |c: &[u32]| g.element(c).unwrap();
        let a = Assignment::new(&g, &e(&[1, 1]), &[e(&[1, 0])], &[e(&[0, 1])]).unwrap();
        let out = solve_system(&build_system(&g, &a), EffortLimits::default());
        assert_eq!(
            out.solutions,
            vec![Solution {
                totals: vec![0, 4, 6, 0]
            }]
        );

        // t(1,0) = 5, t(0,1) = 2, t(1,1) = 3
        let b = Assignment::new(&g, &e(&[1, 0]), &[e(&[1, 1])], &[e(&[0, 1])]).unwrap();
        let out = solve_system(&build_system(&g, &b), EffortLimits::default());
        // x_(0,1) = 0, x_(1,0) = 6, x_(1,1) = 4
        assert_eq!(
            out.solutions,
            vec![Solution {
                totals: vec![0, 0, 6, 4]
            }]
        );
    }

    #[test]
    fn small_degrees() {
        let cfg = ClassifyConfig::default();
        let r2 = classify_degree(2, &cfg).unwrap();
        assert!(r2.feasible);
        assert_eq!(r2.witness_count(), 1);
        assert_eq!(
            r2.groups[0].witnesses[0].smoothness.overall,
            Smoothness::Smooth
        );

        let r3 = classify_degree(3, &cfg).unwrap();
        assert!(!r3.feasible);
        assert_eq!(r3.infeasibility, Some(Infeasibility::P2NonIntegral));

        let r6 = classify_degree(6, &cfg).unwrap();
        assert!(r6.feasible);
        assert!(r6.flags.iter().any(|f| f == FLAG_SMOOTHNESS_UNSUPPORTED));
    }

    #[test]
    fn range_validation() {
        assert!(classify_range(1, 4, &ClassifyConfig::default()).is_err());
        assert!(classify_range(5, 4, &ClassifyConfig::default()).is_err());
    }
}
