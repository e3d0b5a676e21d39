//! `abcover` command-line driver.
//!
//! Exit codes: 0 success, 1 a verification failed (or a search ran out of
//! budget), 2 usage or input error.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use abcover::automorphism::AutomorphismAction;
use abcover::bounds::{
    case_bound, chi_upper_bound, equality_fingerprint, my_degree_bound, BoundCase, InvariantTuple,
};
use abcover::classify::{
    classify_range, enumerate_assignments, solve_cell, Assignment, ClassifyConfig, EffortLimits,
    LabelDegree, SolveStatus, SystemTemplate, DEFAULT_MAX_DEGREE,
};
use abcover::cover::CoverData;
use abcover::cover_file::parse_cover_file;
use abcover::fixtures::{find_fixture, fixtures, verify_cover, verify_fixtures, FixtureCheck};
use abcover::smooth::{check_cover_smooth, Smoothness};
use abcover::target::{derive_targets, derive_targets_oracle, TargetOutcome};
use abcover::FiniteAbelianGroup;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use report::{write_csv, ReportDocument};

/// Environment variable holding the worker count for classification.
pub const WORKERS_ENV: &str = "ABCOVER_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] abcover::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Core(abcover::Error::InvalidCover(_)) => EXIT_VERIFY,
            CliError::Core(abcover::Error::EffortExceeded(_)) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T = i32> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "abcover",
    version,
    about = "Canonical degrees of abelian covers of P^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the forced pushforward twists for a degree.
    Spectrum {
        degree: u32,
        /// Also run the brute-force enumeration (degree <= 12).
        #[arg(long)]
        oracle: bool,
    },
    /// Sweep a degree range and emit the JSON report.
    Classify(ClassifyArgs),
    /// Solve the system of a single assignment.
    Solve(SolveArgs),
    /// Check a cover file: spectrum, invariants, smoothness.
    Verify {
        cover: PathBuf,
        /// Print every stratum reduction.
        #[arg(long)]
        trace: bool,
    },
    /// Verify the shipped fixtures.
    Fixtures {
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the degree bounds for an invariant tuple.
    Bounds(BoundsArgs),
    /// Print the cohomological invariants of a cover file.
    Invariants { cover: PathBuf },
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, default_value_t = 2)]
    min: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max: u32,
    /// Restrict to one group, e.g. `2,2,2`.
    #[arg(long)]
    group: Option<FiniteAbelianGroup>,
    /// Keep automorphic duplicates.
    #[arg(long)]
    no_dedup: bool,
    /// Search every assignment, including those ruled out by kernel relations.
    #[arg(long)]
    no_prefilter: bool,
    #[arg(long, default_value_t = abcover::classify::solver::DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-degree summary as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print wall time per degree to stderr.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["fixture", "cover", "index"])))]
struct SolveArgs {
    #[arg(long)]
    group: FiniteAbelianGroup,
    /// Take the assignment from a shipped fixture, e.g. `degree-32`.
    #[arg(long)]
    fixture: Option<String>,
    /// Take the assignment from a cover file.
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Take the n-th assignment in enumeration order.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long)]
    no_dedup: bool,
    #[arg(long, default_value_t = abcover::classify::solver::DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pg: i64,
    #[arg(long)]
    q: i64,
    #[arg(long, allow_negative_numbers = true)]
    chi_omega: i64,
    #[arg(long)]
    k3: i64,
    /// The canonical system is base point free.
    #[arg(long)]
    bpf: bool,
    /// Dimension of the Albanese image.
    #[arg(long)]
    dim_y: Option<u8>,
    /// p_g of a general Albanese fiber.
    #[arg(long)]
    pg_fiber: Option<i64>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn worker_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Spectrum { degree, oracle } => spectrum(degree, oracle, out),
        Command::Classify(args) => classify(args, out, err),
        Command::Solve(args) => solve(args, out),
        Command::Verify { cover, trace } => verify(&parse_cover_file(&cover)?, trace, out),
        Command::Fixtures { json } => fixtures_cmd(json, out),
        Command::Bounds(args) => bounds(args, out),
        Command::Invariants { cover } => invariants(&parse_cover_file(&cover)?, out),
    }
}

fn spectrum(d: u32, oracle: bool, out: &mut dyn Write) -> CliResult {
    match derive_targets(d)? {
        TargetOutcome::Feasible(t) => writeln!(out, "degree {d}: {t}")?,
        TargetOutcome::Infeasible(why) => writeln!(out, "degree {d}: infeasible ({why})")?,
    }
    if oracle {
        let r = derive_targets_oracle(d)?;
        let found: Vec<String> = r.matches.iter().map(|t| t.to_string()).collect();
        writeln!(
            out,
            "oracle: {} candidates, matches [{}]",
            r.candidates,
            found.join(", ")
        )?;
        writeln!(
            out,
            "oracle: four 4's: {} candidates, {} rejected by P_2, {} by P_3",
            r.four_fours_candidates, r.four_fours_rejected_by_p2, r.four_fours_rejected_by_p3
        )?;
    }
    Ok(EXIT_OK)
}

fn classify(args: ClassifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if let Some(g) = &args.group {
        if !(args.min..=args.max).contains(&(g.order() as u32)) {
            return Err(CliError::Usage(format!(
                "group {g} has order {} outside [{}, {}]",
                g.order(),
                args.min,
                args.max
            )));
        }
    }
    let config = ClassifyConfig {
        dedup: !args.no_dedup,
        prefilter: !args.no_prefilter,
        node_budget: args.node_budget,
        group: args.group.clone(),
    };
    let (min, max) = match &args.group {
        Some(g) => (g.order() as u32, g.order() as u32),
        None => (args.min, args.max),
    };
    let reports = worker_pool()?.install(|| classify_range(min, max, &config))?;
    for r in &reports {
        let status = if !r.feasible {
            match r.infeasibility {
                Some(why) => format!("infeasible ({why})"),
                None => "infeasible (no solutions)".to_string(),
            }
        } else {
            format!(
                "feasible, {} witness(es), smooth: {}",
                r.witness_count(),
                if r.any_smooth() { "yes" } else { "no" }
            )
        };
        write!(err, "d={}: {status}", r.degree)?;
        for f in &r.flags {
            write!(err, " [{f}]")?;
        }
        if args.timing {
            write!(
                err,
                " ({:.3}s, {} nodes)",
                r.elapsed.as_secs_f64(),
                r.nodes()
            )?;
        }
        writeln!(err)?;
    }
    let doc = ReportDocument::new(min, max, &config, &reports);
    let json = doc.to_json();
    match &args.out {
        Some(path) => fs::write(path, &json)?,
        None => out.write_all(json.as_bytes())?,
    }
    if let Some(path) = &args.csv {
        write_csv(&doc.summary, fs::File::create(path)?)?;
    }
    let failures: usize = reports
        .iter()
        .flat_map(|r| &r.groups)
        .map(|g| g.verification_failures.len())
        .sum();
    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} solver output(s) failed verification"
        )));
    }
    if reports.iter().any(|r| !r.complete) {
        return Err(CliError::Verification(
            "node budget exhausted; classification incomplete".into(),
        ));
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct SolveReport {
    group: FiniteAbelianGroup,
    assignment: abcover::classify::AssignmentRecord,
    status: SolveStatus,
    nodes: u64,
    raw_solutions: usize,
    solutions: Vec<Vec<LabelDegree>>,
    /// Whether the cover the assignment came from is among the solutions.
    reference_found: Option<bool>,
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> CliResult {
    let g = args.group;
    let reference: Option<CoverData> = match (&args.fixture, &args.cover) {
        (Some(name), _) => Some(
            find_fixture(name)
                .ok_or_else(|| {
                    let names: Vec<_> = fixtures().iter().map(|f| f.name).collect();
                    CliError::Usage(format!(
                        "unknown fixture {name:?}; known: {}",
                        names.join(", ")
                    ))
                })?
                .cover(),
        ),
        (None, Some(path)) => Some(parse_cover_file(path)?),
        (None, None) => None,
    };
    let assignment = match (&reference, args.index) {
        (Some(cover), _) => {
            if cover.group() != &g {
                return Err(CliError::Usage(format!(
                    "cover is over {}, not {g}",
                    cover.group()
                )));
            }
            Assignment::from_spectrum(&cover.spectrum()?).ok_or_else(|| {
                CliError::Verification("the cover's spectrum is not a canonical target".into())
            })?
        }
        (None, Some(i)) => {
            let target = derive_targets(g.order() as u32)?;
            let target = target
                .feasible()
                .ok_or_else(|| CliError::Usage(format!("degree {} is infeasible", g.order())))?;
            enumerate_assignments(&g, target, !args.no_dedup)?
                .nth(i)
                .ok_or_else(|| CliError::Usage(format!("assignment index {i} out of range")))?
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let action = if args.no_dedup {
        None
    } else {
        AutomorphismAction::new(&g).ok()
    };
    let cell = solve_cell(
        &SystemTemplate::new(&g),
        action.as_ref(),
        &assignment,
        EffortLimits {
            node_budget: args.node_budget,
        },
    );
    let labelled = |totals: &[i64]| -> Vec<LabelDegree> {
        CoverData::from_totals(&g, totals)
            .components()
            .iter()
            .map(|c| LabelDegree {
                label: c.label.clone(),
                x: c.degree,
            })
            .collect()
    };
    let reference_found = reference.map(|c| {
        let totals = c.totals();
        cell.outcome.solutions.iter().any(|s| s.totals == totals)
    });
    let report = SolveReport {
        group: g.clone(),
        assignment: assignment.record(&g),
        status: cell.outcome.status,
        nodes: cell.outcome.nodes,
        raw_solutions: cell.outcome.solutions.len(),
        solutions: cell.distinct.iter().map(|s| labelled(&s.totals)).collect(),
        reference_found,
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    )?;
    if !cell.outcome.is_complete() {
        return Err(CliError::Verification(
            "node budget exhausted; solution list is partial".into(),
        ));
    }
    if reference_found == Some(false) {
        return Err(CliError::Verification(
            "reference cover not among the solutions".into(),
        ));
    }
    Ok(EXIT_OK)
}

fn expected_smoothness(cover: &CoverData) -> Smoothness {
    if cover.group().is_two_elementary() {
        Smoothness::Smooth
    } else {
        Smoothness::Unsupported
    }
}

fn print_check(c: &FixtureCheck, out: &mut dyn Write) -> std::io::Result<()> {
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let smooth = c
        .smoothness
        .map_or("-".to_string(), |s| format!("{s:?}").to_lowercase());
    write!(
        out,
        "{:<10} d={:<3} spectrum {:<4} invariants {:<4} smoothness {:<19} {}",
        c.name,
        c.degree,
        mark(c.spectrum_ok),
        mark(c.invariants_ok),
        smooth,
        if c.passed() { "PASS" } else { "FAIL" }
    )?;
    if let Some(f) = &c.failure {
        write!(out, " ({f})")?;
    }
    writeln!(out)
}

fn verify(cover: &CoverData, trace: bool, out: &mut dyn Write) -> CliResult {
    let check = verify_cover("cover", cover, expected_smoothness(cover));
    print_check(&check, out)?;
    if trace {
        let verdict = check_cover_smooth(cover);
        let name = |i: usize| {
            let c = &cover.components()[i];
            c.name.clone().unwrap_or_else(|| format!("[{}]", c.label))
        };
        for s in &verdict.strata {
            let comps: Vec<String> = s.components.iter().map(|&i| name(i)).collect();
            let rows: Vec<String> = s
                .matrix
                .iter()
                .map(|r| r.iter().map(u8::to_string).collect::<String>())
                .collect();
            writeln!(
                out,
                "  {} | {} | {} steps -> {:?}",
                comps.join(" "),
                rows.join(" "),
                s.reduction.steps.len(),
                s.reduction.verdict
            )?;
        }
    }
    if check.passed() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFY)
    }
}

fn fixtures_cmd(json: bool, out: &mut dyn Write) -> CliResult {
    let checks = verify_fixtures();
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&checks).expect("serializable")
        )?;
    } else {
        for c in &checks {
            print_check(c, out)?;
        }
    }
    if checks.iter().all(FixtureCheck::passed) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFY)
    }
}

fn bounds(a: BoundsArgs, out: &mut dyn Write) -> CliResult {
    let t = InvariantTuple {
        p_g: a.pg,
        q: a.q,
        chi_omega: a.chi_omega,
        k3: a.k3,
        base_point_free: a.bpf,
        dim_y: a.dim_y,
        p_g_fiber: a.pg_fiber,
    };
    if t.p_g < 4 {
        return Err(CliError::Usage(format!(
            "p_g must be at least 4, got {}",
            t.p_g
        )));
    }
    writeln!(out, "my_degree_bound: {}", my_degree_bound(&t)?)?;
    let cases: Vec<BoundCase> = if t.q <= 2 {
        vec![BoundCase::QLe2]
    } else {
        match t.dim_y {
            Some(1) => vec![BoundCase::AlbaneseDim1],
            Some(_) => vec![BoundCase::AlbaneseDimGe2],
            None => vec![BoundCase::AlbaneseDimGe2, BoundCase::AlbaneseDim1],
        }
    };
    for case in cases {
        let name = serde_json::to_value(case).expect("serializable");
        let name = name.as_str().expect("unit variant");
        match case_bound(case, &t) {
            Ok(b) => writeln!(out, "case_bound {name}: {b}")?,
            Err(e) => writeln!(out, "case_bound {name}: not applicable ({e})")?,
        }
    }
    match chi_upper_bound(t.p_g, t.q) {
        Some(b) => writeln!(out, "chi_upper_bound: {b}")?,
        None => writeln!(out, "chi_upper_bound: not applicable (q >= 3)")?,
    }
    writeln!(out, "equality_fingerprint: {}", equality_fingerprint(&t))?;
    Ok(EXIT_OK)
}

fn invariants(cover: &CoverData, out: &mut dyn Write) -> CliResult {
    let inv = cover.invariants()?;
    let summands: Vec<String> = cover
        .pushforward_summands()?
        .iter()
        .map(|l| format!("O({})", -l))
        .collect();
    writeln!(out, "group: {}", cover.group())?;
    writeln!(out, "degree: {}", cover.degree())?;
    writeln!(out, "pushforward: {}", summands.join(" + "))?;
    writeln!(out, "p_g: {}", inv.p_g)?;
    writeln!(out, "q: {}", inv.q)?;
    writeln!(out, "h2: {}", inv.h2)?;
    writeln!(out, "chi(O): {}", inv.chi_o)?;
    writeln!(out, "K^3: {}", inv.k3)?;
    writeln!(out, "P_2: {}", inv.p2)?;
    writeln!(out, "P_3: {}", inv.p3)?;
    Ok(EXIT_OK)
}
