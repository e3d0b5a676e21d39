//! The JSON classification report and its CSV summary.

use std::io::Write;

use abcover::bounds::{
    case_bound, chi_upper_bound, equality_fingerprint, my_degree_bound, BoundCase, InvariantTuple,
};
use abcover::classify::{ClassifyConfig, DegreeReport};
use abcover::fixtures::{verify_fixtures, FixtureCheck};
use serde::Serialize;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// JSON schema for [`ReportDocument`], shipped with the crate.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub min_degree: u32,
    pub max_degree: u32,
    pub group: Option<String>,
    pub dedup: bool,
    pub prefilter: bool,
    pub node_budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub degree: u32,
    pub feasible: bool,
    pub witnesses: usize,
    /// Some witness reduces to smooth.
    pub smooth: bool,
    pub complete: bool,
}

impl From<&DegreeReport> for SummaryRow {
    fn from(r: &DegreeReport) -> Self {
        Self {
            degree: r.degree,
            feasible: r.feasible,
            witnesses: r.witness_count(),
            smooth: r.any_smooth(),
            complete: r.complete,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRecord {
    pub check: String,
    pub input: InvariantTuple,
    /// `None` when the bound does not apply to the input.
    pub value: Option<i64>,
}

/// Evaluates the bound chain on the inputs that attain each bound.
pub fn bounds_audit() -> Vec<BoundsRecord> {
    let base = InvariantTuple::new(4, 2, 5, 360, true);
    let dim1 = InvariantTuple {
        p_g: 6,
        q: 3,
        chi_omega: 6,
        k3: 192,
        base_point_free: true,
        dim_y: Some(1),
        p_g_fiber: Some(3),
    };
    let dim2 = InvariantTuple {
        q: 3,
        chi_omega: 4,
        k3: 288,
        dim_y: Some(2),
        ..base
    };
    vec![
        BoundsRecord {
            check: "my_degree_bound".into(),
            input: base,
            value: my_degree_bound(&base).ok(),
        },
        BoundsRecord {
            check: "case_bound q_le_2".into(),
            input: base,
            value: case_bound(BoundCase::QLe2, &base).ok(),
        },
        BoundsRecord {
            check: "case_bound albanese_dim_ge_2".into(),
            input: dim2,
            value: case_bound(BoundCase::AlbaneseDimGe2, &dim2).ok(),
        },
        BoundsRecord {
            check: "case_bound albanese_dim_1".into(),
            input: dim1,
            value: case_bound(BoundCase::AlbaneseDim1, &dim1).ok(),
        },
        BoundsRecord {
            check: "chi_upper_bound".into(),
            input: base,
            value: chi_upper_bound(base.p_g, base.q),
        },
        BoundsRecord {
            check: "equality_fingerprint".into(),
            input: base,
            value: Some(equality_fingerprint(&base) as i64),
        },
    ]
}

#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub config: ConfigEcho,
    pub summary: Vec<SummaryRow>,
    pub degrees: &'a [DegreeReport],
    pub fixtures: Vec<FixtureCheck>,
    pub bounds: Vec<BoundsRecord>,
}

impl<'a> ReportDocument<'a> {
    pub fn new(min: u32, max: u32, config: &ClassifyConfig, degrees: &'a [DegreeReport]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool: "abcover",
            tool_version: env!("CARGO_PKG_VERSION"),
            config: ConfigEcho {
                min_degree: min,
                max_degree: max,
                group: config.group.as_ref().map(|g| g.to_string()),
                dedup: config.dedup,
                prefilter: config.prefilter,
                node_budget: config.node_budget,
            },
            summary: degrees.iter().map(SummaryRow::from).collect(),
            degrees,
            fixtures: verify_fixtures(),
            bounds: bounds_audit(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn write_csv(rows: &[SummaryRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
