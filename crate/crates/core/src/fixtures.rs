//! Shipped example covers and their verification.
//!
//! The degree 2, 4, 8, 16 and 32 covers are transcribed from explicit
//! defining equations: a component that appears in the equations for
//! `z_i, i in I` carries the label with 1 exactly at `I`, and the degrees are
//! h = 1, t = 2, q = 4, s = 6, f = 10. The degree 6 and 18 covers are solver
//! witnesses frozen from `classify` output.

use serde::Serialize;

use crate::classify::expected_invariants;
use crate::cover::{CoverData, CoverInvariants};
use crate::cover_file::parse_cover;
use crate::group::FiniteAbelianGroup;
use crate::smooth::{check_cover_smooth, Smoothness};
use crate::target::derive_targets;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub degree: u32,
    pub source: &'static str,
    pub expected_smoothness: Smoothness,
    /// True for the covers given by explicit equations (as opposed to solver
    /// witnesses).
    pub explicit: bool,
}

impl Fixture {
    pub fn cover(&self) -> CoverData {
        parse_cover(self.source).expect("shipped fixture parses")
    }
}

macro_rules! fixture {
    ($name:literal, $deg:literal, $file:literal, $smooth:expr, $explicit:literal) => {
        Fixture {
            name: $name,
            degree: $deg,
            source: include_str!(concat!("../fixtures/", $file)),
            expected_smoothness: $smooth,
            explicit: $explicit,
        }
    };
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        fixture!("degree-2", 2, "degree02.cover", Smoothness::Smooth, true),
        fixture!("degree-4", 4, "degree04.cover", Smoothness::Smooth, true),
        fixture!("degree-8", 8, "degree08.cover", Smoothness::Smooth, true),
        fixture!("degree-16", 16, "degree16.cover", Smoothness::Smooth, true),
        fixture!("degree-32", 32, "degree32.cover", Smoothness::Smooth, true),
        fixture!(
            "degree-6",
            6,
            "degree06.cover",
            Smoothness::Unsupported,
            false
        ),
        fixture!(
            "degree-18",
            18,
            "degree18.cover",
            Smoothness::Unsupported,
            false
        ),
    ]
}

pub fn find_fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub degree: u32,
    pub group: Option<FiniteAbelianGroup>,
    /// Nonzero twists, descending.
    pub spectrum: Vec<i64>,
    pub spectrum_ok: bool,
    pub invariants: Option<CoverInvariants>,
    pub invariants_ok: bool,
    pub smoothness: Option<Smoothness>,
    pub smoothness_ok: bool,
    /// First failing check, if any.
    pub failure: Option<String>,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs every check on a cover and records the first failure.
pub fn verify_cover(
    name: &str,
    cover: &CoverData,
    expected_smoothness: Smoothness,
) -> FixtureCheck {
    let d = cover.degree() as u32;
    let mut check = FixtureCheck {
        name: name.to_string(),
        degree: d,
        group: Some(cover.group().clone()),
        spectrum: Vec::new(),
        spectrum_ok: false,
        invariants: None,
        invariants_ok: false,
        smoothness: None,
        smoothness_ok: false,
        failure: None,
    };
    let fail = |check: &mut FixtureCheck, msg: String| {
        if check.failure.is_none() {
            check.failure = Some(msg);
        }
    };
    if let Err(e) = cover.validate() {
        fail(&mut check, format!("validation: {e}"));
        return check;
    }
    let spectrum = cover.spectrum().expect("validated").nonzero_multiset();
    let target = derive_targets(d).ok().and_then(|t| t.feasible().cloned());
    check.spectrum_ok = target.as_ref().is_some_and(|t| t.values() == spectrum);
    if !check.spectrum_ok {
        fail(
            &mut check,
            format!("spectrum {spectrum:?} is not the canonical target for degree {d}"),
        );
    }
    check.spectrum = spectrum;
    let inv = cover.invariants().expect("validated");
    check.invariants_ok = inv == expected_invariants(d as i64);
    if !check.invariants_ok {
        fail(&mut check, format!("invariants {inv:?}"));
    }
    check.invariants = Some(inv);
    let smooth = check_cover_smooth(cover);
    check.smoothness_ok = smooth.overall == expected_smoothness;
    if !check.smoothness_ok {
        fail(
            &mut check,
            format!(
                "smoothness {:?}, expected {:?}",
                smooth.overall, expected_smoothness
            ),
        );
    }
    check.smoothness = Some(smooth.overall);
    check
}

pub fn verify_fixtures() -> Vec<FixtureCheck> {
    fixtures()
        .iter()
        .map(|f| verify_cover(f.name, &f.cover(), f.expected_smoothness))
        .collect()
}
