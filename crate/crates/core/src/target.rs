//! The forced spectrum of a canonical abelian cover of degree `d`.
//!
//! If `K_X` is the pullback of a hyperplane, `p_g = 4`, `P_2 = d/2 + 9` and
//! `P_3 = 5d/2 + 15` pin the nonzero twists down to one `5`, `d/2 - 1`
//! threes and `d/2 - 1` twos.

use std::fmt;

use serde::Serialize;

use crate::cohomology::h0_p3;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpectrumTarget {
    degree: u32,
    /// The `d - 1` nonzero values, descending.
    values: Vec<i64>,
}

impl SpectrumTarget {
    fn canonical(degree: u32) -> Self {
        let half = (degree / 2 - 1) as usize;
        let mut values = vec![5];
        values.extend(std::iter::repeat_n(3, half));
        values.extend(std::iter::repeat_n(2, half));
        Self { degree, values }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of elements carrying target 3 (equally, target 2).
    pub fn pair_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == 3).count()
    }
}

impl fmt::Display for SpectrumTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Infeasibility {
    /// `P_2 = d/2 + 9` is not an integer.
    P2NonIntegral,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::P2NonIntegral => f.write_str("P_2 non-integral"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetOutcome {
    Feasible(SpectrumTarget),
    Infeasible(Infeasibility),
}

impl TargetOutcome {
    pub fn feasible(&self) -> Option<&SpectrumTarget> {
        match self {
            TargetOutcome::Feasible(t) => Some(t),
            TargetOutcome::Infeasible(_) => None,
        }
    }
}

pub fn derive_targets(d: u32) -> Result<TargetOutcome> {
    if d < 2 {
        return Err(domain(format!("degree must be at least 2, got {d}")));
    }
    Ok(if d % 2 == 1 {
        TargetOutcome::Infeasible(Infeasibility::P2NonIntegral)
    } else {
        TargetOutcome::Feasible(SpectrumTarget::canonical(d))
    })
}

/// Largest degree the brute-force oracle accepts.
pub const ORACLE_MAX_DEGREE: u32 = 12;
/// Range of twists the oracle searches, one wider than `[2, 5]` on each side.
pub const ORACLE_RANGE: (i64, i64) = (1, 6);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub degree: u32,
    pub matches: Vec<SpectrumTarget>,
    pub candidates: u64,
    /// True when the plurigenus constraints were skipped because `d` is odd.
    pub integrality_failed: bool,
    /// Multisets with exactly four 4's that satisfy the `p_g` constraints.
    pub four_fours_candidates: u64,
    /// Of those, how many the `P_2` / `P_3` constraints reject.
    pub four_fours_rejected_by_p2: u64,
    pub four_fours_rejected_by_p3: u64,
}

/// Enumerates every multiset of `d - 1` twists in [`ORACLE_RANGE`] and keeps
/// the ones compatible with `p_g = 4`, `h^3(O_X) = 4`, `P_2` and `P_3`.
pub fn derive_targets_oracle(d: u32) -> Result<OracleReport> {
    if d < 2 {
        return Err(domain(format!("degree must be at least 2, got {d}")));
    }
    if d > ORACLE_MAX_DEGREE {
        return Err(Error::EffortExceeded(format!(
            "oracle enumeration is limited to d <= {ORACLE_MAX_DEGREE}"
        )));
    }
    let (lo, hi) = ORACLE_RANGE;
    let width = (hi - lo + 1) as usize;
    let slots = (d - 1) as i64;
    let mut report = OracleReport {
        degree: d,
        matches: Vec::new(),
        candidates: 0,
        integrality_failed: d % 2 == 1,
        four_fours_candidates: 0,
        four_fours_rejected_by_p2: 0,
        four_fours_rejected_by_p3: 0,
    };
    let mut counts = vec![0i64; width];
    let mut visit = |counts: &[i64]| {
        report.candidates += 1;
        let sum = |f: &dyn Fn(i64) -> i64| -> i64 {
            counts
                .iter()
                .enumerate()
                .map(|(j, &c)| c * f(lo + j as i64))
                .sum()
        };
        if sum(&|l| h0_p3(1 - l)) != 0 || sum(&|l| h0_p3(l - 4)) != 4 {
            return;
        }
        let fours = counts[(4 - lo) as usize] == 4;
        if fours {
            report.four_fours_candidates += 1;
        }
        if d % 2 == 1 {
            return;
        }
        let d = d as i64;
        if sum(&|l| h0_p3(2 - l)) != d / 2 - 1 {
            report.four_fours_rejected_by_p2 += fours as u64;
            return;
        }
        if sum(&|l| h0_p3(3 - l)) != 5 * d / 2 - 5 {
            report.four_fours_rejected_by_p3 += fours as u64;
            return;
        }
        let mut values = Vec::new();
        for (j, &c) in counts.iter().enumerate().rev() {
            values.extend(std::iter::repeat_n(lo + j as i64, c as usize));
        }
        report.matches.push(SpectrumTarget {
            degree: d as u32,
            values,
        });
    };
    compositions(&mut counts, 0, slots, &mut visit);
    Ok(report)
}

/// Every way to write `remaining` as an ordered sum over `counts[pos..]`.
fn compositions(counts: &mut [i64], pos: usize, remaining: i64, f: &mut dyn FnMut(&[i64])) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        f(counts);
        return;
    }
    for c in 0..=remaining {
        counts[pos] = c;
        compositions(counts, pos + 1, remaining - c, f);
    }
    counts[pos] = 0;
}
