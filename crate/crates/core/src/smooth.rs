//! Local smoothness of `(Z_2)^k` covers along branch-locus strata.
//!
//! Near a general point of the intersection of `s` branch components with
//! local equations `x_1, ..., x_s`, the cover is `z_i^2 = prod_c x_c^{a_ic}`
//! where `a_ic` is coordinate `i` of the label of component `c` (mod 2). A
//! row with a single 1 in column `c` reads `z_i^2 = x_c`; after normalization
//! `z_i` replaces `x_c` as a coordinate and every other occurrence of `x_c`
//! has an even exponent, so the row and column can be dropped. When no row is
//! a unit vector, `z_i` may be replaced by `z_i z_j`, which adds row `j` to
//! row `i` mod 2 without changing the cover. The stratum is smooth when the
//! reduction leaves only zero rows.
//!
//! Branch components are assumed smooth and in general position, so only
//! pairs (curves) and triples (points) are examined.

use serde::Serialize;

use crate::cover::CoverData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: Vec<Vec<u8>>,
    cols: usize,
}

impl ExponentMatrix {
    /// Entries are taken mod 2.
    pub fn new(rows: Vec<Vec<u8>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged exponent matrix"
        );
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|a| a & 1).collect())
            .collect();
        Self { rows, cols }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&a| a == 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalVerdict {
    Smooth,
    SingularUnresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStep {
    /// Unit row `row` with its 1 in `column`: drop both.
    Eliminate { row: usize, column: usize },
    /// Row `source` added to row `target` (generator `z_t -> z_t z_s`).
    AddRow { target: usize, source: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub verdict: LocalVerdict,
    pub steps: Vec<ReductionStep>,
}

struct Work {
    rows: Vec<Vec<u8>>,
    live_rows: Vec<bool>,
    live_cols: Vec<bool>,
    steps: Vec<ReductionStep>,
}

impl Work {
    fn ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.live_cols.len()).filter(move |&c| self.live_cols[c] && self.rows[r][c] == 1)
    }

    /// `(row, column)` pairs where the live part of the row is a unit vector.
    fn unit_rows(&self) -> Vec<(usize, usize)> {
        (0..self.rows.len())
            .filter(|&r| self.live_rows[r])
            .filter_map(|r| {
                let mut it = self.ones(r);
                match (it.next(), it.next()) {
                    (Some(c), None) => Some((r, c)),
                    _ => None,
                }
            })
            .collect()
    }

    fn add_row(&mut self, target: usize, source: usize) {
        for c in 0..self.live_cols.len() {
            self.rows[target][c] ^= self.rows[source][c];
        }
        self.steps.push(ReductionStep::AddRow { target, source });
    }

    /// Gauss-Jordan elimination on the live submatrix; returns whether any
    /// row changed.
    fn row_reduce(&mut self) -> bool {
        let before = self.steps.len();
        let mut used = vec![false; self.rows.len()];
        for c in 0..self.live_cols.len() {
            if !self.live_cols[c] {
                continue;
            }
            let Some(p) = (0..self.rows.len())
                .find(|&r| self.live_rows[r] && !used[r] && self.rows[r][c] == 1)
            else {
                continue;
            };
            used[p] = true;
            for r in 0..self.rows.len() {
                if r != p && self.live_rows[r] && self.rows[r][c] == 1 {
                    self.add_row(r, p);
                }
            }
        }
        self.steps.len() > before
    }
}

pub fn reduce_exponent_matrix(m: &ExponentMatrix) -> Reduction {
    reduce_exponent_matrix_with(m, |_| 0)
}

/// Runs the reduction, letting `pick` choose among the admissible unit rows
/// at each step (it receives the `(row, column)` candidates and returns an
/// index into them). Row additions happen only when no unit row is left.
pub fn reduce_exponent_matrix_with(
    m: &ExponentMatrix,
    mut pick: impl FnMut(&[(usize, usize)]) -> usize,
) -> Reduction {
    let mut w = Work {
        rows: m.rows.clone(),
        live_rows: vec![true; m.rows.len()],
        live_cols: vec![true; m.cols],
        steps: Vec::new(),
    };
    loop {
        let candidates = w.unit_rows();
        if candidates.is_empty() {
            if w.row_reduce() {
                continue;
            }
            break;
        }
        let (row, column) = candidates[pick(&candidates) % candidates.len()];
        w.live_rows[row] = false;
        w.live_cols[column] = false;
        w.steps.push(ReductionStep::Eliminate { row, column });
    }
    let residual_zero = (0..w.rows.len())
        .filter(|&r| w.live_rows[r])
        .all(|r| w.ones(r).next().is_none());
    Reduction {
        verdict: if residual_zero {
            LocalVerdict::Smooth
        } else {
            LocalVerdict::SingularUnresolved
        },
        steps: w.steps,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    SingularUnresolved,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumResult {
    /// Indices into the cover's component list.
    pub components: Vec<usize>,
    pub matrix: Vec<Vec<u8>>,
    pub reduction: Reduction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessVerdict {
    pub overall: Smoothness,
    /// Always true: general position of the branch components is assumed.
    pub genericity_assumed: bool,
    pub strata: Vec<StratumResult>,
}

impl SmoothnessVerdict {
    pub fn first_failure(&self) -> Option<&StratumResult> {
        self.strata
            .iter()
            .find(|s| s.reduction.verdict != LocalVerdict::Smooth)
    }
}

fn stratum_matrix(cover: &CoverData, comps: &[usize]) -> ExponentMatrix {
    let k = cover.group().rank();
    let rows = (0..k)
        .map(|i| {
            comps
                .iter()
                .map(|&c| (cover.components()[c].label.coords()[i] % 2) as u8)
                .collect()
        })
        .collect();
    ExponentMatrix::new(rows)
}

/// Checks every pair and triple of branch components of a `(Z_2)^k` cover.
pub fn check_cover_smooth(cover: &CoverData) -> SmoothnessVerdict {
    if !cover.group().is_two_elementary() {
        return SmoothnessVerdict {
            overall: Smoothness::Unsupported,
            genericity_assumed: true,
            strata: Vec::new(),
        };
    }
    let n = cover.components().len();
    let mut strata = Vec::new();
    let mut run = |comps: Vec<usize>| {
        let m = stratum_matrix(cover, &comps);
        let reduction = reduce_exponent_matrix(&m);
        strata.push(StratumResult {
            components: comps,
            matrix: m.rows,
            reduction,
        });
    };
    for a in 0..n {
        for b in a + 1..n {
            run(vec![a, b]);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                run(vec![a, b, c]);
            }
        }
    }
    let overall = if strata
        .iter()
        .all(|s| s.reduction.verdict == LocalVerdict::Smooth)
    {
        Smoothness::Smooth
    } else {
        Smoothness::SingularUnresolved
    };
    SmoothnessVerdict {
        overall,
        genericity_assumed: true,
        strata,
    }
}
