//! Exhaustive bounded search for nonnegative integer solutions.
//!
//! Depth-first over the variables, ordered by how many rows they occur in
//! (descending, ties by label). At each node every row touched by the branching
//! variable must keep a residual that is nonnegative, no larger than what the
//! unassigned variables can still contribute at their upper bounds, and
//! divisible by the gcd of their coefficients.

use serde::Serialize;

use super::system::LinearSystem;
use crate::group::gcd;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EffortLimits {
    pub node_budget: u64,
}

impl Default for EffortLimits {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Complete,
    /// The node budget ran out; `solutions` is a partial list.
    EffortExceeded,
}

/// `x_a` for every element index `a` (entry 0 is always 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub totals: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solutions: Vec<Solution>,
    pub nodes: u64,
    pub status: SolveStatus,
}

impl SolveOutcome {
    pub fn is_complete(&self) -> bool {
        self.status == SolveStatus::Complete
    }
}

struct Search<'a> {
    sys: &'a LinearSystem,
    order: Vec<usize>,
    /// `(row, coeff)` with positive coefficient, per ordered variable.
    touches: Vec<Vec<(usize, i64)>>,
    /// gcd of coefficients of variables at positions `depth..`, per row.
    suffix_gcd: Vec<Vec<i64>>,
    residual: Vec<i64>,
    reach: Vec<i64>,
    values: Vec<i64>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    solutions: Vec<Solution>,
}

impl Search<'_> {
    fn dfs(&mut self, depth: usize) {
        if depth == self.order.len() {
            let mut totals = vec![0; self.sys.group_order];
            for (pos, &v) in self.order.iter().enumerate() {
                totals[self.sys.variables[v]] = self.values[pos];
            }
            self.solutions.push(Solution { totals });
            return;
        }
        let v = self.order[depth];
        let ub = self.sys.upper_bounds[v];
        let mut hi = ub;
        let mut lo = 0;
        for &(r, c) in &self.touches[depth] {
            self.reach[r] -= c * ub;
            hi = hi.min(self.residual[r] / c);
            // residual - c x <= reach
            let need = self.residual[r] - self.reach[r];
            if need > 0 {
                lo = lo.max((need + c - 1) / c);
            }
        }
        for x in lo..=hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                break;
            }
            let ok = self.touches[depth].iter().all(|&(r, c)| {
                let rest = self.residual[r] - c * x;
                match self.suffix_gcd[depth + 1][r] {
                    0 => rest == 0,
                    g => rest % g == 0,
                }
            });
            if !ok {
                continue;
            }
            for &(r, c) in &self.touches[depth] {
                self.residual[r] -= c * x;
            }
            self.values[depth] = x;
            self.dfs(depth + 1);
            for &(r, c) in &self.touches[depth] {
                self.residual[r] += c * x;
            }
            if self.exhausted {
                break;
            }
        }
        for &(r, c) in &self.touches[depth] {
            self.reach[r] += c * ub;
        }
    }
}

/// Every nonnegative integer solution within the variable bounds, sorted.
pub fn solve_system(sys: &LinearSystem, limits: EffortLimits) -> SolveOutcome {
    let n = sys.variables.len();
    let empty = |nodes| SolveOutcome {
        solutions: Vec::new(),
        nodes,
        status: SolveStatus::Complete,
    };
    for r in &sys.rows {
        if r.rhs < 0 || (r.coeffs.iter().all(|&c| c == 0) && r.rhs != 0) {
            return empty(0);
        }
    }
    if sys.upper_bounds.iter().any(|&u| u < 0) {
        return empty(0);
    }

    let occurrences = |v: usize| sys.rows.iter().filter(|r| r.coeffs[v] != 0).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(occurrences(v)), sys.variables[v]));

    let touches: Vec<Vec<(usize, i64)>> = order
        .iter()
        .map(|&v| {
            sys.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.coeffs[v] > 0)
                .map(|(j, r)| (j, r.coeffs[v]))
                .collect()
        })
        .collect();
    let mut suffix_gcd = vec![vec![0i64; sys.rows.len()]; n + 1];
    for pos in (0..n).rev() {
        suffix_gcd[pos] = suffix_gcd[pos + 1].clone();
        for &(r, c) in &touches[pos] {
            suffix_gcd[pos][r] = gcd(suffix_gcd[pos][r] as u64, c as u64) as i64;
        }
    }
    let reach: Vec<i64> = sys
        .rows
        .iter()
        .map(|r| {
            r.coeffs
                .iter()
                .zip(&sys.upper_bounds)
                .map(|(c, u)| c * u)
                .sum()
        })
        .collect();
    for (j, r) in sys.rows.iter().enumerate() {
        let g = suffix_gcd[0][j];
        if r.rhs > reach[j] || (g == 0 && r.rhs != 0) || (g != 0 && r.rhs % g != 0) {
            return empty(0);
        }
    }

    let mut search = Search {
        sys,
        order,
        touches,
        suffix_gcd,
        residual: sys.rows.iter().map(|r| r.rhs).collect(),
        reach,
        values: vec![0; n],
        nodes: 0,
        budget: limits.node_budget,
        exhausted: false,
        solutions: Vec::new(),
    };
    search.dfs(0);
    let mut solutions = search.solutions;
    solutions.sort();
    SolveOutcome {
        solutions,
        nodes: search.nodes,
        status: if search.exhausted {
            SolveStatus::EffortExceeded
        } else {
            SolveStatus::Complete
        },
    }
}
