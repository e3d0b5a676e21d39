//! Brute-force reference solver used by the test suites.
//!
//! Visits every integer point of the box `0 <= x_v <= ub_v` and keeps the
//! ones satisfying every row. Systems sharing the same box and coefficients
//! are checked in a single pass.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::classify::LinearSystem;

/// For each system, the sorted list of solutions as per-element totals.
pub fn grid_solutions(systems: &[LinearSystem]) -> Vec<Vec<Vec<i64>>> {
    let mut by_box: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, s) in systems.iter().enumerate() {
        by_box.entry(s.upper_bounds.clone()).or_default().push(i);
    }
    let mut out = vec![Vec::new(); systems.len()];
    let mut boxes: Vec<_> = by_box.into_iter().collect();
    boxes.sort();
    for (bounds, members) in boxes {
        let first = &systems[members[0]];
        for &m in &members {
            assert!(
                systems[m]
                    .rows
                    .iter()
                    .zip(&first.rows)
                    .all(|(a, b)| a.coeffs == b.coeffs),
                "systems in one box must share coefficients"
            );
        }
        let mut by_rhs: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for &m in &members {
            by_rhs
                .entry(systems[m].rows.iter().map(|r| r.rhs).collect())
                .or_default()
                .push(m);
        }
        let found: Vec<(usize, Vec<i64>)> = (0..=bounds[0])
            .into_par_iter()
            .flat_map_iter(|x0| scan_slice(first, &bounds, x0, &by_rhs))
            .collect();
        for (m, totals) in found {
            out[m].push(totals);
        }
    }
    for v in &mut out {
        v.sort();
    }
    out
}

/// All grid points with the first variable fixed to `x0`.
fn scan_slice(
    sys: &LinearSystem,
    bounds: &[i64],
    x0: i64,
    by_rhs: &HashMap<Vec<i64>, Vec<usize>>,
) -> Vec<(usize, Vec<i64>)> {
    let n = bounds.len();
    let rows = sys.rows.len();
    let col = |v: usize| -> Vec<i64> { sys.rows.iter().map(|r| r.coeffs[v]).collect() };
    let cols: Vec<Vec<i64>> = (0..n).map(col).collect();
    let mut x = vec![0i64; n];
    x[0] = x0;
    let mut lhs: Vec<i64> = (0..rows).map(|j| cols[0][j] * x0).collect();
    let mut hits = Vec::new();
    loop {
        if let Some(ms) = by_rhs.get(&lhs) {
            let mut totals = vec![0; sys.group_order];
            for (v, &xv) in x.iter().enumerate() {
                totals[sys.variables[v]] = xv;
            }
            for &m in ms {
                hits.push((m, totals.clone()));
            }
        }
        // odometer over variables 1..n
        let mut v = n;
        loop {
            v -= 1;
            if v == 0 {
                return hits;
            }
            if x[v] < bounds[v] {
                x[v] += 1;
                for j in 0..rows {
                    lhs[j] += cols[v][j];
                }
                break;
            }
            for j in 0..rows {
                lhs[j] -= cols[v][j] * x[v];
            }
            x[v] = 0;
        }
    }
}
