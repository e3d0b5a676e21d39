//! The integer-linear system attached to an assignment.
//!
//! Unknowns are the branch degrees `x_a` for nonzero `a`. With `t` the
//! assigned targets, the rows are
//!
//! ```text
//! (coordinate i)  sum_a a_i x_a                        = n_i t(e_i)
//! (element g)     sum_a floor(sum_i g_i a_i / n_i) x_a = sum_i g_i t(e_i) - t(g)
//! ```
//!
//! All coefficients are nonnegative, and every unknown is bounded by some
//! coordinate row.
//!
//! Together the rows say `t(g) = sum_a frac(<g, a>) x_a` for every nonzero
//! `g`. The template keeps an integer basis of the left kernel of that
//! pairing matrix: an assignment whose targets are not orthogonal to it has no
//! rational solution, let alone a nonnegative integer one.

use serde::Serialize;

use super::assignment::Assignment;
use crate::group::FiniteAbelianGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// Coordinate row for basis index `i`.
    Coordinate(usize),
    /// Row for the element with this index.
    Element(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub kind: RowKind,
    /// One coefficient per variable, in variable order.
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    /// Size of the group; solutions are reported as totals over all elements.
    pub group_order: usize,
    /// Element index of each variable's label, ascending.
    pub variables: Vec<usize>,
    pub rows: Vec<Row>,
    pub upper_bounds: Vec<i64>,
}

/// Assignment-independent part of the system for one group.
#[derive(Debug, Clone)]
pub struct SystemTemplate {
    group: FiniteAbelianGroup,
    coordinate_rows: Vec<Vec<i64>>,
    element_rows: Vec<Vec<i64>>,
    /// `None` if the kernel computation overflowed.
    relations: Option<Vec<Vec<i128>>>,
}

impl SystemTemplate {
    pub fn new(group: &FiniteAbelianGroup) -> Self {
        let labels: Vec<_> = group.nonzero_elements().collect();
        let coordinate_rows = (0..group.rank())
            .map(|i| labels.iter().map(|a| a.coords()[i] as i64).collect())
            .collect();
        let element_rows = group
            .nonzero_elements()
            .map(|g| labels.iter().map(|a| group.floor_pairing(&g, a)).collect())
            .collect();
        // transpose of e * frac(<g, a>), so its kernel is the left kernel
        let pairing_t: Vec<Vec<i128>> = labels
            .iter()
            .map(|a| {
                group
                    .nonzero_elements()
                    .map(|g| {
                        let (num, den) = group.pairing_fraction(&g, a);
                        num.rem_euclid(den) as i128
                    })
                    .collect()
            })
            .collect();
        Self {
            group: group.clone(),
            coordinate_rows,
            element_rows,
            relations: integer_kernel(pairing_t),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Integer vectors `y` over the nonzero elements with
    /// `sum_g y_g frac(<g, a>) = 0` for every `a`, or `None` if unavailable.
    pub fn relations(&self) -> Option<&[Vec<i128>]> {
        self.relations.as_deref()
    }

    /// False when the targets of `a` violate a kernel relation, in which case
    /// the system has no solution at all. True is inconclusive.
    pub fn rationally_consistent(&self, a: &Assignment) -> bool {
        let Some(rel) = &self.relations else {
            return true;
        };
        rel.iter().all(|y| {
            y.iter()
                .enumerate()
                .map(|(j, &c)| c * a.target(j + 1) as i128)
                .sum::<i128>()
                == 0
        })
    }

    pub fn instantiate(&self, a: &Assignment) -> LinearSystem {
        let g = &self.group;
        let factors = g.invariant_factors();
        let basis_targets: Vec<i64> = (0..g.rank())
            .map(|i| a.target(g.index_of(&g.basis(i))))
            .collect();
        let mut rows = Vec::with_capacity(self.coordinate_rows.len() + self.element_rows.len());
        for (i, coeffs) in self.coordinate_rows.iter().enumerate() {
            rows.push(Row {
                kind: RowKind::Coordinate(i),
                coeffs: coeffs.clone(),
                rhs: factors[i] as i64 * basis_targets[i],
            });
        }
        for (j, coeffs) in self.element_rows.iter().enumerate() {
            let idx = j + 1;
            let el = g.element_at(idx);
            let linear: i64 = el
                .coords()
                .iter()
                .zip(&basis_targets)
                .map(|(&c, &t)| c as i64 * t)
                .sum();
            rows.push(Row {
                kind: RowKind::Element(idx),
                coeffs: coeffs.clone(),
                rhs: linear - a.target(idx),
            });
        }
        let upper_bounds = g
            .nonzero_elements()
            .map(|alpha| {
                alpha
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| factors[i] as i64 * basis_targets[i] / c as i64)
                    .min()
                    .expect("nonzero label")
            })
            .collect();
        LinearSystem {
            group_order: g.order(),
            variables: (1..g.order()).collect(),
            rows,
            upper_bounds,
        }
    }
}

pub fn build_system(group: &FiniteAbelianGroup, a: &Assignment) -> LinearSystem {
    SystemTemplate::new(group).instantiate(a)
}

/// Basis of `{y : m y = 0}` over the integers (each vector primitive), via
/// reduced row echelon form with integer rows. `None` on overflow.
fn integer_kernel(mut m: Vec<Vec<i128>>) -> Option<Vec<Vec<i128>>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            let pivot = m[r].clone();
            for (x, &y) in m[i].iter_mut().zip(&pivot) {
                *x = x.checked_mul(a)?.checked_sub(y.checked_mul(b)?)?;
            }
            make_primitive(&mut m[i]);
        }
        make_primitive(&mut m[r]);
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut lcm = 1i128;
        for (row, &pc) in pivots.iter().enumerate() {
            let p = m[row][pc].abs();
            lcm = lcm.checked_mul(p / gcd128(lcm, p))?;
        }
        let mut y = vec![0i128; cols];
        y[f] = lcm;
        for (row, &pc) in pivots.iter().enumerate() {
            y[pc] = (-m[row][f]).checked_mul(lcm / m[row][pc])?;
        }
        make_primitive(&mut y);
        basis.push(y);
    }
    Some(basis)
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd128(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

impl LinearSystem {
    /// Checks `totals` (indexed by element) against every row.
    pub fn is_satisfied_by(&self, totals: &[i64]) -> bool {
        self.rows.iter().all(|r| {
            r.coeffs
                .iter()
                .zip(&self.variables)
                .map(|(c, &v)| c * totals[v])
                .sum::<i64>()
                == r.rhs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let a = Assignment::new(&g, &g.element(&[1]).unwrap(), &[], &[]).unwrap();
        let s = build_system(&g, &a);
        assert_eq!(s.variables, vec![1]);
        assert_eq!(s.rows[0].coeffs, vec![1]);
        assert_eq!(s.rows[0].rhs, 10);
        assert_eq!(s.upper_bounds, vec![10]);
    }

    #[test]
    fn klein_four_rows() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let e = |c: &[u32]| g.element(c).unwrap();
        // t(1,0) = 3, t(0,1) = 2, t(1,1) = 5; variables (0,1), (1,0), (1,1)
        let a = Assignment::new(&g, &e(&[1, 1]), &[e(&[1, 0])], &[e(&[0, 1])]).unwrap();
        let s = build_system(&g, &a);
        assert_eq!(s.rows[0].coeffs, vec![0, 1, 1]);
        assert_eq!(s.rows[0].rhs, 6);
        assert_eq!(s.rows[1].coeffs, vec![1, 0, 1]);
        assert_eq!(s.rows[1].rhs, 4);
        let last = s.rows.last().unwrap();
        assert_eq!(last.kind, RowKind::Element(3));
        assert_eq!(last.coeffs, vec![0, 0, 1]);
        assert_eq!(last.rhs, 0);
        assert!(s.is_satisfied_by(&[0, 4, 6, 0]));
        assert!(!s.is_satisfied_by(&[0, 4, 6, 1]));
        assert!(s.rows.iter().all(|r| r.coeffs.iter().all(|&c| c >= 0)));
    }

    #[test]
    fn kernel_of_small_matrices() {
        assert_eq!(
            integer_kernel(vec![vec![1, 2], vec![2, 4]]),
            Some(vec![vec![-2, 1]])
        );
        assert_eq!(integer_kernel(vec![vec![1, 0], vec![0, 3]]), Some(vec![]));
        let k = integer_kernel(vec![vec![2, 4, 6]]).unwrap();
        assert_eq!(k.len(), 2);
        for y in k {
            assert_eq!(2 * y[0] + 4 * y[1] + 6 * y[2], 0);
        }
    }

    #[test]
    fn relations_annihilate_the_pairing() {
        // rank deficiencies: Z_5 has 1, Z_2 + Z_10 has 4, (Z_2)^3 none
        for (factors, dim) in [(&[5][..], 1), (&[2, 10][..], 4), (&[2, 2, 2][..], 0)] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let t = SystemTemplate::new(&g);
            let rel = t.relations().unwrap();
            assert_eq!(rel.len(), dim, "{g}");
            for y in rel {
                for a in g.nonzero_elements() {
                    let s: i128 = g
                        .nonzero_elements()
                        .zip(y)
                        .map(|(h, c)| {
                            let (num, den) = g.pairing_fraction(&h, &a);
                            c * num.rem_euclid(den) as i128
                        })
                        .sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }
}
