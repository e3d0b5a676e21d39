//! Automorphism groups of finite abelian groups.
//!
//! An automorphism is determined by the images `h_i` of the basis vectors
//! `e_i`, subject to `n_i h_i = 0`; it is stored as two permutations of
//! element indices: its action on elements and the action of its adjoint
//! with respect to the pairing `<g, a> = sum_i g_i a_i / n_i (mod 1)`. For
//! `Z_n` the adjoint of multiplication by a unit is the same map; for
//! `(Z_p)^k` it is the transposed matrix. Relabeling branch components by `s`
//! turns the spectrum `l` into `g -> l(s*(g))`, where `s*` is the adjoint.

use thiserror::Error;

use crate::group::{factorize, FiniteAbelianGroup};

/// Largest `|Aut(G)|` that is enumerated.
pub const MAX_AUTOMORPHISMS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    image: Vec<usize>,
    adjoint: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, index: usize) -> usize {
        self.image[index]
    }

    pub fn apply_adjoint(&self, index: usize) -> usize {
        self.adjoint[index]
    }

    /// The adjoint map, itself an automorphism.
    pub fn adjoint(&self) -> Automorphism {
        Automorphism {
            image: self.adjoint.clone(),
            adjoint: self.image.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Transports a function on all elements along the map:
    /// `out[s(g)] = values[g]`.
    pub fn push_forward<T: Clone>(&self, values: &[T]) -> Vec<T> {
        let mut out = values.to_vec();
        for (i, v) in values.iter().enumerate() {
            out[self.image[i]] = v.clone();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("Aut({0}) has more than {MAX_AUTOMORPHISMS} elements and is not enumerated")]
pub struct Unsupported(pub FiniteAbelianGroup);

#[derive(Debug, Clone)]
pub struct AutomorphismAction {
    group: FiniteAbelianGroup,
    order: u64,
}

/// `|Aut|` of a `p`-group with invariant exponents `e_1 <= ... <= e_k`.
fn p_group_aut_order(p: u64, e: &[u32]) -> Option<u64> {
    let k = e.len();
    let mut total: u64 = 1;
    for j in 0..k {
        // 1-based: d_j = max{l : e_l = e_j}, c_j = min{l : e_l = e_j}
        let d = (0..k).rev().find(|&l| e[l] == e[j]).unwrap() + 1;
        let c = (0..k).find(|&l| e[l] == e[j]).unwrap() + 1;
        let term = p.checked_pow(d as u32)? - p.pow(j as u32);
        let mid = p.checked_pow(e[j])?.checked_pow((k - d) as u32)?;
        let low = p.checked_pow(e[j] - 1)?.checked_pow((k - c + 1) as u32)?;
        total = total
            .checked_mul(term)?
            .checked_mul(mid)?
            .checked_mul(low)?;
    }
    Some(total)
}

impl AutomorphismAction {
    pub fn new(group: &FiniteAbelianGroup) -> Result<Self, Unsupported> {
        let mut order: u64 = 1;
        for (p, _) in factorize(group.order() as u64) {
            // exponents of p in each invariant factor, ascending
            let e: Vec<u32> = group
                .invariant_factors()
                .iter()
                .map(|&n| {
                    let mut n = n as u64;
                    let mut k = 0;
                    while n.is_multiple_of(p) {
                        n /= p;
                        k += 1;
                    }
                    k
                })
                .filter(|&k| k > 0)
                .collect();
            order = p_group_aut_order(p, &e)
                .and_then(|o| order.checked_mul(o))
                .filter(|&o| o <= MAX_AUTOMORPHISMS)
                .ok_or_else(|| Unsupported(group.clone()))?;
        }
        Ok(Self {
            group: group.clone(),
            order,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `|Aut(G)|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Calls `f` once per automorphism, in a fixed order.
    pub fn for_each(&self, mut f: impl FnMut(&Automorphism)) {
        self.search(&|_: &[Vec<u32>]| true, &mut |cols| f(&self.assemble(cols)));
    }

    pub fn all(&self) -> Vec<Automorphism> {
        let mut out = Vec::new();
        self.for_each(|s| out.push(s.clone()));
        out
    }

    /// All automorphisms `s` with `labels[s(g)] == labels[g]` for every
    /// element index `g`. `labels` has one entry per element of the group.
    pub fn stabilizer<T: PartialEq>(&self, labels: &[T]) -> Vec<Automorphism> {
        assert_eq!(labels.len(), self.group.order());
        let g = &self.group;
        let n = g.invariant_factors();
        let accept = |cols: &[Vec<u32>]| {
            // check every element whose last nonzero coordinate is the newest column
            let j = cols.len() - 1;
            let mut coeffs = vec![0u32; j + 1];
            loop {
                if coeffs[j] != 0 {
                    let mut src = vec![0u32; g.rank()];
                    src[..=j].copy_from_slice(&coeffs);
                    let img = combine(g, cols, &coeffs);
                    let (a, b) = (
                        g.index_of(&g.element(&src).unwrap()),
                        g.index_of(&g.element(&img).unwrap()),
                    );
                    if labels[a] != labels[b] {
                        return false;
                    }
                }
                let mut c = 0;
                loop {
                    if c > j {
                        return true;
                    }
                    coeffs[c] += 1;
                    if coeffs[c] < n[c] {
                        break;
                    }
                    coeffs[c] = 0;
                    c += 1;
                }
            }
        };
        let mut out = Vec::new();
        self.search(&accept, &mut |cols| out.push(self.assemble(cols)));
        out
    }

    /// Depth-first enumeration of automorphisms by the images of the basis
    /// vectors; `accept` prunes partial choices.
    fn search(&self, accept: &dyn Fn(&[Vec<u32>]) -> bool, emit: &mut dyn FnMut(&[Vec<u32>])) {
        let mut span = vec![false; self.group.order()];
        span[0] = true;
        let mut cols = Vec::with_capacity(self.group.rank());
        self.extend_basis(&mut cols, &span, 1, accept, emit);
    }

    /// `span` is the subgroup generated by `cols`, of size `size`. The next
    /// image must have order dividing `n_j` and enlarge the span `n_j`-fold,
    /// which keeps the partial map injective.
    fn extend_basis(
        &self,
        cols: &mut Vec<Vec<u32>>,
        span: &[bool],
        size: usize,
        accept: &dyn Fn(&[Vec<u32>]) -> bool,
        emit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        let g = &self.group;
        let j = cols.len();
        if j == g.rank() {
            emit(cols);
            return;
        }
        let n = g.invariant_factors()[j];
        let members: Vec<usize> = (0..g.order()).filter(|&i| span[i]).collect();
        for idx in 1..g.order() {
            let v = g.element_at(idx);
            if !v
                .coords()
                .iter()
                .zip(g.invariant_factors())
                .all(|(&c, &m)| (c * n).is_multiple_of(m))
            {
                continue;
            }
            let mut next = vec![false; g.order()];
            let mut count = 0;
            for &s in &members {
                let mut cur = g.element_at(s);
                for _ in 0..n {
                    let i = g.index_of(&cur);
                    if !next[i] {
                        next[i] = true;
                        count += 1;
                    }
                    cur = g.add(&cur, &v).unwrap();
                }
            }
            if count != size * n as usize {
                continue;
            }
            cols.push(v.coords().to_vec());
            if accept(cols) {
                self.extend_basis(cols, &next, count, accept, emit);
            }
            cols.pop();
        }
    }

    fn assemble(&self, cols: &[Vec<u32>]) -> Automorphism {
        let g = &self.group;
        let n = g.invariant_factors();
        let image = g
            .elements()
            .map(|e| g.index_of(&g.element(&combine(g, cols, e.coords())).unwrap()))
            .collect();
        // s*(x)_j = n_j <x, s(e_j)>, an integer mod n_j
        let adjoint = g
            .elements()
            .map(|x| {
                let coords: Vec<u32> = cols
                    .iter()
                    .zip(n)
                    .map(|(h, &nj)| {
                        let h = g.element(h).unwrap();
                        let (num, den) = g.pairing_fraction(&x, &h);
                        let scaled = num * nj as i64;
                        debug_assert_eq!(scaled % den, 0);
                        (scaled / den).rem_euclid(nj as i64) as u32
                    })
                    .collect();
                g.index_of(&g.element(&coords).unwrap())
            })
            .collect();
        Automorphism { image, adjoint }
    }
}

/// `sum_c coeffs[c] * cols[c]`, reduced coordinatewise.
fn combine(g: &FiniteAbelianGroup, cols: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let n = g.invariant_factors();
    let mut out = vec![0u32; g.rank()];
    for (col, &c) in cols.iter().zip(coeffs) {
        for ((o, &x), &m) in out.iter_mut().zip(col).zip(n) {
            *o = (*o + c * x) % m;
        }
    }
    out
}

/// Orbit-invariant normal form of a function on the nonzero elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm<T> {
    /// Values indexed by nonzero element, lexicographic element order.
    pub values: Vec<T>,
    /// False when the automorphism group is unsupported and `values` is the
    /// input unchanged.
    pub reduced: bool,
}

/// The lexicographically least image of `values` (indexed by the nonzero
/// elements in lexicographic order) under relabeling by automorphisms.
pub fn canonical_representative<T: Ord + Clone>(
    group: &FiniteAbelianGroup,
    values: &[T],
) -> CanonicalForm<T> {
    assert_eq!(values.len() + 1, group.order());
    let Ok(action) = AutomorphismAction::new(group) else {
        return CanonicalForm {
            values: values.to_vec(),
            reduced: false,
        };
    };
    let mut best = values.to_vec();
    let mut image = values.to_vec();
    action.for_each(|s| {
        for (i, v) in values.iter().enumerate() {
            image[s.apply(i + 1) - 1] = v.clone();
        }
        if image < best {
            best.clone_from(&image);
        }
    });
    CanonicalForm {
        values: best,
        reduced: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn action(f: &[u32]) -> AutomorphismAction {
        AutomorphismAction::new(&FiniteAbelianGroup::new(f).unwrap()).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(action(&[2]).all().len(), 1);
        assert_eq!(action(&[6]).all().len(), 2);
        assert_eq!(action(&[2, 2]).all().len(), 6);
        assert_eq!(action(&[2, 2, 2]).all().len(), 168);
        assert_eq!(action(&[2, 2, 2]).order(), 168);
        assert_eq!(action(&[3, 3]).all().len(), 48);
        assert_eq!(action(&[2, 2, 2, 2]).order(), 20160);
    }

    #[test]
    fn counts_agree_with_enumeration() {
        // Aut(Z_2 + Z_4) is dihedral of order 8; Aut(Z_2 + Z_2 + Z_4) has order 192
        for (f, order) in [
            (&[2, 4][..], 8),
            (&[4, 4], 96),
            (&[2, 2, 4], 192),
            (&[3, 6], 48),
            (&[2, 10], 24),
            (&[2, 8], 16),
            (&[12], 4),
        ] {
            let a = action(f);
            assert_eq!(a.order(), order, "{f:?}");
            assert_eq!(a.all().len() as u64, order, "{f:?}");
        }
    }

    #[test]
    fn huge_automorphism_groups_are_unsupported() {
        let g = FiniteAbelianGroup::new(&[2; 7]).unwrap();
        assert!(AutomorphismAction::new(&g).is_err());
        let g = FiniteAbelianGroup::new(&[2; 3]).unwrap();
        let c = canonical_representative(&g, &[1, 2, 3, 4, 5, 6, 7]);
        assert!(c.reduced);
    }

    #[test]
    fn automorphisms_are_homomorphic_bijections() {
        for f in [&[2, 2, 2][..], &[3, 3], &[12], &[5], &[2, 4], &[2, 6]] {
            let a = action(f);
            let g = a.group().clone();
            for s in a.all() {
                let mut seen = vec![false; g.order()];
                for i in 0..g.order() {
                    seen[s.apply(i)] = true;
                }
                assert!(seen.iter().all(|&b| b));
                for x in g.elements() {
                    for y in g.elements() {
                        let sum = g.index_of(&g.add(&x, &y).unwrap());
                        let lhs = s.apply(sum);
                        let rhs = g.index_of(
                            &g.add(
                                &g.element_at(s.apply(g.index_of(&x))),
                                &g.element_at(s.apply(g.index_of(&y))),
                            )
                            .unwrap(),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_preserves_fractional_pairing() {
        for f in [&[2, 2, 2][..], &[2, 4], &[3, 6], &[12]] {
            let a = action(f);
            let g = a.group().clone();
            for s in a.all().iter().step_by(7) {
                for x in g.elements() {
                    for y in g.elements() {
                        let sx = g.element_at(s.apply(g.index_of(&x)));
                        let ty = g.element_at(s.apply_adjoint(g.index_of(&y)));
                        let (n1, d) = g.pairing_fraction(&y, &sx);
                        let (n2, _) = g.pairing_fraction(&ty, &x);
                        assert_eq!(n1.rem_euclid(d), n2.rem_euclid(d));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        // nonzero elements in order: (0,1), (1,0), (1,1)
        let a = canonical_representative(&g, &[3, 5, 2]);
        let b = canonical_representative(&g, &[2, 3, 5]);
        assert_eq!(a, b);
        assert!(a.reduced);
        assert_eq!(
            canonical_representative(&g, &[7, 7, 7]).values,
            vec![7, 7, 7]
        );
        let z2 = FiniteAbelianGroup::new(&[2]).unwrap();
        assert_eq!(canonical_representative(&z2, &[10]).values, vec![10]);
    }

    #[test]
    fn stabilizer_matches_brute_force() {
        for (f, labels) in [
            (&[2, 2, 2][..], [0, 5, 3, 3, 2, 2, 3, 2]),
            (&[2, 4], [0, 3, 5, 2, 2, 3, 3, 2]),
            (&[8], [0, 3, 2, 5, 3, 2, 2, 3]),
        ] {
            let a = action(f);
            let fast = a.stabilizer(&labels);
            let slow: Vec<_> = a
                .all()
                .into_iter()
                .filter(|s| (0..8).all(|i| labels[s.apply(i)] == labels[i]))
                .collect();
            assert_eq!(fast.len(), slow.len());
            for s in &fast {
                assert!(slow.contains(s));
            }
        }
    }
}
