//! Abelian covers of `P^3` given by labeled branch components.
//!
//! A cover with group `G = Z_{n_1} + ... + Z_{n_k}` is the normalization of
//! `z_i^{n_i} = prod_a p_a^{a_i}`, where each branch component `p_a` is an
//! irreducible surface of degree `x_a` carrying a nonzero label `a` in `G`.
//! The pushforward of the structure sheaf splits as `sum_g O(-l_g)` with
//!
//! ```text
//! n_i l_{e_i} = sum_a a_i x_a
//! l_g         = sum_i g_i l_{e_i} - sum_a floor(sum_i g_i a_i / n_i) x_a
//! ```

use serde::Serialize;

use crate::automorphism::Automorphism;
use crate::cohomology::{euler_char, h};
use crate::error::{domain, InvalidCoverData, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchComponent {
    pub label: GroupElement,
    pub degree: i64,
    pub name: Option<String>,
}

impl BranchComponent {
    pub fn new(label: GroupElement, degree: i64) -> Self {
        Self {
            label,
            degree,
            name: None,
        }
    }

    pub fn named(label: GroupElement, degree: i64, name: impl Into<String>) -> Self {
        Self {
            label,
            degree,
            name: Some(name.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    group: FiniteAbelianGroup,
    components: Vec<BranchComponent>,
}

/// The degrees `l_g` of the eigensheaves, indexed like the group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<i64>,
}

impl Spectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> i64 {
        self.values[index]
    }

    /// The nonzero-element values, sorted descending.
    pub fn nonzero_multiset(&self) -> Vec<i64> {
        let mut v = self.values[1..].to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    pub p_g: i64,
    pub q: i64,
    pub h2: i64,
    pub chi_o: i64,
    pub k3: i64,
    pub p2: i64,
    pub p3: i64,
}

impl CoverData {
    pub fn new(group: FiniteAbelianGroup, components: Vec<BranchComponent>) -> Self {
        Self { group, components }
    }

    /// One unnamed component per nonzero total; `totals` is indexed by
    /// element index and entry 0 is ignored.
    pub fn from_totals(group: &FiniteAbelianGroup, totals: &[i64]) -> Self {
        let components = totals
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| BranchComponent::new(group.element_at(i), x))
            .collect();
        Self::new(group.clone(), components)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn components(&self) -> &[BranchComponent] {
        &self.components
    }

    /// `x_a`: total degree per label, indexed by element index.
    pub fn totals(&self) -> Vec<i64> {
        let mut x = vec![0; self.group.order()];
        for c in &self.components {
            x[self.group.index_of(&c.label)] += c.degree;
        }
        x
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    pub fn validate(&self) -> Result<(), InvalidCoverData> {
        let factors = self.group.invariant_factors();
        for (idx, c) in self.components.iter().enumerate() {
            let coords = c.label.coords();
            if coords.len() != factors.len() {
                return Err(InvalidCoverData::LabelLength {
                    component: idx,
                    expected: factors.len(),
                    found: coords.len(),
                });
            }
            if let Some(i) = coords.iter().zip(factors).position(|(&a, &n)| a >= n) {
                return Err(InvalidCoverData::LabelOutOfRange {
                    component: idx,
                    coordinate: i,
                });
            }
            if c.label.is_zero() {
                return Err(InvalidCoverData::ZeroLabel { component: idx });
            }
            if c.degree < 1 {
                return Err(InvalidCoverData::NonPositiveDegree {
                    component: idx,
                    degree: c.degree,
                });
            }
        }
        self.weighted_sums()
            .into_iter()
            .zip(factors)
            .enumerate()
            .try_for_each(|(i, (s, &n))| match s.rem_euclid(n as i64) {
                0 => Ok(()),
                residue => Err(InvalidCoverData::Divisibility {
                    index: i,
                    modulus: n,
                    residue,
                }),
            })
    }

    fn weighted_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.group.rank()];
        for c in &self.components {
            for (s, &a) in sums.iter_mut().zip(c.label.coords()) {
                *s += a as i64 * c.degree;
            }
        }
        sums
    }

    /// `(l_{e_1}, ..., l_{e_k})`.
    pub fn l_basis(&self) -> Result<Vec<i64>> {
        self.validate()?;
        Ok(self
            .weighted_sums()
            .into_iter()
            .zip(self.group.invariant_factors())
            .map(|(s, &n)| s / n as i64)
            .collect())
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        let basis = self.l_basis()?;
        let g = &self.group;
        let totals = self.totals();
        let labels: Vec<(GroupElement, i64)> = totals
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (g.element_at(i), x))
            .collect();
        let values = g
            .elements()
            .map(|e| {
                let linear: i64 = e
                    .coords()
                    .iter()
                    .zip(&basis)
                    .map(|(&gi, &l)| gi as i64 * l)
                    .sum();
                let branch: i64 = labels.iter().map(|(a, x)| g.floor_pairing(&e, a) * x).sum();
                linear - branch
            })
            .collect();
        Ok(Spectrum { values })
    }

    /// Twists of the summands of the pushforward of `O_X`, sorted descending
    /// (so the structure sheaf's `0` comes first).
    pub fn pushforward_summands(&self) -> Result<Vec<i64>> {
        let mut v: Vec<i64> = self.spectrum()?.values.iter().map(|l| -l).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(v)
    }

    /// `h^i(X, pullback O(m)) = sum_g h^i(P^3, O(m - l_g))`.
    pub fn hi_of_pullback(&self, i: i64, m: i64) -> Result<i64> {
        if !(0..=3).contains(&i) {
            return Err(domain(format!("cohomological degree {i} outside [0, 3]")));
        }
        self.spectrum()?
            .values
            .iter()
            .try_fold(0, |acc, l| Ok(acc + h(i, 3, m - l)?))
    }

    /// `P_m = h^0(X, pullback O(m))`, taking `K_X` to be the pullback of a
    /// hyperplane.
    pub fn plurigenus(&self, m: i64) -> Result<i64> {
        self.hi_of_pullback(0, m)
    }

    pub fn invariants(&self) -> Result<CoverInvariants> {
        let spectrum = self.spectrum()?;
        let sum_h = |i: i64, m: i64| -> Result<i64> {
            spectrum
                .values
                .iter()
                .try_fold(0, |acc, l| Ok(acc + h(i, 3, m - l)?))
        };
        let chi_o = spectrum
            .values
            .iter()
            .try_fold(0, |acc, l| Ok::<_, crate::Error>(acc + euler_char(3, -l)?))?;
        Ok(CoverInvariants {
            p_g: sum_h(0, 1)?,
            q: sum_h(1, 0)?,
            h2: sum_h(2, 0)?,
            chi_o,
            k3: self.group.order() as i64,
            p2: sum_h(0, 2)?,
            p3: sum_h(0, 3)?,
        })
    }

    /// Relabels every component `a -> s(a)`.
    pub fn relabel(&self, s: &Automorphism) -> CoverData {
        let g = &self.group;
        let components = self
            .components
            .iter()
            .map(|c| BranchComponent {
                label: g.element_at(s.apply(g.index_of(&c.label))),
                ..c.clone()
            })
            .collect();
        CoverData::new(g.clone(), components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(factors: &[u32], comps: &[(&[u32], i64)]) -> CoverData {
        let g = FiniteAbelianGroup::new(factors).unwrap();
        let cs = comps
            .iter()
            .map(|(a, d)| BranchComponent::new(g.element(a).unwrap(), *d))
            .collect();
        CoverData::new(g, cs)
    }

    fn deg2() -> CoverData {
        cover(&[2], &[(&[1], 10)])
    }

    fn deg4() -> CoverData {
        cover(&[2, 2], &[(&[1, 0], 6), (&[0, 1], 4)])
    }

    fn deg8() -> CoverData {
        cover(
            &[2, 2, 2],
            &[
                (&[1, 0, 0], 2),
                (&[0, 1, 0], 2),
                (&[0, 0, 1], 2),
                (&[1, 1, 1], 4),
            ],
        )
    }

    #[test]
    fn validation() {
        assert!(deg2().validate().is_ok());
        assert!(deg4().validate().is_ok());
        assert_eq!(
            cover(&[2], &[(&[1], 9)]).validate(),
            Err(InvalidCoverData::Divisibility {
                index: 0,
                modulus: 2,
                residue: 1
            })
        );
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let zero = CoverData::new(g.clone(), vec![BranchComponent::new(g.zero(), 2)]);
        assert_eq!(
            zero.validate(),
            Err(InvalidCoverData::ZeroLabel { component: 0 })
        );
        let neg = CoverData::new(
            g.clone(),
            vec![BranchComponent::new(g.element(&[1]).unwrap(), -2)],
        );
        assert!(matches!(
            neg.validate(),
            Err(InvalidCoverData::NonPositiveDegree { .. })
        ));
    }

    #[test]
    fn l_basis_examples() {
        assert_eq!(deg2().l_basis().unwrap(), vec![5]);
        assert_eq!(deg4().l_basis().unwrap(), vec![3, 2]);
        assert_eq!(deg8().l_basis().unwrap(), vec![3, 3, 3]);
        assert!(cover(&[2], &[(&[1], 9)]).l_basis().is_err());
    }

    #[test]
    fn spectrum_examples() {
        // index order (0,0),(0,1),(1,0),(1,1)
        assert_eq!(deg4().spectrum().unwrap().values(), &[0, 2, 3, 5]);
        assert_eq!(
            deg8().spectrum().unwrap().nonzero_multiset(),
            vec![5, 3, 3, 3, 2, 2, 2]
        );
        assert_eq!(deg2().spectrum().unwrap().get(0), 0);
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(deg2().pushforward_summands().unwrap(), vec![0, -5]);
        assert_eq!(deg4().pushforward_summands().unwrap(), vec![0, -2, -3, -5]);
        assert_eq!(
            deg8().pushforward_summands().unwrap(),
            vec![0, -2, -2, -2, -3, -3, -3, -5]
        );
    }

    #[test]
    fn pullback_cohomology() {
        assert_eq!(deg8().hi_of_pullback(0, 1).unwrap(), 4);
        assert_eq!(deg8().hi_of_pullback(1, 0).unwrap(), 0);
        assert_eq!(deg2().hi_of_pullback(0, 2).unwrap(), 10);
        assert!(deg2().hi_of_pullback(4, 0).is_err());
    }

    #[test]
    fn invariant_examples() {
        let inv = deg8().invariants().unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi_o, inv.k3), (4, 0, -3, 8));
        assert_eq!((inv.p2, inv.p3), (13, 35));
        assert_eq!(deg2().invariants().unwrap().p2, 10);
        assert_eq!(deg2().plurigenus(2).unwrap(), 10);
    }

    #[test]
    fn spectrum_reads_only_totals() {
        let split = cover(&[2, 2], &[(&[1, 0], 1), (&[1, 0], 5), (&[0, 1], 4)]);
        assert_eq!(split.spectrum().unwrap(), deg4().spectrum().unwrap());
    }
}
