//! Finite abelian groups in invariant-factor form.
//!
//! A group is stored as `Z_{n_1} + ... + Z_{n_k}` with `n_1 | n_2 | ... | n_k`
//! and every `n_i >= 2`. Elements are coordinate vectors with
//! `0 <= g_i < n_i`, and every group carries a dense indexing of its elements
//! in lexicographic coordinate order (first coordinate most significant), so
//! the zero element always has index 0.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.0)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn write_comma_list(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Prime factorization as `(p, e)` pairs with ascending `p`.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FiniteAbelianGroup {
    /// Builds a group from any list of cyclic factors (for example a primary
    /// decomposition such as `[2, 3]`) and normalizes it to invariant-factor
    /// form. Factors equal to 1 are dropped.
    pub fn new(factors: &[u32]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(domain("cyclic factor of order 0"));
        }
        // collect prime powers per prime
        let mut powers: Vec<(u64, Vec<u32>)> = Vec::new();
        for &n in factors {
            for (p, e) in factorize(n as u64) {
                match powers.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, es)) => es.push(e),
                    None => powers.push((p, vec![e])),
                }
            }
        }
        let rank = powers.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        if rank == 0 {
            return Err(domain("the trivial group is not allowed"));
        }
        let mut out = vec![1u64; rank];
        for (p, es) in &mut powers {
            es.sort_unstable_by(|a, b| b.cmp(a));
            // largest power goes to the last invariant factor
            for (j, &e) in es.iter().enumerate() {
                out[rank - 1 - j] *= p.pow(e);
            }
        }
        let factors = out
            .into_iter()
            .map(|n| u32::try_from(n).map_err(|_| domain("group order too large")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { factors })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    /// The largest invariant factor; every `n_i` divides it.
    pub fn exponent(&self) -> u32 {
        *self.factors.last().expect("nontrivial group")
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// `Some(p)` if the group is `(Z_p)^k` for a prime `p`.
    pub fn elementary_prime(&self) -> Option<u32> {
        let p = self.factors[0];
        let prime = factorize(p as u64).len() == 1 && factorize(p as u64)[0].1 == 1;
        (prime && self.factors.iter().all(|&n| n == p)).then_some(p)
    }

    pub fn is_two_elementary(&self) -> bool {
        self.elementary_prime() == Some(2)
    }

    /// Comma separated invariant factors, the notation used in files and flags.
    pub fn notation(&self) -> String {
        self.to_string()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Basis vector `e_i` (0-based `i`).
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    pub fn element(&self, coords: &[u32]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(domain(format!(
                "element has {} coordinates, group {} has rank {}",
                coords.len(),
                self,
                self.rank()
            )));
        }
        for (i, (&c, &n)) in coords.iter().zip(&self.factors).enumerate() {
            if c >= n {
                return Err(domain(format!("coordinate {i} = {c} is not below {n}")));
            }
        }
        Ok(GroupElement(coords.to_vec()))
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        self.element(&g.0).map(|_| ())
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        ))
    }

    /// All elements in lexicographic order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Nonzero elements in lexicographic order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (1..self.order()).map(move |i| self.element_at(i))
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        for (slot, &n) in c.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        GroupElement(c)
    }

    /// `floor(sum_i g_i a_i / n_i)`, computed exactly over the common
    /// denominator `n_k`.
    pub fn floor_pairing(&self, g: &GroupElement, a: &GroupElement) -> i64 {
        let (num, den) = self.pairing_fraction(g, a);
        num.div_euclid(den)
    }

    /// `sum_i g_i a_i / n_i` as an unreduced fraction over `n_k`.
    pub fn pairing_fraction(&self, g: &GroupElement, a: &GroupElement) -> (i64, i64) {
        let big = self.exponent() as i64;
        let num =
            g.0.iter()
                .zip(&a.0)
                .zip(&self.factors)
                .map(|((&gi, &ai), &n)| gi as i64 * ai as i64 * (big / n as i64))
                .sum();
        (num, big)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.factors)
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = parse_u32_list(s)?;
        Self::new(&factors)
    }
}

pub(crate) fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| domain(format!("bad integer {:?}: {e}", t.trim())))
        })
        .collect()
}

/// Partitions of `n` into parts of size at most `max`, parts descending.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One representative per isomorphism class of abelian groups of order `d`,
/// ordered by rank and then by invariant factors.
pub fn enumerate_groups(d: u32) -> Result<Vec<FiniteAbelianGroup>> {
    if d < 2 {
        return Err(domain(format!("group order must be at least 2, got {d}")));
    }
    let mut groups: Vec<Vec<u32>> = vec![vec![]];
    for (p, e) in factorize(d as u64) {
        let mut next = Vec::new();
        for partial in &groups {
            for part in partitions(e, e) {
                let mut f = partial.clone();
                f.extend(part.iter().map(|&k| (p as u32).pow(k)));
                next.push(f);
            }
        }
        groups = next;
    }
    let mut out = groups
        .iter()
        .map(|f| FiniteAbelianGroup::new(f))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| (a.rank(), &a.factors).cmp(&(b.rank(), &b.factors)));
    Ok(out)
}
