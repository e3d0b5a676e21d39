//! Placements of the target twists on the group elements.

use std::collections::HashSet;

use serde::Serialize;

use crate::automorphism::{Automorphism, AutomorphismAction};
use crate::cover::Spectrum;
use crate::error::{domain, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::target::SpectrumTarget;

/// A partition `G = {0} + {g'} + S_1 + S_2` with targets 5 on `g'`, 3 on
/// `S_1` and 2 on `S_2`. Stored as the target value of every element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    targets: Vec<u8>,
}

impl Assignment {
    pub fn new(
        group: &FiniteAbelianGroup,
        g_prime: &GroupElement,
        s1: &[GroupElement],
        s2: &[GroupElement],
    ) -> Result<Self> {
        let n = group.order();
        let mut targets = vec![0u8; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut place = |g: &GroupElement, t: u8| -> Result<()> {
            let g = group.element(g.coords())?;
            let i = group.index_of(&g);
            if seen[i] {
                return Err(domain(format!("element {g} used twice or is zero")));
            }
            seen[i] = true;
            targets[i] = t;
            Ok(())
        };
        place(g_prime, 5)?;
        s1.iter().try_for_each(|g| place(g, 3))?;
        s2.iter().try_for_each(|g| place(g, 2))?;
        if s1.len() != s2.len() || seen.iter().any(|&b| !b) {
            return Err(domain("S_1 and S_2 must have equal size and cover G"));
        }
        Ok(Self { targets })
    }

    /// Reads the assignment off a spectrum, if it has the canonical shape.
    pub fn from_spectrum(spectrum: &Spectrum) -> Option<Self> {
        let v = spectrum.values();
        let count = |t| v.iter().filter(|&&x| x == t).count();
        let ok = v[0] == 0
            && count(5) == 1
            && count(3) == count(2)
            && count(5) + count(3) + count(2) + 1 == v.len();
        ok.then(|| Self {
            targets: v.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Target twist for every element index (0 at the zero element).
    pub fn targets(&self) -> &[u8] {
        &self.targets
    }

    pub fn target(&self, index: usize) -> i64 {
        self.targets[index] as i64
    }

    pub fn g_prime(&self) -> usize {
        self.targets
            .iter()
            .position(|&t| t == 5)
            .expect("g' present")
    }

    pub fn s1(&self) -> Vec<usize> {
        self.indices_with(3)
    }

    pub fn s2(&self) -> Vec<usize> {
        self.indices_with(2)
    }

    fn indices_with(&self, t: u8) -> Vec<usize> {
        (0..self.targets.len())
            .filter(|&i| self.targets[i] == t)
            .collect()
    }

    /// Image under relabeling by `s`: the new assignment takes the value of
    /// the old one at `s*(g)`, mirroring how spectra transform.
    pub fn relabel(&self, s: &Automorphism) -> Self {
        Self {
            targets: (0..self.targets.len())
                .map(|g| self.targets[s.apply_adjoint(g)])
                .collect(),
        }
    }

    pub(crate) fn key(&self) -> u128 {
        debug_assert!(self.targets.len() <= 64);
        self.targets.iter().fold(0u128, |acc, &t| {
            let code = match t {
                5 => 1,
                3 => 2,
                2 => 3,
                _ => 0,
            };
            (acc << 2) | code
        })
    }

    pub fn record(&self, group: &FiniteAbelianGroup) -> AssignmentRecord {
        let el = |i: usize| group.element_at(i);
        AssignmentRecord {
            g_prime: el(self.g_prime()),
            s1: self.s1().into_iter().map(el).collect(),
            s2: self.s2().into_iter().map(el).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentRecord {
    pub g_prime: GroupElement,
    pub s1: Vec<GroupElement>,
    pub s2: Vec<GroupElement>,
}

/// All assignments in a fixed order: `g'` ascending, then `S_1` as
/// combinations of the remaining nonzero elements in lexicographic order.
pub struct AllAssignments {
    order: usize,
    half: usize,
    g_prime: usize,
    others: Vec<usize>,
    comb: Vec<usize>,
    done: bool,
}

impl AllAssignments {
    fn new(order: usize, half: usize) -> Self {
        let mut it = Self {
            order,
            half,
            g_prime: 0,
            others: Vec::new(),
            comb: Vec::new(),
            done: order < 2 || 2 * half + 2 != order,
        };
        if !it.done {
            it.start(1);
        }
        it
    }

    fn start(&mut self, g_prime: usize) {
        self.g_prime = g_prime;
        self.others = (1..self.order).filter(|&i| i != g_prime).collect();
        self.comb = (0..self.half).collect();
    }

    fn advance(&mut self) {
        let n = self.others.len();
        let k = self.half;
        // next k-combination of 0..n
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.comb[i] < n - k + i {
                self.comb[i] += 1;
                for j in i + 1..k {
                    self.comb[j] = self.comb[j - 1] + 1;
                }
                return;
            }
        }
        if self.g_prime + 1 < self.order {
            self.start(self.g_prime + 1);
        } else {
            self.done = true;
        }
    }
}

impl Iterator for AllAssignments {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.done {
            return None;
        }
        let mut targets = vec![2u8; self.order];
        targets[0] = 0;
        targets[self.g_prime] = 5;
        for &c in &self.comb {
            targets[self.others[c]] = 3;
        }
        self.advance();
        Some(Assignment { targets })
    }
}

/// Keeps the first assignment of every automorphism orbit.
pub struct OrbitRepresentatives {
    inner: AllAssignments,
    automorphisms: Vec<Automorphism>,
    seen: HashSet<u128>,
}

impl Iterator for OrbitRepresentatives {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        for a in self.inner.by_ref() {
            if self.seen.contains(&a.key()) {
                continue;
            }
            for s in &self.automorphisms {
                let image = Assignment {
                    targets: s.push_forward(&a.targets),
                };
                self.seen.insert(image.key());
            }
            return Some(a);
        }
        None
    }
}

pub enum Assignments {
    All(AllAssignments),
    Orbits(OrbitRepresentatives),
}

impl Iterator for Assignments {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        match self {
            Assignments::All(it) => it.next(),
            Assignments::Orbits(it) => it.next(),
        }
    }
}

impl Assignments {
    /// True when orbit deduplication is active.
    pub fn deduplicated(&self) -> bool {
        matches!(self, Assignments::Orbits(_))
    }
}

/// Enumerates assignments of `target` on `group`. With `dedup` and a
/// supported automorphism group, yields one assignment per orbit.
pub fn enumerate_assignments(
    group: &FiniteAbelianGroup,
    target: &SpectrumTarget,
    dedup: bool,
) -> Result<Assignments> {
    if target.degree() as usize != group.order() {
        return Err(domain(format!(
            "target degree {} does not match |G| = {}",
            target.degree(),
            group.order()
        )));
    }
    if group.order() > 64 {
        return Err(domain("assignments are limited to groups of order <= 64"));
    }
    let all = AllAssignments::new(group.order(), target.pair_count());
    if dedup {
        if let Ok(action) = AutomorphismAction::new(group) {
            return Ok(Assignments::Orbits(OrbitRepresentatives {
                inner: all,
                automorphisms: action.all(),
                seen: HashSet::new(),
            }));
        }
    }
    Ok(Assignments::All(all))
}
