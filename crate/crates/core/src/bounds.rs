//! Integer audit of the canonical-degree bounds for Gorenstein minimal
//! threefolds: the Miyaoka-Yau bound `d (p_g - 3) <= K^3 <= 72 chi(omega)`
//! and its specializations by irregularity and Albanese dimension.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub p_g: i64,
    pub q: i64,
    pub chi_omega: i64,
    pub k3: i64,
    pub base_point_free: bool,
    pub dim_y: Option<u8>,
    /// `p_g` of a general fiber of the Albanese fibration.
    pub p_g_fiber: Option<i64>,
}

impl InvariantTuple {
    pub fn new(p_g: i64, q: i64, chi_omega: i64, k3: i64, base_point_free: bool) -> Self {
        Self {
            p_g,
            q,
            chi_omega,
            k3,
            base_point_free,
            dim_y: None,
            p_g_fiber: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// `q <= 2`, where `chi(omega) <= p_g + 1`.
    #[serde(rename = "q_le_2")]
    QLe2,
    /// `q >= 3` and the Stein factorization of the Albanese map has
    /// dimension at least 2, where `chi(omega) <= p_g`.
    AlbaneseDimGe2,
    /// `q >= 3` with a one-dimensional Albanese image.
    #[serde(rename = "albanese_dim_1")]
    AlbaneseDim1,
}

fn require_pg(t: &InvariantTuple, floor: i64) -> Result<()> {
    if t.p_g < floor {
        return Err(domain(format!("p_g = {} is below {floor}", t.p_g)));
    }
    Ok(())
}

/// `floor(72 chi(omega) / (p_g - 3))`.
pub fn my_degree_bound(t: &InvariantTuple) -> Result<i64> {
    require_pg(t, 4)?;
    Ok((72 * t.chi_omega).div_euclid(t.p_g - 3))
}

pub fn case_bound(case: BoundCase, t: &InvariantTuple) -> Result<i64> {
    let p = t.p_g;
    match case {
        BoundCase::QLe2 => {
            require_pg(t, 4)?;
            Ok(72 * (p + 1) / (p - 3))
        }
        BoundCase::AlbaneseDimGe2 => {
            require_pg(t, 4)?;
            Ok(72 * p / (p - 3))
        }
        BoundCase::AlbaneseDim1 => {
            require_pg(t, 6)?;
            let f = t.p_g_fiber.ok_or_else(|| {
                domain("the one-dimensional Albanese case needs p_g of the fiber")
            })?;
            if f < 3 {
                return Err(domain(format!("fiber p_g = {f} is below 3")));
            }
            // 72 (1 + 1/f) p / (p - 3)
            Ok(72 * (f + 1) * p / (f * (p - 3)))
        }
    }
}

/// The invariants attaining the 360 bound.
pub fn equality_fingerprint(t: &InvariantTuple) -> bool {
    (t.p_g, t.q, t.chi_omega, t.k3, t.base_point_free) == (4, 2, 5, 360, true)
}

/// `p_g + q - 1` when `q <= 2`; `None` otherwise.
pub fn chi_upper_bound(p_g: i64, q: i64) -> Option<i64> {
    (q <= 2).then_some(p_g + q - 1)
}
