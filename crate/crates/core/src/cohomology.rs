//! Cohomology of line bundles `O(m)` on projective `n`-space.

use crate::error::{domain, Result};

/// `binomial(a, b)` for `a >= b >= 0`, exact in 128-bit arithmetic.
pub fn binomial(a: i64, b: i64) -> i128 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) at every step
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `h^i(P^n, O(m))`.
pub fn h(i: i64, n: i64, m: i64) -> Result<i64> {
    if n < 1 {
        return Err(domain(format!(
            "ambient dimension must be at least 1, got {n}"
        )));
    }
    if !(0..=n).contains(&i) {
        return Err(domain(format!("cohomological degree {i} outside [0, {n}]")));
    }
    Ok(if i == 0 {
        h0(n, m)
    } else if i == n {
        h0(n, -m - n - 1)
    } else {
        0
    })
}

fn h0(n: i64, m: i64) -> i64 {
    if m < 0 {
        0
    } else {
        i64::try_from(binomial(m + n, n)).expect("h^0 overflows i64")
    }
}

/// `h^0(P^3, O(m))`, the case used everywhere in the classifier.
pub fn h0_p3(m: i64) -> i64 {
    h0(3, m)
}

/// `chi(P^n, O(m)) = sum_i (-1)^i h^i`.
pub fn euler_char(n: i64, m: i64) -> Result<i64> {
    (0..=n).try_fold(0i64, |acc, i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        Ok(acc + sign * h(i, n, m)?)
    })
}
