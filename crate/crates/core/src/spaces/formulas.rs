//! Closed-form dimension counts.

use serde::Serialize;

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Dimension of the variety of `r`-planes on a general complete intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoDelta {
    pub delta: i128,
    /// `(r+1)(n-r) - Σ C(d_i + r, r)`, the naive expected dimension.
    pub expected_dimension: i128,
    pub warnings: Vec<String>,
}

/// `δ = min{(r+1)(n-r) - C(d+r, r), n - 2r - s}` with `d` the largest degree.
pub fn fano_delta(n: u32, degrees: &[u32], r: u32) -> FanoDelta {
    let s = degrees.len() as i128;
    let d_top = degrees.iter().copied().max().unwrap_or(0) as u64;
    let (n, r) = (n as i128, r as i128);
    let grass = (r + 1) * (n - r);
    let delta = (grass - binomial(d_top + r as u64, r as u64)).min(n - 2 * r - s);
    let expected_dimension =
        grass - degrees.iter().map(|&d| binomial(d as u64 + r as u64, r as u64)).sum::<i128>();
    let mut warnings = Vec::new();
    if degrees.len() > 1 {
        warnings.push(format!(
            "multidegree input: the binomial term uses only the largest degree {d_top}"
        ));
    }
    if delta != expected_dimension {
        warnings.push(format!(
            "delta = {delta} differs from the expected dimension {expected_dimension} of the space of {r}-planes"
        ));
    }
    FanoDelta { delta, expected_dimension, warnings }
}

/// Dimension of the representation variety of the genus-`g` surface group in `GL_n`.
pub fn rep_variety_dim(g: u32, n: u32) -> u64 {
    let (g, n) = (g as u64, n as u64);
    if g > 1 {
        (2 * g - 1) * n * n + 1
    } else {
        n * n + n
    }
}

/// Degree cutoff `2d - n` below which the cohomology of a `d`-dimensional
/// subvariety of `P^n` agrees with that of `P^n`.
pub fn barth_range(n: u32, d: u32) -> i64 {
    2 * d as i64 - n as i64
}
