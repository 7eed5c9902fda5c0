//! Power means `M_α` and their additively homogeneous counterparts
//! `A_α(x) = ln M_α(exp x)`.
//!
//! Both families are evaluated relative to an extreme element so that no
//! intermediate power or exponential can overflow: every scaled term lies
//! in `[0, 1]`, and `exp_m1` / `ln_1p` keep precision when `α` is close to
//! zero.

use crate::error::{Error, Result};
use crate::expr::Alpha;

fn extremes(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// Power mean `((Σ x_i^α) / n)^(1/α)` with the geometric mean at `α = 0`
/// and exact `min` / `max` at the infinite tags.
///
/// Inputs must be finite and non-negative, and strictly positive when
/// `α ≤ 0` is finite.
pub fn power_mean(alpha: Alpha, xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let strict = matches!(alpha, Alpha::Finite(a) if a <= 0.0);
    for &x in xs {
        if !x.is_finite() {
            return Err(Error::Domain {
                value: x,
                requirement: "finite",
            });
        }
        if strict && x <= 0.0 {
            return Err(Error::Domain {
                value: x,
                requirement: "strictly positive for alpha <= 0",
            });
        }
        if x < 0.0 {
            return Err(Error::Domain {
                value: x,
                requirement: "non-negative",
            });
        }
    }
    let (lo, hi) = extremes(xs);
    let n = xs.len() as f64;
    Ok(match alpha {
        Alpha::NegInf => lo,
        Alpha::PosInf => hi,
        Alpha::Finite(0.0) => (xs.iter().map(|x| x.ln()).sum::<f64>() / n).exp(),
        Alpha::Finite(a) => {
            // scale by the extreme that keeps every (x/m)^a in [0, 1]
            let m = if a > 0.0 { hi } else { lo };
            if m == 0.0 {
                return Ok(0.0);
            }
            let s = xs.iter().map(|&x| (a * (x / m).ln()).exp_m1()).sum::<f64>() / n;
            m * (s.ln_1p() / a).exp()
        }
    })
}

/// Additively homogeneous mean `(1/α) ln((1/n) Σ e^(α x_i))`: the arithmetic
/// mean at `α = 0` and exact `min` / `max` at the infinite tags.
///
/// Any finite inputs are accepted. The sum is shifted by the extreme element
/// (max for positive `α`, min for negative), so magnitudes far beyond the
/// `exp` overflow threshold are fine.
pub fn additive_mean(alpha: Alpha, xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&x) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain {
            value: x,
            requirement: "finite",
        });
    }
    let (lo, hi) = extremes(xs);
    let n = xs.len() as f64;
    Ok(match alpha {
        Alpha::NegInf => lo,
        Alpha::PosInf => hi,
        Alpha::Finite(0.0) => xs.iter().sum::<f64>() / n,
        Alpha::Finite(a) => {
            let pivot = if a > 0.0 { hi } else { lo };
            let s = xs.iter().map(|&x| (a * (x - pivot)).exp_m1()).sum::<f64>() / n;
            pivot + s.ln_1p() / a
        }
    })
}

/// Absolute slack allowed between neighbouring grid points.
pub const ORDERING_SLACK: f64 = 1e-9;

/// True iff `power_mean(α, xs)` is non-decreasing along the ascending
/// `grid`, up to [`ORDERING_SLACK`].
pub fn mean_ordering_check(xs: &[f64], grid: &[Alpha]) -> Result<bool> {
    if let Some(i) = grid.windows(2).position(|w| w[0].total_cmp(&w[1]).is_gt()) {
        return Err(Error::UnsortedGrid(i + 1));
    }
    let values = grid
        .iter()
        .map(|&a| power_mean(a, xs))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.windows(2).all(|w| w[1] >= w[0] - ORDERING_SLACK))
}
