//! Numerical checks of the two scalar inequalities the case analysis leans on,
//! and the inverse-discrepancy corollary.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

const X_MAX: f64 = 0.1;
const Q_MIN: f64 = 1.0 / 7.0;
const Q_MAX: f64 = 0.25;

/// `(1 - x)^q - 1 + (21/20) q x`, evaluated as `expm1(q ln(1 - x)) + 1.05 q x`
/// to keep the cancellation near `x = 0` under control.
pub fn bernoulli_gap(x: f64, q: f64) -> f64 {
    (q * (-x).ln_1p()).exp_m1() + 1.05 * q * x
}

/// `q (89 - 315 q) / (6 (1 + 4 q))`.
pub fn case3_rational(q: f64) -> f64 {
    q * (89.0 - 315.0 * q) / (6.0 * (1.0 + 4.0 * q))
}

pub fn case3_rational_exact(q: &BigRational) -> BigRational {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    q * (int(89) - int(315) * q) / (int(6) * (int(1) + int(4) * q))
}

/// Point `i` of `count` evenly spaced points on `[lo, hi]`, endpoints exact.
fn lerp(lo: f64, hi: f64, i: usize, count: usize) -> f64 {
    if i + 1 == count {
        return hi;
    }
    let t = i as f64 / (count - 1) as f64;
    lo + (hi - lo) * t
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliReport {
    pub grid_x: usize,
    pub grid_q: usize,
    pub min_value: f64,
    pub argmin_x: f64,
    pub argmin_q: f64,
    pub verified: bool,
}

/// Minimum of [`bernoulli_gap`] over the uniform grid on
/// `[0, 1/10] x [1/7, 1/4]`; verified iff the minimum is non-negative.
pub fn check_bernoulli_inequality(grid_x: usize, grid_q: usize) -> Result<BernoulliReport> {
    if grid_x < 2 || grid_q < 2 {
        return Err(Error::Precondition("grid sizes must be at least 2".into()));
    }
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..grid_x {
        let x = lerp(0.0, X_MAX, i, grid_x);
        for l in 0..grid_q {
            let q = lerp(Q_MIN, Q_MAX, l, grid_q);
            let g = bernoulli_gap(x, q);
            if g < best.0 {
                best = (g, x, q);
            }
        }
    }
    Ok(BernoulliReport {
        grid_x,
        grid_q,
        min_value: best.0,
        argmin_x: best.1,
        argmin_q: best.2,
        verified: best.0 >= 0.0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalReport {
    pub grid_q: usize,
    pub min_value: f64,
    pub argmin_q: f64,
    pub verified: bool,
}

/// Minimum of [`case3_rational`] over a uniform grid on `[1/7, 1/4]`;
/// verified iff the minimum is at least `1/12`.
pub fn check_case3_rational(grid_q: usize) -> Result<RationalReport> {
    if grid_q < 2 {
        return Err(Error::Precondition("grid size must be at least 2".into()));
    }
    let (min_value, argmin_q) = (0..grid_q)
        .map(|l| {
            let q = lerp(Q_MIN, Q_MAX, l, grid_q);
            (case3_rational(q), q)
        })
        .fold((f64::INFINITY, 0.0), |best, cur| if cur.0 < best.0 { cur } else { best });
    Ok(RationalReport { grid_q, min_value, argmin_q, verified: min_value >= 1.0 / 12.0 })
}

/// `d / (12 ε)`: fewer points than this cannot reach star discrepancy `ε`,
/// for `0 < ε < 1/3000`.
pub fn inverse_discrepancy_lower_bound(epsilon: f64, d: usize) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0 / 3000.0) {
        return Err(Error::Precondition(format!("epsilon must satisfy 0 < epsilon < 1/3000, got {epsilon}")));
    }
    Ok(d as f64 / (12.0 * epsilon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::FromPrimitive;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn bernoulli_points() {
        assert_eq!(bernoulli_gap(0.0, 0.2), 0.0);
        let g = bernoulli_gap(0.1, 0.25);
        assert_relative_eq!(g, 0.9f64.powf(0.25) - 1.0 + 0.02625, epsilon = 1e-15);
        assert!(g > 0.0);
    }

    #[test]
    fn rational_endpoints_exact() {
        assert_eq!(case3_rational_exact(&rat(1, 7)), rat(2, 3));
        assert_eq!(case3_rational_exact(&rat(1, 4)), rat(41, 192));
        assert_relative_eq!(case3_rational(1.0 / 7.0), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(case3_rational(0.25), 10.25 / 48.0, epsilon = 1e-15);
    }

    #[test]
    fn rational_grid_minimum_is_at_right_endpoint() {
        let r = check_case3_rational(1001).unwrap();
        assert!(r.verified);
        assert_eq!(r.argmin_q, 0.25);
        // Exact re-check of the float minimum location.
        let q = BigRational::from_f64(r.argmin_q).unwrap();
        assert!(case3_rational_exact(&q) >= rat(1, 12));
    }

    #[test]
    fn small_bernoulli_grid() {
        let r = check_bernoulli_inequality(101, 101).unwrap();
        assert!(r.verified);
        assert_eq!(r.min_value, 0.0);
        assert_eq!(r.argmin_x, 0.0);
        assert!(check_bernoulli_inequality(1, 5).is_err());
    }

    #[test]
    fn inverse_bound() {
        assert_relative_eq!(inverse_discrepancy_lower_bound(1.0 / 6000.0, 2).unwrap(), 1000.0, epsilon = 1e-9);
        assert_relative_eq!(inverse_discrepancy_lower_bound(1.0 / 12000.0, 12).unwrap(), 12000.0, epsilon = 1e-9);
        assert!(inverse_discrepancy_lower_bound(1.0 / 3000.0, 2).is_err());
        assert!(inverse_discrepancy_lower_bound(0.0, 2).is_err());
    }
}
