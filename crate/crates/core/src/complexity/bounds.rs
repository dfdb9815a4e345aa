//! Counting bounds for traces of anchored boxes: Sauer–Shelah sums, the
//! Pascal-type recursion they solve, the two-dimensions-at-a-time recursion
//! for sets without crowded boundaries, and the real-valued estimates used to
//! turn them into a discrepancy bound.
//!
//! Exact quantities are `BigUint`; real-valued ones are evaluated in log
//! space so that large `d` does not overflow.

use std::f64::consts::{E, LN_2};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{i=0}^{min(d,n)} C(n, i)`.
pub fn sauer_shelah(n: u64, d: u64) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in 0..d.min(n) {
        term = term * (n - i) / (i + 1);
        sum += &term;
    }
    sum
}

/// Table of `Σ_{i <= s} C(m, i)` for `m <= max_m`, `s <= max_s`.
fn sauer_table(max_m: usize, max_s: usize) -> Vec<Vec<BigUint>> {
    let mut row = vec![BigUint::zero(); max_s + 1];
    row[0] = BigUint::one();
    let mut table = Vec::with_capacity(max_m + 1);
    for m in 0..=max_m {
        if m > 0 {
            for i in (1..=max_s).rev() {
                let prev = row[i - 1].clone();
                row[i] += prev;
            }
        }
        let mut acc = BigUint::zero();
        table.push(
            row.iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        );
    }
    table
}

/// Solution of `N(n,d) = N(n-1,d) + N(n-1,d-1)` with `N(1,d) = 2` and
/// `N(n,1) = n + 1`. Both arguments must be at least 1.
pub fn n_recursion(n: u64, d: u64) -> BigUint {
    assert!(n >= 1 && d >= 1, "n_recursion needs n >= 1 and d >= 1");
    let (n, d) = (n as usize, d as usize);
    // memo[s] holds N(m, s) for the current m, s = 1..=d.
    let mut memo: Vec<BigUint> = (0..=d).map(|_| BigUint::from(2u32)).collect();
    for m in 2..=n {
        for s in (2..=d).rev() {
            let prev = memo[s - 1].clone();
            memo[s] += prev;
        }
        memo[1] = BigUint::from(m + 1);
    }
    memo[d].clone()
}

/// Upper bound on the number of traces of `m` points in `[0,1]^s` that have
/// fewer than `r` points on every right-upper boundary.
///
/// `U(m,s,r) = N(m,s)` when `r >= s` (this also covers `s = 0`, since
/// `r >= 1`), `U(1,s,r) = 2`, and otherwise
/// `U(m,s,r) = min(N(m,s), U(m-1,s,r) + U(m-1,s-2,r))`.
pub fn hat_n_bound(m: u64, s: u64, r: u64) -> BigUint {
    assert!(m >= 1 && r >= 1, "hat_n_bound needs m >= 1 and r >= 1");
    let (m, s, r) = (m as usize, s as usize, r as usize);
    let sauer = sauer_table(m, s);
    // prev[t] = U(m'-1, t, r)
    let mut prev: Vec<BigUint> = Vec::new();
    for mm in 1..=m {
        let cur: Vec<BigUint> = (0..=s)
            .map(|t| {
                if r >= t {
                    sauer[mm][t].clone()
                } else if mm == 1 {
                    BigUint::from(2u32)
                } else {
                    let rec = &prev[t] + &prev[t - 2];
                    rec.min(sauer[mm][t].clone())
                }
            })
            .collect();
        prev = cur;
    }
    prev[s].clone()
}

/// `N(n,r) · Σ_{0 <= i <= d/2} C(n,i)`.
pub fn claim_bound(n: u64, d: u64, r: u64) -> BigUint {
    sauer_shelah(n, r) * sauer_shelah(n, d / 2)
}

fn require_n_ge_d(n: u64, d: u64) -> Result<()> {
    if d == 0 || n < d {
        return Err(Error::Precondition(format!("need n >= d >= 1 (n = {n}, d = {d})")));
    }
    Ok(())
}

/// `ln(2^d (e n / d)^{3d/4})`.
pub fn ln_nbound(n: u64, d: u64) -> Result<f64> {
    require_n_ge_d(n, d)?;
    let d = d as f64;
    Ok(d * LN_2 + 0.75 * d * (1.0 + (n as f64 / d).ln()))
}

pub fn nbound(n: u64, d: u64) -> Result<f64> {
    ln_nbound(n, d).map(f64::exp)
}

/// `ln((e n / d)^d)`.
pub fn ln_binom_sum_bound(n: u64, d: u64) -> Result<f64> {
    require_n_ge_d(n, d)?;
    let d = d as f64;
    Ok(d * (1.0 + (n as f64 / d).ln()))
}

pub fn binom_sum_bound(n: u64, d: u64) -> Result<f64> {
    ln_binom_sum_bound(n, d).map(f64::exp)
}

/// Natural logarithm of a big integer (`-inf` for zero).
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * LN_2
}

/// `d^{3/4} / (372 n^{3/4})`.
pub fn theorem2_bound(n: u64, d: u64) -> Result<f64> {
    require_n_ge_d(n, d)?;
    Ok((d as f64 / n as f64).powf(0.75) / 372.0)
}

/// `ε = d^{3/4} / (93 n^{3/4})`; the discrepancy bound is `ε/4`.
pub fn theorem2_epsilon(n: u64, d: u64) -> Result<f64> {
    require_n_ge_d(n, d)?;
    Ok((d as f64 / n as f64).powf(0.75) / 93.0)
}

/// Whether `2^d (e n/d)^{3d/4} < (8 e ε)^{-d}`, compared in log space.
pub fn packing_condition(n: u64, d: u64, epsilon: f64) -> Result<bool> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let lhs = ln_nbound(n, d)?;
    let rhs = -(d as f64) * (8.0 * E * epsilon).ln();
    Ok(lhs < rhs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsTable {
    pub n: u64,
    pub d: u64,
    pub r: u64,
    pub sauer: BigUint,
    pub n_rec: BigUint,
    pub hat_n: BigUint,
    pub claim: BigUint,
    pub nbound_real: f64,
    pub binom_bound_real: f64,
    pub thm2_bound: f64,
    pub epsilon: f64,
    pub packing_ok: bool,
}

pub fn bounds_table(n: u64, d: u64, r: u64) -> Result<BoundsTable> {
    require_n_ge_d(n, d)?;
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let epsilon = theorem2_epsilon(n, d)?;
    Ok(BoundsTable {
        n,
        d,
        r,
        sauer: sauer_shelah(n, d),
        n_rec: n_recursion(n, d),
        hat_n: hat_n_bound(n, d, r),
        claim: claim_bound(n, d, r),
        nbound_real: nbound(n, d)?,
        binom_bound_real: binom_sum_bound(n, d)?,
        thm2_bound: theorem2_bound(n, d)?,
        epsilon,
        packing_ok: packing_condition(n, d, epsilon)?,
    })
}
