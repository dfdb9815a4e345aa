//! Deterministic point-set families.
//!
//! Every coordinate produced here is a rational with a small denominator or a
//! dyadic, so exact ties between points and box faces are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Largest Halton dimension supported.
pub const MAX_HALTON_DIM: usize = 16;

const PRIMES: [u64; MAX_HALTON_DIM] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Random coordinates live on the grid `{i / 2^20 : 0 <= i <= 2^20}`.
pub const RANDOM_GRID_BITS: u32 = 20;

/// Default cap on the number of lattice points.
pub const DEFAULT_LATTICE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Chain,
    Staircase,
    Random,
    Lattice,
    Halton,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Chain => "chain",
            GeneratorKind::Staircase => "staircase",
            GeneratorKind::Random => "random",
            GeneratorKind::Lattice => "lattice",
            GeneratorKind::Halton => "halton",
        }
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(Self::Chain),
            "staircase" => Ok(Self::Staircase),
            "random" => Ok(Self::Random),
            "lattice" => Ok(Self::Lattice),
            "halton" => Ok(Self::Halton),
            other => Err(Error::Precondition(format!("unknown generator kind `{other}`"))),
        }
    }
}

/// Full description of a generated set.
///
/// For [`GeneratorKind::Lattice`] `n` is the number of points per axis `m`,
/// and the set has `m^d` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<PointSet> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::Precondition("generators need n >= 1 and d >= 1".into()));
        }
        match self.kind {
            GeneratorKind::Chain => gen_chain(self.n, self.d),
            GeneratorKind::Staircase if self.d != 2 => {
                Err(Error::Precondition("the staircase is two-dimensional (d = 2)".into()))
            }
            GeneratorKind::Staircase => gen_staircase(self.n),
            GeneratorKind::Random => gen_random(self.n, self.d, self.seed),
            GeneratorKind::Lattice => gen_lattice(self.n, self.d),
            GeneratorKind::Halton => gen_halton(self.n, self.d),
        }
    }
}

/// Diagonal chain `(k/(n+1), ..., k/(n+1))`, `k = 1..n`.
///
/// No anchored box has two of these points on its right-upper boundary.
pub fn gen_chain(n: usize, d: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::Precondition("chain needs n >= 1".into()));
    }
    let denom = (n + 1) as f64;
    PointSet::from_flat(d, (1..=n).flat_map(|k| std::iter::repeat_n(k as f64 / denom, d)).collect())
}

/// Planar antichain `(k/(n+1), (n+1-k)/(n+1))`, `k = 1..n`.
pub fn gen_staircase(n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::Precondition("staircase needs n >= 1".into()));
    }
    let denom = (n + 1) as f64;
    PointSet::from_flat(2, (1..=n).flat_map(|k| [k as f64 / denom, (n + 1 - k) as f64 / denom]).collect())
}

/// I.i.d. uniform coordinates on the `2^-20` grid, drawn from a ChaCha8
/// stream seeded with `seed` (portable and stable across platforms).
pub fn gen_random(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (1u64 << RANDOM_GRID_BITS) as f64;
    let coords = (0..n * d).map(|_| rng.gen_range(0..=1u32 << RANDOM_GRID_BITS) as f64 / scale).collect();
    PointSet::from_flat(d, coords)
}

/// Cell centres `((i_1 + 1/2)/m, ..., (i_d + 1/2)/m)` of the regular `m^d` grid.
pub fn gen_lattice(m: usize, d: usize) -> Result<PointSet> {
    gen_lattice_with_budget(m, d, DEFAULT_LATTICE_BUDGET)
}

pub fn gen_lattice_with_budget(m: usize, d: usize, budget: u128) -> Result<PointSet> {
    if m == 0 || d == 0 {
        return Err(Error::Precondition("lattice needs m >= 1 and d >= 1".into()));
    }
    let total = (m as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let total = total as usize;
    let mut coords = Vec::with_capacity(total * d);
    let mut idx = vec![0usize; d];
    for _ in 0..total {
        coords.extend(idx.iter().map(|&i| (2 * i + 1) as f64 / (2 * m) as f64));
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    PointSet::from_flat(d, coords)
}

/// Radical inverse of `k` in `base`, evaluated as one exact integer ratio.
pub fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut reversed: u64 = 0;
    let mut denom: u64 = 1;
    while k > 0 {
        reversed = reversed * base + k % base;
        denom *= base;
        k /= base;
    }
    reversed as f64 / denom as f64
}

/// Halton points `k = 1..n` with the first `d` primes as bases.
pub fn gen_halton(n: usize, d: usize) -> Result<PointSet> {
    if d == 0 || d > MAX_HALTON_DIM {
        return Err(Error::Precondition(format!("halton supports 1 <= d <= {MAX_HALTON_DIM}, got {d}")));
    }
    let coords = (1..=n as u64).flat_map(|k| PRIMES[..d].iter().map(move |&b| radical_inverse(k, b))).collect();
    PointSet::from_flat(d, coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_shape() {
        let c = gen_chain(9, 2).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c.point(0), &[0.1, 0.1]);
        assert_eq!(gen_chain(1, 4).unwrap().point(0), &[0.5; 4]);
    }

    #[test]
    fn staircase_shape() {
        let s = gen_staircase(2).unwrap();
        assert_eq!(s.point(0), &[1.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(s.point(1), &[2.0 / 3.0, 1.0 / 3.0]);
        let spec = GeneratorSpec { kind: GeneratorKind::Staircase, n: 4, d: 3, seed: 0 };
        assert!(spec.generate().is_err());
    }

    #[test]
    fn random_is_deterministic_and_dyadic() {
        let a = gen_random(50, 3, 7).unwrap();
        assert_eq!(a, gen_random(50, 3, 7).unwrap());
        assert_ne!(a, gen_random(50, 3, 8).unwrap());
        let scale = (1u64 << RANDOM_GRID_BITS) as f64;
        for &v in a.as_flat() {
            assert!((0.0..=1.0).contains(&v));
            assert_eq!((v * scale).fract(), 0.0);
        }
    }

    #[test]
    fn lattice_shape() {
        assert_eq!(gen_lattice(1, 3).unwrap().point(0), &[0.5; 3]);
        let l = gen_lattice(2, 2).unwrap();
        let pts: Vec<_> = l.points().map(<[f64]>::to_vec).collect();
        assert_eq!(pts, vec![vec![0.25, 0.25], vec![0.25, 0.75], vec![0.75, 0.25], vec![0.75, 0.75]]);
        assert!(matches!(gen_lattice_with_budget(10, 10, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn halton_values() {
        let h = gen_halton(3, 2).unwrap();
        assert_eq!(h.column(0).collect::<Vec<_>>(), vec![0.5, 0.25, 0.75]);
        assert_eq!(h.column(1).collect::<Vec<_>>(), vec![1.0 / 3.0, 2.0 / 3.0, 1.0 / 9.0]);
        let h = gen_halton(200, 16).unwrap();
        assert!(h.as_flat().iter().all(|&v| v > 0.0 && v < 1.0));
        assert!(gen_halton(5, 17).is_err());
    }
}
