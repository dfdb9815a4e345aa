//! Exact star discrepancy by enumeration of the critical grid.
//!
//! For a point set `P` let `Γ_j` be the distinct `j`-th coordinates of `P`
//! together with `1`. The supremum over all anchored boxes is attained (or
//! approached from below) at corners of `Γ_1 x ... x Γ_d`: the overfull side
//! at closed boxes whose corner entries are coordinate values, the underfull
//! side in the limit of boxes growing towards such a corner, which is why the
//! underfull branch uses the strict count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{signed_max, volume, AnchoredBox, LocalDiscrepancy, PointSet, Side};

/// Default cap on the number of grid cells an exact enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyResult {
    pub value: f64,
    pub witness: AnchoredBox,
    pub side: Side,
}

/// Per-axis sorted, deduplicated coordinate values with `1` appended.
pub fn critical_grid(ps: &PointSet) -> Vec<Vec<f64>> {
    (0..ps.dim())
        .map(|j| {
            let mut values: Vec<f64> = ps.column(j).chain(std::iter::once(1.0)).collect();
            sort_dedup(&mut values);
            values
        })
        .collect()
}

pub(crate) fn sort_dedup(values: &mut Vec<f64>) {
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| a == b);
}

/// Number of corners in a product grid, saturating.
pub(crate) fn grid_cells<T>(grid: &[Vec<T>]) -> u128 {
    grid.iter().fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128))
}

pub fn star_discrepancy_exact(ps: &PointSet) -> Result<DiscrepancyResult> {
    star_discrepancy_exact_with_budget(ps, DEFAULT_BUDGET)
}

/// Exhaustive maximum of the local discrepancy over the critical grid.
///
/// The witness is the lexicographically smallest maximizing corner. The first
/// axis is split across the rayon pool; the tie-break makes the result
/// independent of the thread count.
pub fn star_discrepancy_exact_with_budget(ps: &PointSet, budget: u128) -> Result<DiscrepancyResult> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let grid = critical_grid(ps);
    let cells = grid_cells(&grid);
    if cells > budget {
        return Err(Error::BudgetExceeded { required: cells, budget });
    }

    let enumerator = Enumerator { ps, grid: &grid };
    let all: Vec<u32> = (0..ps.len() as u32).collect();

    let best = if ps.dim() == 1 {
        let mut path = Vec::with_capacity(1);
        enumerator.descend(0, &all, &all, 1.0, &mut path)
    } else {
        grid[0]
            .par_iter()
            .enumerate()
            .map(|(i, &v)| {
                let (le, lt) = enumerator.filter(0, v, &all, &all);
                let mut path = vec![v];
                (i, enumerator.descend(1, &le, &lt, volume(&[v]), &mut path))
            })
            .reduce(
                || (usize::MAX, None),
                |a, b| {
                    // Strictly larger value wins; on equal values the smaller first-axis index.
                    match (&a.1, &b.1) {
                        (None, _) => b,
                        (_, None) => a,
                        (Some(x), Some(y)) => {
                            if y.value > x.value || (y.value == x.value && b.0 < a.0) {
                                b
                            } else {
                                a
                            }
                        }
                    }
                },
            )
            .1
    };

    let best = best.expect("grid is never empty");
    Ok(DiscrepancyResult {
        value: best.value,
        side: best.side,
        witness: AnchoredBox::new(best.corner).expect("grid values lie in [0, 1]"),
    })
}

struct Candidate {
    value: f64,
    side: Side,
    corner: Vec<f64>,
}

struct Enumerator<'a> {
    ps: &'a PointSet,
    grid: &'a [Vec<f64>],
}

impl Enumerator<'_> {
    fn filter(&self, axis: usize, v: f64, le: &[u32], lt: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let x = |k: u32| self.ps.point(k as usize)[axis];
        let le = le.iter().copied().filter(|&k| x(k) <= v).collect();
        let lt = lt.iter().copied().filter(|&k| x(k) < v).collect();
        (le, lt)
    }

    /// Best candidate in the subtree below the fixed prefix `path`.
    ///
    /// `le` holds the points with `x_i <= b_i` on every fixed axis, `lt` those
    /// with `x_i < b_i`; `prefix_vol` is the left-to-right product of `path`.
    fn descend(&self, axis: usize, le: &[u32], lt: &[u32], prefix_vol: f64, path: &mut Vec<f64>) -> Option<Candidate> {
        let last = self.grid.len() - 1;
        if axis == last {
            return Some(self.sweep_last(le, lt, prefix_vol, path));
        }
        let mut best: Option<Candidate> = None;
        for &v in &self.grid[axis] {
            let (le2, lt2) = self.filter(axis, v, le, lt);
            path.push(v);
            let cand = self.descend(axis + 1, &le2, &lt2, prefix_vol * v, path);
            path.pop();
            if let Some(c) = cand {
                if best.as_ref().is_none_or(|b| c.value > b.value) {
                    best = Some(c);
                }
            }
        }
        best
    }

    /// On the last axis the counts are monotone in the grid value, so one
    /// merge-style sweep over sorted coordinates covers every cell.
    fn sweep_last(&self, le: &[u32], lt: &[u32], prefix_vol: f64, path: &[f64]) -> Candidate {
        let axis = self.grid.len() - 1;
        let sorted = |idx: &[u32]| {
            let mut xs: Vec<f64> = idx.iter().map(|&k| self.ps.point(k as usize)[axis]).collect();
            xs.sort_by(f64::total_cmp);
            xs
        };
        let le_x = sorted(le);
        let lt_x = sorted(lt);
        let n = self.ps.len();

        let (mut i_le, mut i_lt) = (0, 0);
        let mut best: Option<(f64, Side, f64)> = None;
        for &v in &self.grid[axis] {
            while i_le < le_x.len() && le_x[i_le] <= v {
                i_le += 1;
            }
            while i_lt < lt_x.len() && lt_x[i_lt] < v {
                i_lt += 1;
            }
            let (value, side) = signed_max(prefix_vol * v, i_le, i_lt, n);
            if best.is_none_or(|(b, _, _)| value > b) {
                best = Some((value, side, v));
            }
        }
        let (value, side, v) = best.expect("grid is never empty");
        let mut corner = path.to_vec();
        corner.push(v);
        Candidate { value, side, corner }
    }
}

/// Brute-force evaluation over the uniform mesh `{i/m}^d` merged with the
/// critical grid.
///
/// Shares no enumeration code with [`star_discrepancy_exact`]: corners are
/// walked with a flat mixed-radix counter and every count is recomputed from
/// scratch.
pub fn star_discrepancy_oracle(ps: &PointSet, mesh: usize) -> Result<f64> {
    if mesh == 0 {
        return Err(Error::Precondition("mesh size must be at least 1".into()));
    }
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let d = ps.dim();
    let n = ps.len();
    let axes: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            let mut vals: Vec<f64> = (0..=mesh).map(|i| i as f64 / mesh as f64).collect();
            vals.extend(ps.points().map(|p| p[j]));
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            vals.dedup();
            vals
        })
        .collect();
    let total: usize = axes.iter().map(Vec::len).product();

    let mut corner = vec![0.0; d];
    let mut best = f64::NEG_INFINITY;
    for flat in 0..total {
        let mut rest = flat;
        for j in (0..d).rev() {
            let len = axes[j].len();
            corner[j] = axes[j][rest % len];
            rest /= len;
        }
        let mut inside = 0usize;
        let mut strict = 0usize;
        for p in ps.points() {
            if (0..d).all(|j| p[j] <= corner[j]) {
                inside += 1;
                if (0..d).all(|j| p[j] < corner[j]) {
                    strict += 1;
                }
            }
        }
        let vol: f64 = corner.iter().product();
        let over = inside as f64 / n as f64 - vol;
        let under = vol - strict as f64 / n as f64;
        best = best.max(over).max(under);
    }
    Ok(best)
}

/// Heuristic lower bound: the best local discrepancy among `budget` corners
/// drawn uniformly from the critical grid with a seeded ChaCha8 stream.
///
/// When the budget covers the whole grid the exact enumeration runs instead.
pub fn lower_bound_sample(ps: &PointSet, budget: u64, seed: u64) -> Result<LocalDiscrepancy> {
    if budget == 0 {
        return Err(Error::Precondition("sample budget must be at least 1".into()));
    }
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let grid = critical_grid(ps);
    if grid_cells(&grid) <= budget as u128 {
        let exact = star_discrepancy_exact_with_budget(ps, budget as u128)?;
        return ps.local_disc(&exact.witness);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corner = vec![0.0; ps.dim()];
    let mut best: Option<LocalDiscrepancy> = None;
    for _ in 0..budget {
        for (c, axis) in corner.iter_mut().zip(&grid) {
            *c = axis[rng.gen_range(0..axis.len())];
        }
        let b = AnchoredBox::new(corner.clone())?;
        let ld = ps.local_disc(&b)?;
        if best.as_ref().is_none_or(|cur| ld.value > cur.value) {
            best = Some(ld);
        }
    }
    Ok(best.expect("budget is at least 1"))
}
