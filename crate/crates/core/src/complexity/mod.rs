//! Combinatorial complexity of a point set with respect to anchored boxes:
//! the number of distinct traces `A ∩ P`, the largest number of points on a
//! single right-upper boundary, and the counting bounds that relate them.

mod bounds;

pub use bounds::{
    binom_sum_bound, binomial, bounds_table, claim_bound, hat_n_bound, ln_big, ln_binom_sum_bound, ln_nbound,
    n_recursion, nbound, packing_condition, sauer_shelah, theorem2_bound, theorem2_epsilon, BoundsTable,
};

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::discrepancy::{sort_dedup, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::geometry::{AnchoredBox, PointSet};

/// Fixed-width bitset over point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Mask(Vec<u64>);

impl Mask {
    fn empty(n: usize) -> Self {
        Mask(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        for k in 0..n {
            m.insert(k);
        }
        m
    }

    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    fn filter(&self, n: usize, mut keep: impl FnMut(usize) -> bool) -> Self {
        let mut out = Self::empty(n);
        for k in self.iter().filter(|&k| keep(k)) {
            out.insert(k);
        }
        out
    }
}

/// Distinct coordinate values of the selected points on one axis, ascending.
fn axis_values(ps: &PointSet, members: &Mask, axis: usize) -> Vec<f64> {
    let mut vals: Vec<f64> = members.iter().map(|k| ps.point(k)[axis]).collect();
    sort_dedup(&mut vals);
    vals
}

struct Budget {
    used: u128,
    limit: u128,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { required: self.used, budget: self.limit });
        }
        Ok(())
    }
}

/// Number of distinct subsets `{k : x_k <= b}` over all corners `b`, the empty
/// set included when it is realizable.
pub fn shatter_count(ps: &PointSet) -> Result<BigUint> {
    Ok(BigUint::from(shatter_traces(ps, DEFAULT_BUDGET)?.len()))
}

pub fn shatter_count_with_budget(ps: &PointSet, budget: u128) -> Result<BigUint> {
    Ok(BigUint::from(shatter_traces(ps, budget)?.len()))
}

/// Enumerates the traces axis by axis. On axis `j` only the values `{0}` and
/// the `j`-th coordinates of the points still selected give distinct
/// restrictions, so the product grid `∏ (Γ_j ∪ {0})` is covered without
/// visiting it cell by cell. Repeated `(axis, selection)` states are skipped;
/// the budget counts distinct states.
fn shatter_traces(ps: &PointSet, budget: u128) -> Result<HashSet<Mask>> {
    let n = ps.len();
    let mut traces = HashSet::new();
    let mut seen = HashSet::new();
    let mut budget = Budget { used: 0, limit: budget };
    let mut stack = vec![(0usize, Mask::full(n))];
    while let Some((axis, members)) = stack.pop() {
        if axis == ps.dim() || members.is_empty() {
            traces.insert(members);
            continue;
        }
        if !seen.insert((axis, members.clone())) {
            continue;
        }
        budget.tick()?;
        let mut values = axis_values(ps, &members, axis);
        if values[0] != 0.0 {
            values.insert(0, 0.0);
        }
        for v in values {
            stack.push((axis + 1, members.filter(n, |k| ps.point(k)[axis] <= v)));
        }
    }
    Ok(traces)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShatterReport {
    pub count: BigUint,
    pub includes_empty: bool,
    pub sauer_shelah_bound: BigUint,
    pub max_boundary: usize,
    pub max_boundary_box: AnchoredBox,
}

pub fn shatter_report(ps: &PointSet) -> Result<ShatterReport> {
    shatter_report_with_budget(ps, DEFAULT_BUDGET)
}

pub fn shatter_report_with_budget(ps: &PointSet, budget: u128) -> Result<ShatterReport> {
    let traces = shatter_traces(ps, budget)?;
    let includes_empty = traces.contains(&Mask::empty(ps.len()));
    let (max_boundary_box, max_boundary) = max_boundary_box_with_budget(ps, budget)?;
    Ok(ShatterReport {
        count: BigUint::from(traces.len()),
        includes_empty,
        sauer_shelah_bound: sauer_shelah(ps.len() as u64, ps.dim() as u64),
        max_boundary,
        max_boundary_box,
    })
}

/// Box with the most points on its right-upper boundary, over corners whose
/// entries are coordinate values; ties go to the lexicographically smallest
/// corner.
pub fn max_boundary_box(ps: &PointSet) -> Result<(AnchoredBox, usize)> {
    max_boundary_box_with_budget(ps, DEFAULT_BUDGET)
}

pub fn max_boundary_box_with_budget(ps: &PointSet, budget: u128) -> Result<(AnchoredBox, usize)> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = ps.len();
    let mut search = BoundarySearch {
        ps,
        axis_floor: (0..ps.dim()).map(|j| ps.column(j).fold(f64::INFINITY, f64::min)).collect(),
        memo: HashMap::new(),
        budget: Budget { used: 0, limit: budget },
    };
    let (count, corner) = search.best(0, &Mask::full(n), &Mask::full(n))?;
    Ok((AnchoredBox::new(corner)?, count))
}

/// Exhaustive search for [`max_boundary_box`].
///
/// State on axis `j`: `inside` holds the points with `x_i <= b_i` on the
/// fixed axes, `strict` those with `x_i < b_i`; the boundary count of the
/// finished corner is `|inside| - |strict|`. Lowering `b_j` to the largest
/// coordinate of an `inside` point below it keeps `inside` and can only shrink
/// `strict`, so candidates on axis `j` are the `inside` coordinates; that also
/// preserves the lexicographic tie-break.
struct BoundarySearch<'a> {
    ps: &'a PointSet,
    axis_floor: Vec<f64>,
    memo: HashMap<(usize, Mask, Mask), (usize, Vec<f64>)>,
    budget: Budget,
}

impl BoundarySearch<'_> {
    fn best(&mut self, axis: usize, inside: &Mask, strict: &Mask) -> Result<(usize, Vec<f64>)> {
        let d = self.ps.dim();
        if axis == d {
            return Ok((inside.len() - strict.len(), Vec::new()));
        }
        if inside.is_empty() {
            return Ok((0, self.axis_floor[axis..].to_vec()));
        }
        let key = (axis, inside.clone(), strict.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.budget.tick()?;

        let n = self.ps.len();
        let ps = self.ps;
        let mut best: Option<(usize, Vec<f64>)> = None;
        for v in axis_values(ps, inside, axis) {
            let inside2 = inside.filter(n, |k| ps.point(k)[axis] <= v);
            let strict2 = strict.filter(n, |k| ps.point(k)[axis] < v);
            let (count, tail) = self.best(axis + 1, &inside2, &strict2)?;
            if best.as_ref().is_none_or(|(b, _)| count > *b) {
                let mut corner = Vec::with_capacity(d - axis);
                corner.push(v);
                corner.extend(tail);
                best = Some((count, corner));
            }
        }
        let best = best.expect("non-empty selection has a value");
        self.memo.insert(key, best.clone());
        Ok(best)
    }
}

/// True iff no anchored box has `r` or more points on its right-upper
/// boundary. `r` is compared exactly, so `r = d/4` need not be an integer.
pub fn has_property_p(ps: &PointSet, r: Ratio<u64>) -> Result<bool> {
    if *r.numer() == 0 {
        return Err(Error::Precondition("property P needs r > 0".into()));
    }
    if ps.is_empty() {
        return Ok(true);
    }
    let (_, count) = max_boundary_box(ps)?;
    Ok((count as u128) * (*r.denom() as u128) < *r.numer() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, gen_random, gen_staircase};
    use proptest::prelude::*;

    /// Straight product-grid enumeration, used as the reference here.
    fn brute_traces(ps: &PointSet) -> HashSet<Vec<usize>> {
        let grid: Vec<Vec<f64>> = (0..ps.dim())
            .map(|j| {
                let mut v: Vec<f64> = ps.column(j).chain([0.0]).collect();
                sort_dedup(&mut v);
                v
            })
            .collect();
        let total: usize = grid.iter().map(Vec::len).product();
        let mut out = HashSet::new();
        for mut flat in 0..total {
            let corner: Vec<f64> = grid
                .iter()
                .map(|g| {
                    let v = g[flat % g.len()];
                    flat /= g.len();
                    v
                })
                .collect();
            out.insert((0..ps.len()).filter(|&k| ps.point(k).iter().zip(&corner).all(|(x, b)| x <= b)).collect());
        }
        out
    }

    fn brute_boundary(ps: &PointSet) -> (Vec<f64>, usize) {
        let grid: Vec<Vec<f64>> = (0..ps.dim())
            .map(|j| {
                let mut v: Vec<f64> = ps.column(j).collect();
                sort_dedup(&mut v);
                v
            })
            .collect();
        let total: usize = grid.iter().map(Vec::len).product();
        let mut best: Option<(Vec<f64>, usize)> = None;
        for flat in 0..total {
            // Mixed radix with the first axis most significant: lexicographic order.
            let mut rest = flat;
            let mut corner = vec![0.0; ps.dim()];
            for j in (0..ps.dim()).rev() {
                corner[j] = grid[j][rest % grid[j].len()];
                rest /= grid[j].len();
            }
            let c = ps.boundary_count(&AnchoredBox::new(corner.clone()).unwrap()).unwrap();
            if best.as_ref().is_none_or(|(_, b)| c > *b) {
                best = Some((corner, c));
            }
        }
        best.unwrap()
    }

    #[test]
    fn figure_one_counts() {
        assert_eq!(shatter_count(&gen_chain(9, 2).unwrap()).unwrap(), BigUint::from(10u32));
        assert_eq!(shatter_count(&gen_staircase(9).unwrap()).unwrap(), BigUint::from(46u32));
    }

    #[test]
    fn single_point_has_two_traces() {
        for d in 1..5 {
            let p = PointSet::new(d, vec![vec![0.3; d]]).unwrap();
            let r = shatter_report(&p).unwrap();
            assert_eq!(r.count, BigUint::from(2u32));
            assert!(r.includes_empty);
        }
        // A point at the origin is in every box.
        let origin = PointSet::new(2, vec![vec![0.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let r = shatter_report(&origin).unwrap();
        assert!(!r.includes_empty);
        assert_eq!(r.count, BigUint::from(2u32));
    }

    #[test]
    fn boundary_examples() {
        let (_, c) = max_boundary_box(&gen_chain(9, 2).unwrap()).unwrap();
        assert_eq!(c, 1);
        let (b, c) = max_boundary_box(&gen_staircase(9).unwrap()).unwrap();
        assert_eq!(c, 2);
        assert_eq!(b, AnchoredBox::new(brute_boundary(&gen_staircase(9).unwrap()).0).unwrap());
        let same = PointSet::new(3, vec![vec![0.4, 0.6, 0.2]; 5]).unwrap();
        assert_eq!(max_boundary_box(&same).unwrap(), (AnchoredBox::new(vec![0.4, 0.6, 0.2]).unwrap(), 5));
    }

    #[test]
    fn property_p_examples() {
        let chain = gen_chain(9, 2).unwrap();
        assert!(has_property_p(&chain, Ratio::from_integer(2)).unwrap());
        assert!(!has_property_p(&gen_staircase(9).unwrap(), Ratio::from_integer(2)).unwrap());
        assert!(!has_property_p(&chain, Ratio::new(1, 2)).unwrap());
        assert!(has_property_p(&chain, Ratio::from_integer(0)).is_err());
    }

    #[test]
    fn high_dimensional_chain_is_cheap() {
        let chain = gen_chain(16, 8).unwrap();
        assert_eq!(shatter_count(&chain).unwrap(), BigUint::from(17u32));
        assert_eq!(max_boundary_box(&chain).unwrap().1, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let p = gen_random(30, 3, 1).unwrap();
        assert!(matches!(shatter_count_with_budget(&p, 3), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(max_boundary_box_with_budget(&p, 3), Err(Error::BudgetExceeded { .. })));
    }

    fn arb_points() -> impl Strategy<Value = PointSet> {
        (1usize..=3, 1usize..=7).prop_flat_map(|(d, n)| {
            proptest::collection::vec(0u32..=4, d * n)
                .prop_map(move |raw| PointSet::from_flat(d, raw.into_iter().map(|i| i as f64 / 4.0).collect()).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn traces_match_product_grid(p in arb_points()) {
            let fast = shatter_count(&p).unwrap();
            prop_assert_eq!(fast.clone(), BigUint::from(brute_traces(&p).len()));
            prop_assert!(fast <= sauer_shelah(p.len() as u64, p.dim() as u64));
        }

        #[test]
        fn boundary_matches_product_grid(p in arb_points()) {
            let (b, c) = max_boundary_box(&p).unwrap();
            let (bb, bc) = brute_boundary(&p);
            prop_assert_eq!(c, bc);
            prop_assert_eq!(b.upper(), &bb[..]);
            prop_assert_eq!(p.boundary_count(&b).unwrap(), c);
        }

        #[test]
        fn boundary_axis_permutation_and_duplicates(p in arb_points(), pick in 0usize..7) {
            let (_, c) = max_boundary_box(&p).unwrap();
            let axes: Vec<usize> = (0..p.dim()).rev().collect();
            prop_assert_eq!(max_boundary_box(&p.project(&axes).unwrap()).unwrap().1, c);
            let mut rows: Vec<Vec<f64>> = p.points().map(<[f64]>::to_vec).collect();
            rows.push(rows[pick % rows.len()].clone());
            let q = PointSet::new(p.dim(), rows).unwrap();
            prop_assert!(max_boundary_box(&q).unwrap().1 >= c);
        }

        #[test]
        fn property_p_bounds_the_trace_count(p in arb_points(), r in 1u64..3) {
            if r < p.dim() as u64 && has_property_p(&p, Ratio::from_integer(r)).unwrap() {
                let traces = shatter_count(&p).unwrap();
                prop_assert!(traces <= hat_n_bound(p.len() as u64, p.dim() as u64, r));
            }
        }
    }
}
