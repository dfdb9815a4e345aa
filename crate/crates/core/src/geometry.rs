//! Point sets, anchored boxes and the counting primitives the rest of the
//! crate is built on.
//!
//! Boxes are closed: `[0, b]` contains every point `x` with `x <= b`
//! componentwise. Coordinates are compared by exact `f64` equality, so a
//! point sitting on a face of a box is really on it.

use crate::error::{Error, Result};

/// A multiset of `n` points in `[0, 1]^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from explicit rows. Every row must have length `dim`
    /// and every entry must lie in `[0, 1]`.
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (k, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            for (j, &v) in p.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::CoordinateOutOfRange { point: k, axis: j, value: v });
                }
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords })
    }

    /// Builds a point set from a flat row-major buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch { expected: dim, found: coords.len() % dim });
        }
        for (i, &v) in coords.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::CoordinateOutOfRange { point: i / dim, axis: i % dim, value: v });
            }
        }
        Ok(Self { dim, coords })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::from_flat(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.coords[k * self.dim..(k + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Coordinates of every point along axis `j`.
    pub fn column(&self, j: usize) -> impl ExactSizeIterator<Item = f64> + '_ {
        assert!(j < self.dim, "axis {j} out of range for dimension {}", self.dim);
        self.coords.iter().skip(j).step_by(self.dim).copied()
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// Restriction of every point to the given axes, in the given order.
    pub fn project(&self, axes: &[usize]) -> Result<Self> {
        if let Some(&bad) = axes.iter().find(|&&j| j >= self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: bad + 1 });
        }
        let coords = self.points().flat_map(|p| axes.iter().map(move |&j| p[j])).collect();
        Self::from_flat(axes.len(), coords)
    }

    fn check_box(&self, b: &AnchoredBox) -> Result<()> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.dim() });
        }
        Ok(())
    }

    /// Number of points inside the closed box `[0, b]`.
    pub fn count_le(&self, b: &AnchoredBox) -> Result<usize> {
        self.check_box(b)?;
        Ok(self.points().filter(|p| dominated_by(p, &b.upper)).count())
    }

    /// Number of points strictly below `b` in every coordinate.
    pub fn count_lt(&self, b: &AnchoredBox) -> Result<usize> {
        self.check_box(b)?;
        Ok(self.points().filter(|p| strictly_below(p, &b.upper)).count())
    }

    /// Number of points on the right-upper boundary of `[0, b]`: inside the
    /// closed box and equal to `b` in at least one coordinate.
    pub fn boundary_count(&self, b: &AnchoredBox) -> Result<usize> {
        self.check_box(b)?;
        Ok(self
            .points()
            .filter(|p| dominated_by(p, &b.upper) && p.iter().zip(&b.upper).any(|(x, y)| x == y))
            .count())
    }

    /// The larger of the overfull excess `count_le/n - vol` and the underfull
    /// deficit `vol - count_lt/n` at `b`.
    pub fn local_disc(&self, b: &AnchoredBox) -> Result<LocalDiscrepancy> {
        if self.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let le = self.count_le(b)?;
        let lt = self.count_lt(b)?;
        Ok(LocalDiscrepancy::from_counts(b.clone(), le, lt, self.len()))
    }
}

pub(crate) fn dominated_by(p: &[f64], upper: &[f64]) -> bool {
    p.iter().zip(upper).all(|(x, y)| x <= y)
}

pub(crate) fn strictly_below(p: &[f64], upper: &[f64]) -> bool {
    p.iter().zip(upper).all(|(x, y)| x < y)
}

/// Closed anchored box `[0, b_1] x ... x [0, b_d]`, identified by its upper
/// corner.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchoredBox {
    upper: Vec<f64>,
}

impl AnchoredBox {
    pub fn new(upper: Vec<f64>) -> Result<Self> {
        if upper.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some((axis, &value)) = upper.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::CornerOutOfRange { axis, value });
        }
        Ok(Self { upper })
    }

    pub fn unit(dim: usize) -> Self {
        Self { upper: vec![1.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.upper.len()
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Product of the corner entries, left to right.
    pub fn volume(&self) -> f64 {
        volume(&self.upper)
    }
}

/// Left-to-right product; every volume in the crate goes through here so that
/// equal corners always give bit-identical volumes.
pub(crate) fn volume(upper: &[f64]) -> f64 {
    upper.iter().fold(1.0, |acc, &v| acc * v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// The closed box holds more points than its volume warrants.
    Overfull,
    /// The (limit of the) open box holds fewer points than its volume warrants.
    Underfull,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Overfull => "overfull",
            Side::Underfull => "underfull",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalDiscrepancy {
    pub value: f64,
    pub side: Side,
    pub corner: AnchoredBox,
}

impl LocalDiscrepancy {
    pub(crate) fn from_counts(corner: AnchoredBox, le: usize, lt: usize, n: usize) -> Self {
        let (value, side) = signed_max(corner.volume(), le, lt, n);
        Self { value, side, corner }
    }
}

/// `max(le/n - vol, vol - lt/n)`, overfull on ties.
pub(crate) fn signed_max(vol: f64, le: usize, lt: usize, n: usize) -> (f64, Side) {
    let n = n as f64;
    let over = le as f64 / n - vol;
    let under = vol - lt as f64 / n;
    if over >= under {
        (over, Side::Overfull)
    } else {
        (under, Side::Underfull)
    }
}
