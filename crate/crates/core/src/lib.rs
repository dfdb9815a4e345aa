//! Star discrepancy and combinatorial complexity of finite point sets in the
//! unit cube.
//!
//! * [`geometry`]: point sets, closed anchored boxes, counting primitives.
//! * [`discrepancy`]: exact star discrepancy over the critical grid, an
//!   independent brute-force oracle and a sampling lower bound.
//! * [`witness`]: constructive witness boxes certifying `D*_n >= d/(12n)`.
//! * [`complexity`]: trace counts, crowded boundaries, and the counting bounds
//!   that connect them to discrepancy.
//! * [`generators`]: deterministic test families.
//! * [`io`]: the plain-text points format.

pub mod complexity;
pub mod discrepancy;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod witness;

pub use error::{Error, Result};
pub use geometry::{AnchoredBox, LocalDiscrepancy, PointSet, Side};
