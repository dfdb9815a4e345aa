use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("coordinate {value} of point {point} (axis {axis}) is outside [0, 1]")]
    CoordinateOutOfRange { point: usize, axis: usize, value: f64 },

    #[error("box corner entry {value} on axis {axis} is outside [0, 1]")]
    CornerOutOfRange { axis: usize, value: f64 },

    /// The enumeration would touch more cells (or states) than allowed.
    #[error("enumeration needs {required} cells but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
