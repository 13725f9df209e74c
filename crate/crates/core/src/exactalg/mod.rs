//! Exact complex-rational scalars, square matrices over them, and truncated
//! power series with (possibly non-commuting) coefficients.
//!
//! Everything here is exact except [`CMatrix::operator_norm`], which is
//! computed in floating point.

mod matrix;
mod scalar;
mod series;

pub use matrix::{operator_norm_f64, CMatrix};
pub use scalar::{format_rational, parse_rational, CScalar};
pub use series::{Coefficient, MatrixSeries, ScalarSeries, Series, SeriesJson, SeriesKind};
