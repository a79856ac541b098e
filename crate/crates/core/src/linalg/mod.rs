//! Dense real matrices and their eigen/singular spectra.

mod jacobi;
mod matrix;
mod svd;
mod text;

use thiserror::Error;

pub use jacobi::{
    jacobi_eigenvalues, jacobi_eigh, SymmetricEigen, MAX_SWEEPS, OFF_DIAGONAL_TOLERANCE,
    SYMMETRY_TOLERANCE,
};
pub use matrix::DenseMatrix;
pub use svd::{singular_values, singular_values_symmetric, SingularSpectrum};
pub use text::{parse_matrix, write_matrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {actual}")]
    DataLength { expected: usize, actual: usize },
    #[error("row {row} has {actual} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        actual: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric: max |a_ij - a_ji| = {deviation:e} exceeds {tolerance:e}")]
    NotSymmetric { deviation: f64, tolerance: f64 },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
