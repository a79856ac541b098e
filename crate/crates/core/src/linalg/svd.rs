use super::jacobi::{descending_order, jacobi_eigenvalues};
use super::{DenseMatrix, LinalgError};

/// Singular values of a matrix, `min(rows, cols)` of them, nonnegative and
/// sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
}

impl SingularSpectrum {
    /// Sum of the singular values.
    pub fn energy(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sigma1(&self) -> f64 {
        self.values[0]
    }

    /// Second largest singular value, absent for a single row or column.
    pub fn sigma2(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|s| s * s).sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Singular values through the eigenvalues of the smaller Gram matrix
/// (`A Aᵀ` when `rows <= cols`, else `Aᵀ A`). Roundoff-negative eigenvalues
/// are clamped to zero before the square root.
pub fn singular_values(a: &DenseMatrix) -> Result<SingularSpectrum, LinalgError> {
    let gram = a.smaller_gram();
    let eigenvalues = jacobi_eigenvalues(&gram)?;
    // eigenvalues are already descending and clamp + sqrt preserve that
    Ok(SingularSpectrum {
        values: eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect(),
    })
}

/// Singular values of a symmetric matrix as the moduli of its eigenvalues.
/// Avoids squaring the condition number; preferred for adjacency matrices.
pub fn singular_values_symmetric(s: &DenseMatrix) -> Result<SingularSpectrum, LinalgError> {
    let moduli: Vec<f64> = jacobi_eigenvalues(s)?.iter().map(|l| l.abs()).collect();
    let order = descending_order(&moduli);
    Ok(SingularSpectrum {
        values: order.iter().map(|&k| moduli[k]).collect(),
    })
}
