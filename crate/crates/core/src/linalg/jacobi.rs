//! Cyclic Jacobi eigendecomposition for dense real symmetric matrices.
//!
//! Each sweep visits every `(p, q)` pair with `p < q` in row order and
//! annihilates `a[p][q]` with a plane rotation. Iteration stops once the
//! off-diagonal Frobenius norm drops to [`OFF_DIAGONAL_TOLERANCE`] times the
//! Frobenius norm of the input.

use super::{DenseMatrix, LinalgError};

/// Relative off-diagonal norm at which the iteration is considered converged.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
/// Hard cap on the number of sweeps; hitting it is reported as an error.
pub const MAX_SWEEPS: usize = 60;
/// Relative per-entry tolerance for the symmetry precondition.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues in descending order, with the orthogonal basis whose column
/// `i` is the eigenvector of `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    pub basis: DenseMatrix,
}

impl SymmetricEigen {
    /// `basis * diag(eigenvalues) * basisᵀ`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.eigenvalues.len();
        let v = &self.basis;
        DenseMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v.get(i, k) * self.eigenvalues[k] * v.get(j, k)).sum()
        })
        .expect("reconstruction of a finite decomposition is finite")
    }
}

/// Full eigendecomposition of a symmetric matrix.
pub fn jacobi_eigh(s: &DenseMatrix) -> Result<SymmetricEigen, LinalgError> {
    let (values, vectors) = run(s, true)?;
    let n = values.len();
    let order = descending_order(&values);
    let vectors = vectors.expect("vectors requested");
    let basis = DenseMatrix::from_fn(n, n, |i, j| vectors[i * n + order[j]])?;
    Ok(SymmetricEigen {
        eigenvalues: order.iter().map(|&k| values[k]).collect(),
        basis,
    })
}

/// Eigenvalues only, in descending order. Same iteration as [`jacobi_eigh`]
/// without accumulating the rotations.
pub fn jacobi_eigenvalues(s: &DenseMatrix) -> Result<Vec<f64>, LinalgError> {
    let (values, _) = run(s, false)?;
    let order = descending_order(&values);
    Ok(order.iter().map(|&k| values[k]).collect())
}

/// Indices that sort `values` descending; stable, so ties keep their
/// original order.
pub(crate) fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

type Decomposition = (Vec<f64>, Option<Vec<f64>>);

fn run(s: &DenseMatrix, want_vectors: bool) -> Result<Decomposition, LinalgError> {
    if !s.is_square() {
        return Err(LinalgError::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let n = s.rows();
    let norm = s.frobenius_norm();
    let deviation = s.max_asymmetry().unwrap_or(0.0);
    let tolerance = SYMMETRY_TOLERANCE * norm;
    if deviation > tolerance {
        return Err(LinalgError::NotSymmetric { deviation, tolerance });
    }

    // symmetrize by averaging
    let mut a = s.as_slice().to_vec();
    for i in 0..n {
        for j in i + 1..n {
            let mean = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = mean;
            a[j * n + i] = mean;
        }
    }
    let mut v = want_vectors.then(|| {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    });

    let threshold = OFF_DIAGONAL_TOLERANCE * norm;
    let mut off = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::Convergence {
                sweeps,
                off_norm: off,
            });
        }
        sweep(&mut a, v.as_deref_mut(), n, sweeps);
        sweeps += 1;
        off = off_diagonal_norm(&a, n);
    }

    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, v))
}

fn sweep(a: &mut [f64], mut v: Option<&mut [f64]>, n: usize, sweep_index: usize) {
    for p in 0..n {
        for q in p + 1..n {
            let apq = a[p * n + q];
            if apq == 0.0 {
                continue;
            }
            let app = a[p * n + p];
            let aqq = a[q * n + q];
            let g = 100.0 * apq.abs();
            // Entries negligible next to both diagonal terms are dropped
            // outright once the iteration has settled.
            if sweep_index > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                continue;
            }

            let diff = aqq - app;
            let t = if diff.abs() + g == diff.abs() {
                apq / diff
            } else {
                let theta = 0.5 * diff / apq;
                let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                if theta < 0.0 {
                    -t
                } else {
                    t
                }
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let tau = s / (1.0 + c);

            a[p * n + p] = app - t * apq;
            a[q * n + q] = aqq + t * apq;
            a[p * n + q] = 0.0;
            a[q * n + p] = 0.0;

            for r in 0..n {
                if r == p || r == q {
                    continue;
                }
                let arp = a[r * n + p];
                let arq = a[r * n + q];
                let new_rp = arp - s * (arq + arp * tau);
                let new_rq = arq + s * (arp - arq * tau);
                a[r * n + p] = new_rp;
                a[p * n + r] = new_rp;
                a[r * n + q] = new_rq;
                a[q * n + r] = new_rq;
            }

            if let Some(v) = v.as_deref_mut() {
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + vrp * tau);
                    v[r * n + q] = vrq + s * (vrp - vrq * tau);
                }
            }
        }
    }
}
