//! Cyclic Jacobi diagonalization for small dense symmetric matrices.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Sweeps stop once the off-diagonal Frobenius norm drops below this.
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, with the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl SymmetricEigen {
    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_vector(&self) -> DVector<f64> {
        self.vectors.column(0).into_owned()
    }
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes `matrix`, which must be symmetric within `symmetry_tolerance`
/// (max absolute difference between `A` and `Aᵀ`).
pub fn jacobi_eigen(matrix: &DMatrix<f64>, symmetry_tolerance: f64) -> Result<SymmetricEigen> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::Internal(format!(
            "eigensolver needs a square matrix, got {}x{}",
            n,
            matrix.ncols()
        )));
    }
    let asymmetry = (matrix - matrix.transpose()).amax();
    if asymmetry > symmetry_tolerance {
        return Err(Error::NotSymmetric { asymmetry });
    }

    let mut a = (matrix + matrix.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_THRESHOLD {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                // Rotation angle chosen to annihilate a[p][q]; t is the smaller root.
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= OFF_DIAGONAL_THRESHOLD {
        return Err(Error::Internal(format!(
            "Jacobi did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &v.column(i));
    }
    Ok(SymmetricEigen { values, vectors })
}
