//! Dense factorizations backing the exact-inverse oracle and the
//! positive-definiteness probe: Cholesky for symmetric matrices,
//! partial-pivot LU otherwise.

use crate::error::Error;
use crate::matrix::DenseMatrix;

/// Pivot threshold: pivots at or below `n * eps * scale` are treated as
/// singular, where `scale` is the largest diagonal (Cholesky) or the
/// largest absolute entry (LU).
pub(crate) fn pivot_threshold(n: usize, scale: f64) -> f64 {
    n as f64 * f64::EPSILON * scale
}

/// Lower-triangular Cholesky factor L with A = L Lᵀ.
#[derive(Debug)]
pub(crate) struct Cholesky {
    n: usize,
    // row-major, lower triangle populated
    l: Vec<f64>,
}

impl Cholesky {
    /// Factors a symmetric matrix, reading only the lower triangle.
    ///
    /// Fails with `SingularMatrix` if any pivot (the squared diagonal of L)
    /// is at or below the threshold, which also covers indefinite input.
    pub(crate) fn factor(a: &DenseMatrix) -> Result<Self, Error> {
        let n = a.n();
        let max_diag = (0..n).fold(0.0f64, |acc, i| acc.max(a.get(i, i).abs()));
        let tol = pivot_threshold(n, max_diag);
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = a.get(i, j);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= tol {
                        return Err(Error::SingularMatrix { pivot_row: i + 1 });
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Ok(Self { n, l })
    }

    /// Solves A x = b in place.
    pub(crate) fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        // forward: L y = b
        for i in 0..n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.l[i * n + k] * b[k];
            }
            b[i] = sum / self.l[i * n + i];
        }
        // backward: Lᵀ x = y
        for i in (0..n).rev() {
            let mut sum = b[i];
            for k in (i + 1)..n {
                sum -= self.l[k * n + i] * b[k];
            }
            b[i] = sum / self.l[i * n + i];
        }
    }
}

/// LU factorization with partial pivoting, P A = L U.
pub(crate) struct PartialPivLu {
    n: usize,
    // L (unit lower, below diagonal) and U (upper) packed together
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl PartialPivLu {
    pub(crate) fn factor(a: &DenseMatrix) -> Result<Self, Error> {
        let n = a.n();
        let tol = pivot_threshold(n, a.max_abs());
        let mut lu = a.entries().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_val = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let v = lu[i * n + k].abs();
                if v > pivot_val {
                    pivot_val = v;
                    pivot_row = i;
                }
            }
            if pivot_val <= tol {
                return Err(Error::SingularMatrix { pivot_row: k + 1 });
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub(crate) fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        let permuted: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        b.copy_from_slice(&permuted);
        // forward: L y = P b (unit diagonal)
        for i in 0..n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.lu[i * n + k] * b[k];
            }
            b[i] = sum;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let mut sum = b[i];
            for k in (i + 1)..n {
                sum -= self.lu[i * n + k] * b[k];
            }
            b[i] = sum / self.lu[i * n + i];
        }
    }
}

/// Either factorization behind a single solve interface.
pub(crate) enum Factorization {
    Cholesky(Cholesky),
    Lu(PartialPivLu),
}

impl Factorization {
    pub(crate) fn solve_in_place(&self, b: &mut [f64]) {
        match self {
            Factorization::Cholesky(c) => c.solve_in_place(b),
            Factorization::Lu(lu) => lu.solve_in_place(b),
        }
    }

    /// Solves A X = B column by column.
    pub(crate) fn solve_matrix(&self, b: &DenseMatrix) -> DenseMatrix {
        let n = b.n();
        let mut out = DenseMatrix::zeros(n);
        let mut col = vec![0.0; n];
        for j in 0..n {
            for i in 0..n {
                col[i] = b.get(i, j);
            }
            self.solve_in_place(&mut col);
            for i in 0..n {
                out.set(i, j, col[i]);
            }
        }
        out
    }
}
