//! The diagonal approximate inverse, its residual matrices, and reports
//! comparing it against an exact-inverse oracle.
//!
//! The point of the diagonal approximation is that it costs O(n) to build
//! while a true inverse costs O(n^3); the oracle here exists only to verify
//! the approximation error and never feeds back into the approximation.

use crate::bounds::{error_bound, BoundOutcome};
use crate::ddp::DdpMatrix;
use crate::error::Error;
use crate::factor::{Cholesky, Factorization, PartialPivLu};
use crate::matrix::DenseMatrix;

/// The diagonal approximate inverse, stored as the reciprocal diagonal:
/// `recip_diag[i] = 1 / t[i][i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagApprox {
    recip_diag: Vec<f64>,
}

impl DiagApprox {
    pub fn from_matrix(t: &DdpMatrix) -> Self {
        Self {
            recip_diag: (0..t.n()).map(|i| 1.0 / t.get(i, i)).collect(),
        }
    }

    pub fn recip_diag(&self) -> &[f64] {
        &self.recip_diag
    }

    /// Applies the approximation to a vector: entrywise multiply by the
    /// reciprocal diagonal. This is the preconditioner path used by the
    /// solvers.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>, Error> {
        if v.len() != self.recip_diag.len() {
            return Err(Error::DimensionMismatch {
                expected: self.recip_diag.len(),
                got: v.len(),
            });
        }
        Ok(self
            .recip_diag
            .iter()
            .zip(v)
            .map(|(d, x)| d * x)
            .collect())
    }

    /// Expands to a dense diagonal matrix.
    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.recip_diag.len();
        let mut m = DenseMatrix::zeros(n);
        for (i, &d) in self.recip_diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }
}

/// The residual matrices of the approximation, from their closed-form
/// entries: `v = I - T S` has `v[i][j] = -t[i][j] / t[j][j]` off the
/// diagonal, and `w = S v` has `w[i][j] = -t[i][j] / (t[i][i] t[j][j])`;
/// both diagonals are exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualPair {
    pub v: DenseMatrix,
    pub w: DenseMatrix,
}

pub fn residuals(t: &DdpMatrix) -> ResidualPair {
    let n = t.n();
    let mut v = DenseMatrix::zeros(n);
    let mut w = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                v.set(i, j, -(t.get(i, j) / t.get(j, j)));
                w.set(i, j, -(t.get(i, j) / (t.get(i, i) * t.get(j, j))));
            }
        }
    }
    ResidualPair { v, w }
}

fn factorize(t: &DdpMatrix) -> Result<Factorization, Error> {
    if t.is_symmetric() {
        Ok(Factorization::Cholesky(Cholesky::factor(t.inner())?))
    } else {
        Ok(Factorization::Lu(PartialPivLu::factor(t.inner())?))
    }
}

/// Brute-force inverse oracle: factorization-based dense inversion with one
/// step of iterative refinement.
///
/// O(n^3); test and report infrastructure only, never a dependency of the
/// diagonal approximation.
pub fn exact_inverse(t: &DdpMatrix) -> Result<DenseMatrix, Error> {
    let fact = factorize(t)?;
    let eye = DenseMatrix::identity(t.n());
    let x = fact.solve_matrix(&eye);
    // one refinement step: x += T^{-1} (I - T x)
    let residual = eye.sub(&t.inner().matmul(&x)?)?;
    x.add(&fact.solve_matrix(&residual))
}

/// Comparison of the approximation against the exact inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// The deviation `T^{-1} - S`.
    pub deviation: DenseMatrix,
    /// Entrywise maximum norm of the deviation.
    pub max_norm: f64,
    /// The bound evaluated at the matrix's realized dominance parameters.
    pub bound: BoundOutcome,
    /// `max_norm / bound` when the bound is applicable.
    pub ratio: Option<f64>,
    /// Whether every off-diagonal entry of the computed inverse is
    /// nonpositive (within oracle rounding). Diagnostic only.
    pub inverse_offdiag_nonpositive: bool,
}

/// Measures `max |T^{-1} - S|` against the explicit bound.
///
/// Requires a matrix validated as symmetric: the bound's derivation mixes
/// row and column sums, which coincide only then.
pub fn error_report(t: &DdpMatrix) -> Result<ErrorReport, Error> {
    if !t.is_symmetric() {
        return Err(Error::SymmetryRequired);
    }
    let n = t.n();
    let inverse = exact_inverse(t)?;
    let approx = DiagApprox::from_matrix(t);
    let deviation = inverse.sub(&approx.to_dense())?;
    let max_norm = deviation.max_abs();

    let params = t.dominance_params();
    let bound = error_bound(n, params.off_min, params.cap)?;
    let ratio = bound.bound.map(|b| max_norm / b);

    let offdiag_tol = inverse.max_abs() * 1e-14;
    let mut nonpositive = true;
    'scan: for i in 0..n {
        for j in 0..n {
            if i != j && inverse.get(i, j) > offdiag_tol {
                nonpositive = false;
                break 'scan;
            }
        }
    }

    Ok(ErrorReport {
        deviation,
        max_norm,
        bound,
        ratio,
        inverse_offdiag_nonpositive: nonpositive,
    })
}

/// Residual of the two-term recursion the deviation satisfies:
/// `max |F - (F V + W)|` with `F` from the oracle and `V`, `W` in closed
/// form. Algebraically zero; anything beyond accumulated rounding flags a
/// defect in one of the three computations.
pub fn recursion_identity_residual(t: &DdpMatrix) -> Result<f64, Error> {
    let inverse = exact_inverse(t)?;
    let approx = DiagApprox::from_matrix(t);
    let f = inverse.sub(&approx.to_dense())?;
    let ResidualPair { v, w } = residuals(t);
    let reconstructed = f.matmul(&v)?.add(&w)?;
    Ok(f.sub(&reconstructed)?.max_abs())
}

/// Residual of the row identity `sum_k F[i][k] t[k][i] = 0`, maximized
/// over rows. Algebraically zero for any nonsingular matrix.
pub fn hold_identity_residual(t: &DdpMatrix) -> Result<f64, Error> {
    let n = t.n();
    let inverse = exact_inverse(t)?;
    let approx = DiagApprox::from_matrix(t);
    let f = inverse.sub(&approx.to_dense())?;
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut sum = 0.0;
        for k in 0..n {
            sum += f.get(i, k) * t.get(k, i);
        }
        worst = worst.max(sum.abs());
    }
    Ok(worst)
}

/// Error scaling report for the worst-case family.
#[derive(Debug, Clone, PartialEq)]
pub struct WorstCaseReport {
    /// `max |T^{-1} - S|` from the oracle.
    pub error: f64,
    /// `error * (n-1)^2 * off_min`; approaches a constant as n grows,
    /// which is what makes the decay rate sharp.
    pub scaled_error: f64,
    /// Largest absolute difference between the oracle inverse and a
    /// rank-one-update closed-form candidate for this family's inverse.
    /// Diagnostic only: the candidate does not reproduce direct inversion
    /// (it is off by a wide margin already at n = 3), so nothing asserts
    /// against it.
    pub closed_form_gap: f64,
}

/// Closed-form candidate entry for the worst-case family's inverse. The
/// leading block and the last row are given directly; the last column is
/// mirrored from the last row by symmetry.
fn closed_form_candidate(n: usize, off: f64, scale: f64, i: usize, j: usize) -> f64 {
    let nf = n as f64;
    let lead = (nf - 1.0) * scale - off;
    if i == n - 1 || j == n - 1 {
        let diag = if i == j { 1.0 / ((nf - 2.0) * off) } else { 0.0 };
        diag - 1.0 / ((nf - 2.0) * lead)
    } else {
        let diag = if i == j { 1.0 / lead } else { 0.0 };
        diag - off / (lead * lead)
    }
}

/// Builds the worst-case instance, measures the approximation error, and
/// scales it by `(n-1)^2 * off_min`.
pub fn worst_case_report(n: usize, off: f64, scale: f64) -> Result<WorstCaseReport, Error> {
    let t = crate::ddp::worst_case_matrix(n, off, scale)?;
    let inverse = exact_inverse(&t)?;
    let approx = DiagApprox::from_matrix(&t);
    let error = inverse.sub(&approx.to_dense())?.max_abs();
    let off_min = t.dominance_params().off_min;
    let nf = n as f64;
    let scaled_error = error * (nf - 1.0) * (nf - 1.0) * off_min;

    let mut gap = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let candidate = closed_form_candidate(n, off, scale, i, j);
            gap = gap.max((inverse.get(i, j) - candidate).abs());
        }
    }

    Ok(WorstCaseReport {
        error,
        scaled_error,
        closed_form_gap: gap,
    })
}
