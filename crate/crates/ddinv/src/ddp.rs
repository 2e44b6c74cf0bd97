//! Validated diagonally dominant positive matrices.
//!
//! A [`DdpMatrix`] wraps a [`DenseMatrix`] whose entries are all strictly
//! positive and whose every diagonal entry is at least the sum of the other
//! entries in its row. Validation compares in exact binary64 with no
//! tolerance: inputs are data, not computed quantities, so callers wanting
//! slack must pre-round.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::factor::Cholesky;
use crate::matrix::DenseMatrix;

/// Off-diagonal row sum of row `i`, accumulated in column order.
///
/// Generators build diagonals from this exact sum, so validation must
/// accumulate in the same order to reproduce it bit for bit.
#[inline]
pub(crate) fn offdiag_row_sum(m: &DenseMatrix, i: usize) -> f64 {
    let mut sum = 0.0;
    for (j, &x) in m.row(i).iter().enumerate() {
        if j != i {
            sum += x;
        }
    }
    sum
}

/// A diagonally dominant matrix with positive entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DdpMatrix {
    inner: DenseMatrix,
    symmetric: bool,
}

impl DdpMatrix {
    /// Validates a dense matrix against the dominance conditions.
    ///
    /// Checks, in order: order at least 2, strict positivity of every
    /// entry, exact symmetry when `require_symmetric`, and row dominance
    /// `t[i][i] >= sum of the other entries of row i` under exact binary64
    /// comparison.
    pub fn new(inner: DenseMatrix, require_symmetric: bool) -> Result<Self, Error> {
        let n = inner.n();
        if n < 2 {
            return Err(Error::OrderTooSmall { n });
        }
        for i in 0..n {
            for (j, &x) in inner.row(i).iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteEntry {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if x <= 0.0 {
                    return Err(Error::NonPositiveEntry {
                        row: i + 1,
                        col: j + 1,
                        value: x,
                    });
                }
            }
        }
        if require_symmetric {
            for i in 0..n {
                for j in (i + 1)..n {
                    if inner.get(i, j) != inner.get(j, i) {
                        return Err(Error::NotSymmetric {
                            row: i + 1,
                            col: j + 1,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            let row_sum = offdiag_row_sum(&inner, i);
            let diag = inner.get(i, i);
            if diag < row_sum {
                return Err(Error::DominanceViolated {
                    row: i + 1,
                    row_sum,
                    diag,
                });
            }
        }
        Ok(Self {
            inner,
            symmetric: require_symmetric,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        self.inner.row(i)
    }

    /// Whether symmetry was verified at validation time.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn inner(&self) -> &DenseMatrix {
        &self.inner
    }

    /// Extracts the dominance parameters of the matrix.
    ///
    /// `off_min` scans both triangles, so for a symmetric matrix it equals
    /// the upper-triangle minimum.
    pub fn dominance_params(&self) -> DominanceParams {
        let n = self.n();
        let mut off_min = f64::INFINITY;
        let mut off_max = 0.0f64;
        let mut slack = Vec::with_capacity(n);
        for i in 0..n {
            for (j, &x) in self.row(i).iter().enumerate() {
                if j != i {
                    off_min = off_min.min(x);
                    off_max = off_max.max(x);
                }
            }
            slack.push(self.get(i, i) - offdiag_row_sum(&self.inner, i));
        }
        let max_slack = slack.iter().fold(0.0f64, |acc, &d| acc.max(d));
        DominanceParams {
            off_min,
            cap: off_max.max(max_slack),
            slack,
        }
    }

    /// Numerically probes positive definiteness via a symmetric
    /// factorization; every pivot must clear `n * eps * max_diagonal`.
    pub fn is_positive_definite(&self) -> Result<bool, Error> {
        if !self.symmetric {
            return Err(Error::SymmetryRequired);
        }
        Ok(Cholesky::factor(&self.inner).is_ok())
    }
}

/// The scalars extracted from a [`DdpMatrix`] that drive the error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceParams {
    /// Smallest off-diagonal entry.
    pub off_min: f64,
    /// Common upper bound: the largest of the off-diagonal entries and the
    /// row slacks.
    pub cap: f64,
    /// Row slacks: `slack[i] = t[i][i] - sum of the other entries of row i`.
    pub slack: Vec<f64>,
}

/// The family showing the error decay rate is sharp: off-diagonal entries
/// all equal to `off`, leading diagonals `(n-1) * scale`, and a tight last
/// row (zero slack, diagonal `(n-1) * off`).
///
/// Tight rows take the exact off-diagonal row sum as their diagonal, and
/// the leading diagonals are clamped up to it, so the result passes
/// validation under exact comparison for any admissible input; for
/// representable inputs this coincides with the `(n-1) * scale` /
/// `(n-1) * off` formulas bit for bit.
pub fn worst_case_matrix(n: usize, off: f64, scale: f64) -> Result<DdpMatrix, Error> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "worst-case family needs n >= 3, got {n}"
        )));
    }
    if !(off > 0.0) || !(scale >= off) || !scale.is_finite() {
        return Err(Error::InvalidParams(format!(
            "worst-case family needs 0 < off <= scale, got off={off}, scale={scale}"
        )));
    }
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, off);
            }
        }
    }
    let row_sum = (0..n - 1).fold(0.0f64, |acc, _| acc + off);
    let lead_diag = if scale == off {
        row_sum
    } else {
        ((n - 1) as f64 * scale).max(row_sum)
    };
    for i in 0..n - 1 {
        m.set(i, i, lead_diag);
    }
    m.set(n - 1, n - 1, row_sum);
    DdpMatrix::new(m, true)
}

/// Seeded random symmetric test instance: off-diagonal entries uniform in
/// `[off_lo, off_hi]`, row slacks uniform in `[0, slack_hi]`, and each
/// diagonal built as its exact off-diagonal row sum plus the slack, so
/// dominance holds by construction.
///
/// Bit-identical output for identical arguments.
pub fn random_ddp(
    n: usize,
    off_lo: f64,
    off_hi: f64,
    slack_hi: f64,
    seed: u64,
) -> Result<DdpMatrix, Error> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "random instance needs n >= 2, got {n}"
        )));
    }
    if !(off_lo > 0.0) || !(off_hi >= off_lo) || !off_hi.is_finite() {
        return Err(Error::InvalidParams(format!(
            "random instance needs 0 < off_lo <= off_hi, got off_lo={off_lo}, off_hi={off_hi}"
        )));
    }
    if !(slack_hi >= 0.0) || !slack_hi.is_finite() {
        return Err(Error::InvalidParams(format!(
            "random instance needs slack_hi >= 0, got {slack_hi}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = rng.random_range(off_lo..=off_hi);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    for i in 0..n {
        let slack = rng.random_range(0.0..=slack_hi);
        m.set(i, i, offdiag_row_sum(&m, i) + slack);
    }
    DdpMatrix::new(m, true)
}
