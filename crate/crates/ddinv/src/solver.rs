//! Iterative solvers demonstrating the diagonal approximation as a
//! preconditioner: a stationary Jacobi-type iteration and preconditioned
//! conjugate gradients.

use crate::approx::DiagApprox;
use crate::ddp::DdpMatrix;
use crate::error::Error;

/// Which solver produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Jacobi,
    Cg,
    PcgDiag,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Jacobi => write!(f, "jacobi"),
            Method::Cg => write!(f, "cg"),
            Method::PcgDiag => write!(f, "pcg-diag"),
        }
    }
}

/// Outcome of an iterative solve. Non-convergence within the iteration
/// budget is a reported state, not an error.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// 2-norms of `b - T x`, recomputed from scratch each iteration;
    /// entry 0 is the initial residual, so the length is iterations + 1.
    pub residual_history: Vec<f64>,
    pub method: Method,
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn true_residual(t: &DdpMatrix, b: &[f64], x: &[f64]) -> Vec<f64> {
    let tx = t.inner().mul_vec(x).expect("dimensions checked");
    b.iter().zip(&tx).map(|(bi, txi)| bi - txi).collect()
}

fn check_solve_args(t: &DdpMatrix, b: &[f64], tol: f64, max_iter: usize) -> Result<(), Error> {
    if b.len() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            got: b.len(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("tol must be > 0, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParams("max_iter must be >= 1".to_string()));
    }
    Ok(())
}

/// Stationary iteration `x <- x + S (b - T x)` from `x0 = 0`, where `S` is
/// the diagonal approximate inverse. Stops when the relative residual
/// `|b - T x| / |b|` drops to `tol`, or after `max_iter` sweeps.
pub fn jacobi_solve(
    t: &DdpMatrix,
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport, Error> {
    check_solve_args(t, b, tol, max_iter)?;
    let approx = DiagApprox::from_matrix(t);
    let mut x = vec![0.0; t.n()];
    let mut residual = b.to_vec();
    let initial = norm2(&residual);
    let mut history = vec![initial];
    if initial == 0.0 {
        return Ok(SolveReport {
            solution: x,
            iterations: 0,
            converged: true,
            residual_history: history,
            method: Method::Jacobi,
        });
    }
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..max_iter {
        let correction = approx.apply(&residual)?;
        for (xi, ci) in x.iter_mut().zip(&correction) {
            *xi += ci;
        }
        residual = true_residual(t, b, &x);
        let res = norm2(&residual);
        history.push(res);
        iterations += 1;
        if res / initial <= tol {
            converged = true;
            break;
        }
    }
    Ok(SolveReport {
        solution: x,
        iterations,
        converged,
        residual_history: history,
        method: Method::Jacobi,
    })
}

/// Conjugate gradients with an optional diagonal preconditioner.
///
/// With `use_diag_precond`, the preconditioner application is exactly the
/// entrywise product with the reciprocal diagonal of `t`. Requires a
/// symmetric, numerically positive definite matrix.
pub fn pcg_solve(
    t: &DdpMatrix,
    b: &[f64],
    use_diag_precond: bool,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport, Error> {
    if !t.is_symmetric() {
        return Err(Error::SymmetryRequired);
    }
    check_solve_args(t, b, tol, max_iter)?;
    if !t.is_positive_definite()? {
        return Err(Error::NotPositiveDefinite);
    }
    let method = if use_diag_precond {
        Method::PcgDiag
    } else {
        Method::Cg
    };
    let approx = DiagApprox::from_matrix(t);
    let precond = |r: &[f64]| -> Vec<f64> {
        if use_diag_precond {
            approx.apply(r).expect("dimensions checked")
        } else {
            r.to_vec()
        }
    };

    let n = t.n();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let initial = norm2(&r);
    let mut history = vec![initial];
    if initial == 0.0 {
        return Ok(SolveReport {
            solution: x,
            iterations: 0,
            converged: true,
            residual_history: history,
            method,
        });
    }
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..max_iter {
        let ap = t.inner().mul_vec(&p)?;
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if pap <= 0.0 {
            // cannot happen for a positive definite system short of
            // catastrophic rounding; stop rather than divide by it
            break;
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let res = norm2(&true_residual(t, b, &x));
        history.push(res);
        iterations += 1;
        if res / initial <= tol {
            converged = true;
            break;
        }
        z = precond(&r);
        let rz_next: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_next / rz;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        rz = rz_next;
    }
    Ok(SolveReport {
        solution: x,
        iterations,
        converged,
        residual_history: history,
        method,
    })
}
