//! Closed-form analysis of the approximation-error bound.
//!
//! All functions here are pure scalar maps of `(n, off_min, cap)`, where
//! `off_min` is the smallest off-diagonal entry and `cap` the common upper
//! bound on off-diagonal entries and row slacks (see
//! [`DominanceParams`](crate::DominanceParams)). The bound constant is
//! evaluated term by term, left to right, each fraction fully formed before
//! subtraction, so results are bit-reproducible across runs.

use crate::error::Error;

/// Result of evaluating the error bound for given parameters.
///
/// Inapplicability (order below 3, or a non-positive bound constant) is a
/// reported state, not an error; `c_value` is always populated.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundOutcome {
    pub n: usize,
    pub off_min: f64,
    pub cap: f64,
    /// The bound constant; the bound holds only when this is positive.
    pub c_value: f64,
    /// `cap / (off_min^2 (n-1)^2 c_value)` when applicable, `None` otherwise.
    pub bound: Option<f64>,
}

impl BoundOutcome {
    pub fn applicable(&self) -> bool {
        self.bound.is_some()
    }
}

fn check_pair(off_min: f64, cap: f64) -> Result<(), Error> {
    if !(off_min > 0.0) || !(cap >= off_min) || !cap.is_finite() {
        return Err(Error::InvalidParams(format!(
            "need 0 < off_min <= cap, got off_min={off_min}, cap={cap}"
        )));
    }
    Ok(())
}

/// The bound constant as a plain expression, defined for n >= 2.
fn c_expression(n: usize, off_min: f64, cap: f64) -> f64 {
    let nf = n as f64;
    let t1 = 2.0 * (nf - 2.0) * off_min / (nf * cap + (nf - 2.0) * off_min);
    let t2 = (nf - 2.0) * cap * off_min
        / (((nf - 2.0) * off_min + cap) * ((nf - 2.0) * off_min + 2.0 * cap));
    let t3 = cap / (off_min * (nf - 1.0));
    t1 - t2 - t3
}

/// The constant gating the error bound; the bound applies when it is
/// positive.
pub fn bound_constant(n: usize, off_min: f64, cap: f64) -> Result<f64, Error> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "bound constant needs n >= 3, got {n}"
        )));
    }
    check_pair(off_min, cap)?;
    Ok(c_expression(n, off_min, cap))
}

/// Evaluates the explicit error bound `cap / (off_min^2 (n-1)^2 C)`.
///
/// The constant is reported for any n >= 2; the bound itself is populated
/// only when n >= 3 and the constant is positive.
pub fn error_bound(n: usize, off_min: f64, cap: f64) -> Result<BoundOutcome, Error> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "error bound needs n >= 2, got {n}"
        )));
    }
    check_pair(off_min, cap)?;
    let c_value = c_expression(n, off_min, cap);
    let bound = if n >= 3 && c_value > 0.0 {
        let nf = n as f64;
        Some(cap / (off_min * off_min * (nf - 1.0) * (nf - 1.0) * c_value))
    } else {
        None
    };
    Ok(BoundOutcome {
        n,
        off_min,
        cap,
        c_value,
        bound,
    })
}

fn check_f_g_params(lambda: f64, n: usize, off_min: f64, cap: f64) -> Result<(), Error> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("need n >= 3, got {n}")));
    }
    check_pair(off_min, cap)?;
    let hi = (n - 1) as f64;
    if !(1.0..=hi).contains(&lambda) {
        return Err(Error::DomainError {
            value: lambda,
            lo: 1.0,
            hi,
        });
    }
    Ok(())
}

/// First piece of the contraction-coefficient bound, as a function of the
/// continuous split size `lambda` in `[1, n-1]`.
pub fn f_lambda(lambda: f64, n: usize, off_min: f64, cap: f64) -> Result<f64, Error> {
    check_f_g_params(lambda, n, off_min, cap)?;
    let nf = n as f64;
    let t1 = lambda * cap / (lambda * cap + (nf - 1.0 - lambda) * off_min);
    let t2 = (lambda - 1.0) * off_min / ((lambda - 1.0) * off_min + (nf - lambda) * cap);
    Ok(t1 - t2)
}

/// Second piece of the contraction-coefficient bound; nonnegative and
/// nondecreasing on `[1, n-1]`.
pub fn g_lambda(lambda: f64, n: usize, off_min: f64, cap: f64) -> Result<f64, Error> {
    check_f_g_params(lambda, n, off_min, cap)?;
    let nf = n as f64;
    let base = (lambda - 1.0) * off_min;
    let t1 = base / (base + (nf - lambda) * cap);
    let t2 = base / (base + (nf - lambda) * cap + cap);
    Ok(t1 - t2)
}

/// Maximum of [`f_lambda`] over `[1, n-1]`, in closed form.
///
/// The maximum sits at the midpoint `n/2`. The equal-parameter case uses an
/// exact equality test; near-equal parameters fall through to the general
/// formula, which is continuous there and agrees at equality.
pub fn f_max_closed_form(n: usize, off_min: f64, cap: f64) -> Result<f64, Error> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("need n >= 3, got {n}")));
    }
    check_pair(off_min, cap)?;
    if cap == off_min {
        return Ok(1.0 / (n as f64 - 1.0));
    }
    let nf = n as f64;
    Ok((nf * cap - (nf - 2.0) * off_min) / (nf * cap + (nf - 2.0) * off_min))
}

/// Maximum of [`g_lambda`] over `[1, n-1]`, attained at the right endpoint,
/// in closed form.
pub fn g_max_closed_form(n: usize, off_min: f64, cap: f64) -> Result<f64, Error> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("need n >= 3, got {n}")));
    }
    check_pair(off_min, cap)?;
    let nf = n as f64;
    Ok((nf - 2.0) * cap * off_min
        / (((nf - 2.0) * off_min + cap) * ((nf - 2.0) * off_min + 2.0 * cap)))
}

/// Large-n limit of the bound constant: `2 off_min / (cap + off_min)`.
pub fn asymptotic_constant(off_min: f64, cap: f64) -> Result<f64, Error> {
    check_pair(off_min, cap)?;
    Ok(2.0 * off_min / (cap + off_min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::ulps_eq;

    /// Independent route for equal parameters: the constant collapses to
    /// (n^2 - 4n + 2) / (n (n - 1)).
    fn c_equal_params(n: usize) -> f64 {
        let nf = n as f64;
        (nf * nf - 4.0 * nf + 2.0) / (nf * (nf - 1.0))
    }

    #[test]
    fn constant_at_equal_params() {
        let c4 = bound_constant(4, 1.0, 1.0).unwrap();
        assert!((c4 - 1.0 / 6.0).abs() < 1e-15);
        assert!(ulps_eq!(c4, c_equal_params(4), max_ulps = 4));

        let c3 = bound_constant(3, 1.0, 1.0).unwrap();
        assert!((c3 + 1.0 / 6.0).abs() < 1e-15);
        assert!(ulps_eq!(c3, c_equal_params(3), max_ulps = 4));
    }

    #[test]
    fn constant_term_by_term() {
        // n=10, off_min=1, cap=2: terms are 16/28, 16/120, 2/9
        let c = bound_constant(10, 1.0, 2.0).unwrap();
        let want = 16.0 / 28.0 - 16.0 / 120.0 - 2.0 / 9.0;
        assert!(ulps_eq!(c, want, max_ulps = 2));
        assert!((c - 0.215_873_015_873_015_87).abs() < 1e-15);
    }

    #[test]
    fn constant_rejects_bad_params() {
        assert!(bound_constant(2, 1.0, 1.0).is_err());
        assert!(bound_constant(5, 0.0, 1.0).is_err());
        assert!(bound_constant(5, 2.0, 1.0).is_err());
    }

    #[test]
    fn bound_composition() {
        let b = error_bound(4, 1.0, 1.0).unwrap();
        assert!(b.applicable());
        assert!((b.bound.unwrap() - 2.0 / 3.0).abs() < 1e-15);

        let b = error_bound(3, 1.0, 1.0).unwrap();
        assert!(!b.applicable());
        assert!((b.c_value + 1.0 / 6.0).abs() < 1e-15);

        let b = error_bound(10, 1.0, 2.0).unwrap();
        let want = 2.0 / (81.0 * (16.0 / 28.0 - 16.0 / 120.0 - 2.0 / 9.0));
        assert!(ulps_eq!(b.bound.unwrap(), want, max_ulps = 4));
        assert!((b.bound.unwrap() - 0.114_379_084_967_320_1).abs() < 1e-14);
    }

    #[test]
    fn bound_reports_constant_below_order_three() {
        let b = error_bound(2, 1.0, 3.0).unwrap();
        assert!(!b.applicable());
        assert!(b.c_value.is_finite());
        assert!(error_bound(1, 1.0, 1.0).is_err());
    }

    #[test]
    fn f_at_equal_params_is_flat() {
        for lambda in [1.0, 1.7, 2.0, 3.25, 4.0] {
            let v = f_lambda(lambda, 5, 1.0, 1.0).unwrap();
            assert!((v - 0.25).abs() < 1e-15, "f({lambda}) = {v}");
        }
    }

    #[test]
    fn f_hand_values() {
        // both fractions over a common denominator of 14
        let v = f_lambda(5.0, 10, 1.0, 2.0).unwrap();
        assert!(ulps_eq!(v, 10.0 / 14.0 - 4.0 / 14.0, max_ulps = 2));

        // second term vanishes at the left endpoint
        let v = f_lambda(1.0, 7, 1.0, 3.0).unwrap();
        assert!(ulps_eq!(v, 3.0 / (3.0 + 5.0), max_ulps = 2));
    }

    #[test]
    fn f_rejects_out_of_domain() {
        assert!(matches!(
            f_lambda(0.5, 10, 1.0, 2.0),
            Err(Error::DomainError { .. })
        ));
        assert!(matches!(
            f_lambda(9.5, 10, 1.0, 2.0),
            Err(Error::DomainError { .. })
        ));
    }

    #[test]
    fn g_hand_values() {
        assert_eq!(g_lambda(1.0, 6, 1.0, 2.0).unwrap(), 0.0);
        let v = g_lambda(9.0, 10, 1.0, 2.0).unwrap();
        assert!(ulps_eq!(v, 8.0 / 10.0 - 8.0 / 12.0, max_ulps = 2));
        let v = g_lambda(5.0, 10, 1.0, 2.0).unwrap();
        assert!(ulps_eq!(v, 4.0 / 14.0 - 4.0 / 16.0, max_ulps = 2));
    }

    #[test]
    fn f_max_values() {
        let v = f_max_closed_form(10, 1.0, 2.0).unwrap();
        assert!(ulps_eq!(v, 12.0 / 28.0, max_ulps = 2));
        assert_eq!(f_max_closed_form(5, 1.0, 1.0).unwrap(), 0.25);
        // matches the direct evaluation at the midpoint
        let mid = f_lambda(5.0, 10, 1.0, 2.0).unwrap();
        assert!(ulps_eq!(v, mid, max_ulps = 4));
    }

    #[test]
    fn g_max_values() {
        let v = g_max_closed_form(10, 1.0, 2.0).unwrap();
        assert!(ulps_eq!(v, 16.0 / 120.0, max_ulps = 2));
        let v = g_max_closed_form(3, 1.0, 1.0).unwrap();
        assert!(ulps_eq!(v, 1.0 / 6.0, max_ulps = 2));
        // agrees with the direct evaluation at the right endpoint
        let v = g_max_closed_form(17, 0.7, 2.9).unwrap();
        let end = g_lambda(16.0, 17, 0.7, 2.9).unwrap();
        assert!(ulps_eq!(v, end, max_ulps = 4));
    }

    #[test]
    fn asymptotic_values() {
        assert_eq!(asymptotic_constant(1.0, 1.0).unwrap(), 1.0);
        assert!((asymptotic_constant(1.0, 2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let c = bound_constant(10_000, 1.0, 2.0).unwrap();
        assert!((c - 2.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn combined_maxima_below_one_when_constant_positive() {
        for n in [3usize, 4, 5, 8, 20, 100] {
            for &(m, cap) in &[(1.0, 1.0), (1.0, 1.5), (0.5, 2.0), (1.0, 5.0)] {
                if bound_constant(n, m, cap).unwrap() > 0.0 {
                    let total =
                        f_max_closed_form(n, m, cap).unwrap() + g_max_closed_form(n, m, cap).unwrap();
                    assert!(total < 1.0, "n={n} m={m} cap={cap}: {total}");
                }
            }
        }
    }
}
