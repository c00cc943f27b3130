use faer::Mat;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::matrix::SymMatrix;

/// Default relative tolerance for positivity and trace checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Eigenvalues in ascending order, from a dense self-adjoint
/// decomposition (faer: tridiagonalisation followed by divide and conquer /
/// implicit QR on the tridiagonal).
pub fn eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let n = m.order();
    let dense = Mat::<f64>::from_fn(n, n, |r, c| m.get(r, c));
    let mut vals = dense
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::Numeric(format!("eigensolve did not converge: {e:?}")))?;
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("eigensolver produced non-finite values".into()));
    }
    // the eigenvalue sum must reproduce the trace; anything else means the
    // iteration did not converge
    let sum: f64 = vals.iter().sum();
    let scale = m.max_abs().max(f64::MIN_POSITIVE) * n as f64;
    if (sum - m.trace()).abs() > 1e-8 * scale {
        return Err(Error::Numeric(format!(
            "eigensolve did not converge (eigenvalue sum {sum}, trace {})",
            m.trace()
        )));
    }
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

pub fn min_eigenvalue(m: &SymMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?[0])
}

/// `‖M‖₁`, the sum of absolute eigenvalues.
pub fn trace_norm(m: &SymMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|v| v.abs()).sum())
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &SymMatrix, sigma: &SymMatrix) -> Result<f64> {
    Ok(0.5 * trace_norm(&rho.sub(sigma)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityReport {
    pub order: usize,
    pub trace: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    /// Smallest eigenvalue still counted as non-negative:
    /// `-tol · order · max|entry|`.
    pub psd_threshold: f64,
    pub pass: bool,
}

/// Checks `tr M = 1` and `M ≥ 0` up to `tol`.
pub fn validate_density(m: &SymMatrix, tol: f64) -> Result<DensityReport> {
    let min = min_eigenvalue(m)?;
    let trace = m.trace();
    let trace_deviation = (trace - 1.0).abs();
    let psd_threshold = psd_threshold(m, tol);
    Ok(DensityReport {
        order: m.order(),
        trace,
        trace_deviation,
        min_eigenvalue: min,
        psd_threshold,
        pass: trace_deviation <= tol && min >= psd_threshold,
    })
}

pub fn psd_threshold(m: &SymMatrix, tol: f64) -> f64 {
    -tol * m.order() as f64 * m.max_abs()
}
