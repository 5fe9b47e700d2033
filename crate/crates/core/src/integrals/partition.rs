use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::sym2_eigenvalues;
use crate::numerics::pairwise_sum;

/// Truncation radius above which the sum is abandoned.
pub const MAX_TRUNCATION: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartitionResult {
    pub tau: Complex64,
    /// Terms with max(|m₂|, |m₃|) ≤ M are summed.
    pub truncation: usize,
    pub value: Complex64,
    /// Certified bound on the omitted terms.
    pub tail_bound: f64,
}

/// Σ_{|m|∞ ≤ M} exp(−iπ m Q mᵀ τ).
pub fn partition_truncated(q: &[[f64; 2]; 2], tau: Complex64, m: usize) -> Complex64 {
    let m = m as i64;
    let mut terms = Vec::with_capacity(((2 * m + 1) * (2 * m + 1)) as usize);
    for a in -m..=m {
        for b in -m..=m {
            let (fa, fb) = (a as f64, b as f64);
            let qf = q[0][0] * fa * fa + (q[0][1] + q[1][0]) * fa * fb + q[1][1] * fb * fb;
            terms.push((Complex64::new(0.0, -PI * qf) * tau).exp());
        }
    }
    pairwise_sum(&terms)
}

/// Bound on Σ_{|m|∞ > M} e^{−c|m|²}: with S = Σ_{|k| ≤ M} e^{−ck²} and
/// T ≥ Σ_{|k| > M} e^{−ck²}, the tail is at most 2ST + T².
pub fn gaussian_tail(c: f64, m: usize) -> f64 {
    let mf = m as f64;
    let t = 2.0 * (-c * (mf + 1.0).powi(2)).exp() / (1.0 - (-c * (2.0 * mf + 3.0)).exp());
    let s = 1.0 + 2.0 * (1..=m).map(|k| (-c * (k * k) as f64).exp()).sum::<f64>();
    2.0 * s * t + t * t
}

/// Z_c(τ) = Σ_{m ∈ ℤ²} exp(−iπ m Q mᵀ τ) to within `tol`.
pub fn partition_classical(q: &[[f64; 2]; 2], tau: Complex64, tol: f64) -> Result<PartitionResult> {
    if !(tau.im > 0.0) {
        return Err(Error::Param(format!("need Im τ > 0, got τ = {tau}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Param(format!("need a positive tolerance, got {tol}")));
    }
    let ev = sym2_eigenvalues(q);
    if (q[0][1] - q[1][0]).abs() > 1e-12 * (q[0][1].abs() + 1.0) || ev.iter().any(|&l| !(l < 0.0)) {
        return Err(Error::DivergentSum(format!("Q must be symmetric negative definite; eigenvalues {ev:?}")));
    }
    // |term| = exp(π Im τ · mQmᵀ) ≤ exp(−c|m|²)
    let c = PI * tau.im * ev.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    let truncation = (0..=MAX_TRUNCATION)
        .find(|&m| gaussian_tail(c, m) < tol)
        .ok_or(Error::ToleranceUnreachable { tol, max_m: MAX_TRUNCATION })?;
    Ok(PartitionResult {
        tau,
        truncation,
        value: partition_truncated(q, tau, truncation),
        tail_bound: gaussian_tail(c, truncation),
    })
}
