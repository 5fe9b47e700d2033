//! Reference metrics used to validate the engine.

use super::{ChartId, MetricChart, GUARD_BAND};
use crate::dual::Real;
use crate::error::{Error, Result};

/// dτ² + dr² + r²(dθ² + sin²θ dφ²)
#[derive(Clone, Copy, Debug, Default)]
pub struct FlatModel;

impl MetricChart<4> for FlatModel {
    fn chart_id(&self) -> ChartId {
        ChartId::FlatModel
    }

    fn check_domain(&self, q: &[f64; 4]) -> Result<()> {
        if q[1] <= GUARD_BAND || q[2] <= GUARD_BAND || q[2] >= std::f64::consts::PI - GUARD_BAND {
            return Err(Error::Domain(format!("flat model needs r > 0, 0 < θ < π, got {q:?}")));
        }
        Ok(())
    }

    fn components<T: Real>(&self, q: [T; 4]) -> [[T; 4]; 4] {
        let (r, th) = (q[1], q[2]);
        let z = T::zero();
        let s = th.sin();
        [
            [T::one(), z, z, z],
            [z, T::one(), z, z],
            [z, z, r * r, z],
            [z, z, z, r * r * s * s],
        ]
    }
}

/// Euclidean Kerr in (τ, r, θ, φ).
#[derive(Clone, Copy, Debug)]
pub struct EuclideanKerr {
    pub m: f64,
    pub a: f64,
}

impl EuclideanKerr {
    pub fn new(m: f64, a: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Param(format!("Kerr mass must satisfy m > 0, got {m}")));
        }
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::Param(format!("Kerr rotation must satisfy a ≥ 0, got {a}")));
        }
        Ok(EuclideanKerr { m, a })
    }

    pub fn r_plus(&self) -> f64 {
        self.m + (self.m * self.m + self.a * self.a).sqrt()
    }
}

impl MetricChart<4> for EuclideanKerr {
    fn chart_id(&self) -> ChartId {
        ChartId::EuclideanKerr
    }

    fn check_domain(&self, q: &[f64; 4]) -> Result<()> {
        if q[1] <= self.r_plus() + GUARD_BAND {
            return Err(Error::Domain(format!("need r > r₊ = {}, got {}", self.r_plus(), q[1])));
        }
        if q[2] <= GUARD_BAND || q[2] >= std::f64::consts::PI - GUARD_BAND {
            return Err(Error::Domain(format!("need 0 < θ < π, got {}", q[2])));
        }
        Ok(())
    }

    fn components<T: Real>(&self, q: [T; 4]) -> [[T; 4]; 4] {
        let (r, th) = (q[1], q[2]);
        let a = self.a;
        let f = r * r - r * (2.0 * self.m) - a * a;
        let c = th.cos();
        let s2 = th.sin() * th.sin();
        let rho2 = r * r - c * c * (a * a);
        // (f/ρ²)(dτ + a s² dφ)² + (s²/ρ²)((r² − a²)dφ − a dτ)²
        let u = f / rho2;
        let w = s2 / rho2;
        let p = r * r - a * a;
        let g_tt = u + w * (a * a);
        let g_tp = u * s2 * a - w * p * a;
        let g_pp = u * s2 * s2 * (a * a) + w * p * p;
        let z = T::zero();
        [
            [g_tt, z, z, g_tp],
            [z, rho2 / f, z, z],
            [z, z, rho2, z],
            [g_tp, z, z, g_pp],
        ]
    }
}
