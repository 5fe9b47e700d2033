//! The Ricci-flat system for (λ, ζ) on the orbit space, and the Weyl pair.

use serde::Serialize;

use super::fields::{lambda, rho2, scalar_jet2, weyl_z, ScalarJet2};
use super::metric::{OrbitChart, OrbitPlaneChart};
use super::params::DerivedConstants;
use crate::error::Result;
use crate::dual::Real;
use crate::geometry::laplace::{dot, laplace_beltrami};
use crate::geometry::{killing_forms, ChartId, ChartPoint, MetricChart};
use crate::numerics::Residual;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReducedResiduals {
    /// Δ_h λ − |dλ|²/λ − |dζ|²/λ
    pub lambda_equation: Residual,
    /// Δ_h ζ − 2 h(dλ, dζ)/λ, equivalent to d⋆_h(λ⁻² dζ) = 0.
    pub conservation: Residual,
    /// max |⋆(K ∧ dK) − dζ| over components, relative to max |dζ|.
    pub twist_defect: f64,
    /// ι_K ⋆(K ∧ dK), relative to max |dζ|.
    pub twist_contraction: f64,
    /// ρ is harmonic for the orbit 2-metric.
    pub rho_laplacian: Residual,
    /// max |dz − ⋆₂dρ| relative to max |dρ|.
    pub weyl_conjugate_defect: f64,
}

fn zeta_jet_unchecked(c: &DerivedConstants, x: f64, y: f64) -> ScalarJet2 {
    scalar_jet2(x, y, |a, b| super::fields::zeta(c, a, b))
}

pub fn reduced_residuals(c: &DerivedConstants, x: f64, y: f64) -> Result<ReducedResiduals> {
    c.check_rectangle(x, y)?;
    let orbit = OrbitChart { c: c.clone() }.jet(&ChartPoint::new(ChartId::Orbit, [x, y, 0.0]))?;
    let lam = scalar_jet2(x, y, |a, b| lambda(c, a, b));
    let zet = zeta_jet_unchecked(c, x, y);
    let (gl, hl) = lam.embed::<3>(0);
    let (gz, hz) = zet.embed::<3>(0);
    let l = lam.value;

    let lap_l = laplace_beltrami(&orbit, &gl, &hl)?;
    let dl2 = dot(&orbit, &gl, &gl)? / l;
    let dz2 = dot(&orbit, &gz, &gz)? / l;
    let lambda_equation = Residual { residual: lap_l - dl2 - dz2, scale: lap_l.abs() + dl2.abs() + dz2.abs() };

    let lap_z = laplace_beltrami(&orbit, &gz, &hz)?;
    let cross = 2.0 * dot(&orbit, &gl, &gz)? / l;
    let conservation = Residual { residual: lap_z - cross, scale: lap_z.abs() + cross.abs() };

    let jet4 = super::metric::ChenTeoChart::adapted(c.clone(), x, y).jet(&super::chart_point(x, y))?;
    let kf = killing_forms(&jet4, 0)?;
    let dzeta = [0.0, zet.grad[0], zet.grad[1], 0.0];
    let zscale = zet.grad[0].abs().max(zet.grad[1].abs());
    let twist_defect = (0..4).map(|i| (kf.twist[i] - dzeta[i]).abs()).fold(0.0, f64::max) / zscale;
    let twist_contraction = kf.twist[0].abs() / zscale;

    let plane = OrbitPlaneChart { c: c.clone() }.jet(&ChartPoint::new(ChartId::OrbitPlane, [x, y]))?;
    let rho = scalar_jet2(x, y, |a, b| Real::sqrt(rho2(c, a, b)));
    let lap_rho = laplace_beltrami(&plane, &rho.grad, &rho.hess)?;
    let ginv = plane.inverse()?;
    let mut terms = 0.0;
    for i in 0..2 {
        terms += (ginv[i][i] * rho.hess[i][i]).abs();
    }
    let rho_laplacian = Residual { residual: lap_rho, scale: terms + lap_rho.abs() };

    // ⋆₂dx = √(g_yy/g_xx) dy and ⋆₂dy = −√(g_xx/g_yy) dx with (x, y) oriented.
    let z = scalar_jet2(x, y, |a, b| weyl_z(c, a, b));
    let q = (plane.g[1][1] / plane.g[0][0]).sqrt();
    let star = [-rho.grad[1] / q, rho.grad[0] * q];
    let rscale = rho.grad[0].abs().max(rho.grad[1].abs()).max(z.grad[0].abs()).max(z.grad[1].abs());
    let weyl_conjugate_defect = (0..2).map(|i| (z.grad[i] - star[i]).abs()).fold(0.0, f64::max) / rscale;

    Ok(ReducedResiduals { lambda_equation, conservation, twist_defect, twist_contraction, rho_laplacian, weyl_conjugate_defect })
}
