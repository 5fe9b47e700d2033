use super::metric::chen_teo_components;
use super::params::DerivedConstants;
use super::check_rectangle;
use crate::dual::Real;
use crate::error::{Error, Result};
use crate::geometry::{ChartId, MetricChart};

/// √(κ(1 − ν²))
pub fn asymptotic_scale(c: &DerivedConstants) -> f64 {
    (c.kappa() * (1.0 - c.nu * c.nu)).sqrt()
}

/// (x, y) at asymptotic coordinates (r, θ), generic so it differentiates.
pub fn asymptotic_xy<T: Real>(c: &DerivedConstants, r: T, theta: T) -> (T, T) {
    let x2 = c.x[1];
    let s = x2 * asymptotic_scale(c);
    let ch = (theta * 0.5).cos();
    let sh = (theta * 0.5).sin();
    (ch * ch * -s / r + x2, sh * sh * s / r + x2)
}

pub fn asymptotic_point(c: &DerivedConstants, r: f64, theta: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!("need 0 < θ < π, got {theta}")));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("need r > 0, got {r}")));
    }
    let (x, y) = asymptotic_xy(c, r, theta);
    check_rectangle(c, x, y)?;
    Ok((x, y))
}

/// The metric in (τ, r, θ, φ).
#[derive(Clone, Debug)]
pub struct AsymptoticChart {
    pub c: DerivedConstants,
}

impl MetricChart<4> for AsymptoticChart {
    fn chart_id(&self) -> ChartId {
        ChartId::Asymptotic
    }

    fn check_domain(&self, q: &[f64; 4]) -> Result<()> {
        asymptotic_point(&self.c, q[1], q[2]).map(|_| ())
    }

    fn components<T: Real>(&self, q: [T; 4]) -> [[T; 4]; 4] {
        let (r, th) = (q[1], q[2]);
        let (x, y) = asymptotic_xy(&self.c, r, th);
        let s = self.c.x[1] * asymptotic_scale(&self.c);
        let ch = (th * 0.5).cos();
        let sh = (th * 0.5).sin();
        let r2 = r * r;
        let x_r = ch * ch * s / r2;
        let y_r = -(sh * sh * s) / r2;
        let x_t = th.sin() * s / (r * 2.0);
        let y_t = x_t;
        let m = chen_teo_components(&self.c, x, y);
        let (gxx, gyy) = (m[1][1], m[2][2]);
        let g_rr = gxx * x_r * x_r + gyy * y_r * y_r;
        let g_rt = gxx * x_r * x_t + gyy * y_r * y_t;
        let g_tt = gxx * x_t * x_t + gyy * y_t * y_t;
        let z = T::zero();
        [
            [m[0][0], z, z, m[0][3]],
            [z, g_rr, g_rt, z],
            [z, g_rt, g_tt, z],
            [m[3][0], z, z, m[3][3]],
        ]
    }
}

/// The coefficient of 1/r in g_rr, κ(1 + 2ξ²)²/√(κ(1 − 4ξ⁴)).
pub fn grr_coefficient_closed_form(c: &DerivedConstants) -> f64 {
    let e2 = c.xi() * c.xi();
    c.kappa() * (1.0 + 2.0 * e2).powi(2) / (c.kappa() * (1.0 - 4.0 * e2 * e2)).sqrt()
}

/// The 1/r coefficient of g_rr fitted along the ray θ: r(g_rr − 1) at each
/// radius (in units of √κ), extrapolated in 1/r. Returns the estimate and
/// the extrapolation error indicator.
pub fn grr_coefficient_fit(c: &DerivedConstants, theta: f64, radii: &[f64]) -> Result<(f64, f64)> {
    let chart = AsymptoticChart { c: c.clone() };
    let mut h = Vec::with_capacity(radii.len());
    let mut v = Vec::with_capacity(radii.len());
    for &rc in radii {
        let r = rc * c.sqrt_kappa;
        chart.check_domain(&[0.0, r, theta, 0.0])?;
        let g = chart.components([0.0, r, theta, 0.0]);
        h.push(1.0 / r);
        v.push(r * (g[1][1] - 1.0));
    }
    Ok(crate::numerics::extrapolate_to_zero(&h, &v))
}
