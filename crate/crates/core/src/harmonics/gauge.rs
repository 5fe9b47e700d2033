use serde::Serialize;

use super::potentials::{alpha, PotentialKind};
use crate::chen_teo::fields::structure;
use crate::chen_teo::metric::chen_teo_components;
use crate::chen_teo::DerivedConstants;
use crate::dual::{Dual, Real};
use crate::error::{Error, Result};
use crate::geometry::linalg::{inverse, raise1};
use crate::geometry::{ChartId, ChartPoint, TwoFormValue};

/// A 1-form in (τ, x, y, φ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaugePotentialValue {
    pub components: [f64; 4],
}

/// Denominator of the auxiliary function Q; the potentials are singular
/// where it vanishes.
fn q_denominator<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let [a0, a1, _, a3, a4] = c.a;
    let xy = x * y;
    (x + y) * a0 - xy * (xy * ((x + y) * a4 + a3) - a1)
}

fn q_function<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let [_, a1, _, a3, _] = c.a;
    let nu = c.nu;
    let s = structure(c, x, y);
    x * (x * nu + y) * ((x * y * -a3) + a1) * s.big_y / (y * (1.0 - nu) * s.xmy * q_denominator(c, x, y))
}

fn phi_coefficient<T: Real>(c: &DerivedConstants, kind: PotentialKind, x: T, y: T) -> T {
    let [_, a1, _, a3, _] = c.a;
    let nu = c.nu;
    let q = q_function(c, x, y);
    let plus = q + (y * y * a3 - a1 * nu) / (y * (1.0 - nu));
    match kind {
        PotentialKind::AlphaPlus => plus,
        PotentialKind::AlphaMinus => -plus,
        PotentialKind::Alpha2 => -(q / ((x * y * -a3) + a1) - y.recip() * (nu / (1.0 - nu))),
    }
}

/// A = −α θ + P dφ with θ = dτ + Ω.
pub fn gauge_components<T: Real>(c: &DerivedConstants, kind: PotentialKind, x: T, y: T) -> [T; 4] {
    let g = chen_teo_components(c, x, y);
    let a = alpha(c, kind, x, y);
    let mut out: [T; 4] = std::array::from_fn(|m| -(a * g[0][m] / g[0][0]));
    out[3] += phi_coefficient(c, kind, x, y);
    out
}

fn checked_xy(c: &DerivedConstants, pt: &ChartPoint<4>) -> Result<(f64, f64)> {
    if pt.chart != ChartId::ChenTeo {
        return Err(Error::Domain(format!("expected a ChenTeo chart point, got {:?}", pt.chart)));
    }
    let (x, y) = (pt.coords[1], pt.coords[2]);
    c.check_rectangle(x, y)?;
    let scale = c.x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if y.abs() < 1e-12 * scale {
        return Err(Error::GaugeChart(format!("y = {y} is too close to 0")));
    }
    let den = q_denominator(c, x, y);
    if den.abs() < 1e-14 * scale.powi(3) {
        return Err(Error::GaugeChart(format!("Q denominator {den:e} at ({x}, {y})")));
    }
    Ok((x, y))
}

pub fn gauge_potential(c: &DerivedConstants, kind: PotentialKind, pt: &ChartPoint<4>) -> Result<GaugePotentialValue> {
    let (x, y) = checked_xy(c, pt)?;
    Ok(GaugePotentialValue { components: gauge_components(c, kind, x, y) })
}

/// dA from exact derivatives of the components.
pub fn gauge_field_strength(c: &DerivedConstants, kind: PotentialKind, pt: &ChartPoint<4>) -> Result<TwoFormValue<4>> {
    let (x, y) = checked_xy(c, pt)?;
    let a = gauge_components(c, kind, Dual::<f64, 4>::var(x, 1), Dual::<f64, 4>::var(y, 2));
    let mut w = [[0.0; 4]; 4];
    for m in 0..4 {
        for n in 0..4 {
            w[m][n] = a[n].d[m] - a[m].d[n];
        }
    }
    Ok(TwoFormValue { components: w })
}

/// d⋆A up to the volume factor: (1/√g) ∂_m(√g g^mn A_n), with the sum of
/// the absolute values of the terms as a scale.
pub fn gauge_divergence(c: &DerivedConstants, kind: PotentialKind, pt: &ChartPoint<4>) -> Result<(f64, f64)> {
    let (x, y) = checked_xy(c, pt)?;
    let (jx, jy) = (Dual::<f64, 4>::var(x, 1), Dual::<f64, 4>::var(y, 2));
    let g = chen_teo_components(c, jx, jy);
    let (ginv, det) = inverse(&g).ok_or_else(|| Error::SingularMetric("metric not invertible".into()))?;
    let vol = det.abs().sqrt();
    let up = raise1(&ginv, &gauge_components(c, kind, jx, jy)).map(|v| v * vol);
    let terms = [up[1].d[1], up[2].d[2]];
    Ok(((terms[0] + terms[1]) / vol.v, (terms[0].abs() + terms[1].abs()) / vol.v))
}
