use super::fields::structure;
use super::params::DerivedConstants;
use super::check_rectangle;
use crate::dual::Real;
use crate::error::Result;
use serde::Serialize;

use crate::geometry::{curvature, ChartId, ChartPoint, Jet2Metric, MetricChart};

/// The 4-metric in (τ, x, y, φ).
///
/// Inside the rectangle H < 0, so the signed density κH/(x − y)⁵ is
/// negative and dτ∧dx∧dy∧dφ is negatively oriented.
#[derive(Clone, Debug)]
pub struct ChenTeoChart {
    pub c: DerivedConstants,
    /// Ω₀ in τ' = τ + Ω₀φ. The chart uses τ' in place of τ.
    pub twist_shift: f64,
}

impl ChenTeoChart {
    pub fn new(c: DerivedConstants) -> Self {
        ChenTeoChart { c, twist_shift: 0.0 }
    }

    /// The chart sheared by Ω₀ = Ω(x, y), in which ∂_τ' ⟂ ∂_φ at (x, y).
    ///
    /// Near the short rectangles of ξ → 1/√2 the Killing fields are almost
    /// parallel and g_φφ = λΩ² + ρ²/λ is dominated by λΩ²; curvature in the
    /// unsheared chart then loses most of its digits to cancellation.
    pub fn adapted(c: DerivedConstants, x: f64, y: f64) -> Self {
        let twist_shift = super::fields::omega_phi(&c, x, y);
        ChenTeoChart { c, twist_shift }
    }

    /// κH/(x − y)⁵
    pub fn signed_volume_density(&self, x: f64, y: f64) -> f64 {
        let s = structure(&self.c, x, y);
        self.c.kappa() * s.h / s.xmy.powi(5)
    }
}

/// Components in (τ + Ω₀φ, x, y, φ), written as
/// λ(dτ' + (Ω − Ω₀)dφ)² + (ρ²/λ)dφ² + κH/(x − y)³ (dx²/X − dy²/Y).
pub(crate) fn sheared_components<T: Real>(c: &DerivedConstants, x: T, y: T, omega0: f64) -> [[T; 4]; 4] {
    let s = structure(c, x, y);
    let k = c.kappa();
    let d = s.xmy;
    let d3 = d * d * d;
    let lam = s.f / (d * s.h);
    let w = s.g / s.f - omega0;
    let g_tp = lam * w;
    let g_pp = g_tp * w - s.h * s.big_x * s.big_y / (d3 * s.f);
    let g_xx = s.h * k / (d3 * s.big_x);
    let g_yy = -(s.h * k) / (d3 * s.big_y);
    let z = T::zero();
    [
        [lam, z, z, g_tp],
        [z, g_xx, z, z],
        [z, z, g_yy, z],
        [g_tp, z, z, g_pp],
    ]
}

pub(crate) fn chen_teo_components<T: Real>(c: &DerivedConstants, x: T, y: T) -> [[T; 4]; 4] {
    let s = structure(c, x, y);
    let k = c.kappa();
    let d = s.xmy;
    let d3 = d * d * d;
    let g_tt = s.f / (d * s.h);
    let g_tp = s.g / (d * s.h);
    let g_pp = s.g * s.g / (d * s.h * s.f) - s.h * s.big_x * s.big_y / (d3 * s.f);
    let g_xx = s.h * k / (d3 * s.big_x);
    let g_yy = -(s.h * k) / (d3 * s.big_y);
    let z = T::zero();
    [
        [g_tt, z, z, g_tp],
        [z, g_xx, z, z],
        [z, z, g_yy, z],
        [g_tp, z, z, g_pp],
    ]
}

impl MetricChart<4> for ChenTeoChart {
    fn chart_id(&self) -> ChartId {
        ChartId::ChenTeo
    }

    fn orientation(&self) -> f64 {
        -1.0
    }

    fn check_domain(&self, q: &[f64; 4]) -> Result<()> {
        check_rectangle(&self.c, q[1], q[2])
    }

    fn components<T: Real>(&self, q: [T; 4]) -> [[T; 4]; 4] {
        if self.twist_shift == 0.0 {
            chen_teo_components(&self.c, q[1], q[2])
        } else {
            sheared_components(&self.c, q[1], q[2], self.twist_shift)
        }
    }
}

/// The metric h on the orbit space of ∂_τ, in (x, y, φ):
/// κF/(x − y)⁴ (dx²/X − dy²/Y) + ρ² dφ².
#[derive(Clone, Debug)]
pub struct OrbitChart {
    pub c: DerivedConstants,
}

impl MetricChart<3> for OrbitChart {
    fn chart_id(&self) -> ChartId {
        ChartId::Orbit
    }

    fn check_domain(&self, q: &[f64; 3]) -> Result<()> {
        check_rectangle(&self.c, q[0], q[1])
    }

    fn components<T: Real>(&self, q: [T; 3]) -> [[T; 3]; 3] {
        let s = structure(&self.c, q[0], q[1]);
        let k = self.c.kappa();
        let d4 = s.xmy.powi(4);
        let z = T::zero();
        [
            [s.f * k / (d4 * s.big_x), z, z],
            [z, -(s.f * k) / (d4 * s.big_y), z],
            [z, z, -(s.big_x * s.big_y) / d4],
        ]
    }
}

/// The metric on the torus orbit space, in (x, y): κH/(x − y)³ (dx²/X − dy²/Y).
#[derive(Clone, Debug)]
pub struct OrbitPlaneChart {
    pub c: DerivedConstants,
}

impl MetricChart<2> for OrbitPlaneChart {
    fn chart_id(&self) -> ChartId {
        ChartId::OrbitPlane
    }

    fn check_domain(&self, q: &[f64; 2]) -> Result<()> {
        check_rectangle(&self.c, q[0], q[1])
    }

    fn components<T: Real>(&self, q: [T; 2]) -> [[T; 2]; 2] {
        let s = structure(&self.c, q[0], q[1]);
        let k = self.c.kappa();
        let d3 = s.xmy.powi(3);
        let z = T::zero();
        [[s.h * k / (d3 * s.big_x), z], [z, -(s.h * k) / (d3 * s.big_y)]]
    }
}

/// Components of a 2-form in the chart sheared by Ω₀, from those in
/// (τ, x, y, φ): ∂_φ' = ∂_φ − Ω₀∂_τ. A negative Ω₀ undoes the shear.
pub fn shear_two_form(w: &[[f64; 4]; 4], omega0: f64) -> [[f64; 4]; 4] {
    let mut out = *w;
    for m in 0..3 {
        let v = w[m][3] - omega0 * w[m][0];
        out[m][3] = v;
        out[3][m] = -v;
    }
    out
}

/// Ricci-flatness at one interior point, measured in the adapted chart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RicciSample {
    pub x: f64,
    pub y: f64,
    /// √(R_μν R^μν), the largest Ricci component in any orthonormal frame
    /// up to a factor 2.
    pub ricci_norm: f64,
    pub kretschmann: f64,
    /// ricci_norm / (1 + √|K|)
    pub scaled: f64,
}

pub fn ricci_sample(c: &DerivedConstants, x: f64, y: f64) -> Result<RicciSample> {
    let ch = ChenTeoChart::adapted(c.clone(), x, y);
    let cb = curvature(&ch, &ch.point([0.0, x, y, 0.0]))?;
    Ok(RicciSample {
        x,
        y,
        ricci_norm: cb.ricci_norm,
        kretschmann: cb.kretschmann,
        scaled: cb.ricci_norm / (1.0 + cb.kretschmann.abs().sqrt()),
    })
}

pub fn metric_at(c: &DerivedConstants, pt: &ChartPoint<4>) -> Result<Jet2Metric<4>> {
    ChenTeoChart::new(c.clone()).jet(pt)
}
