//! The two-parameter asymptotically flat Chen-Teo family on ℂP² ∖ S¹.

pub mod asymptotic;
pub mod cp2;
pub mod fields;
pub mod metric;
pub mod params;
pub mod reduced;
pub mod rods;
pub mod weyl;

pub use asymptotic::{asymptotic_point, grr_coefficient_closed_form, grr_coefficient_fit, AsymptoticChart};
pub use cp2::cp2_map;
pub use fields::{reduced_fields, ReducedFields};
pub use metric::{ricci_sample, RicciSample, metric_at, ChenTeoChart, OrbitChart, OrbitPlaneChart};
pub use params::{ChenTeoParams, CornerFrequencies, DerivedConstants};
pub use reduced::{reduced_residuals, ReducedResiduals};
pub use rods::{rod_structure, Rod, RodStructure};
pub use weyl::{weyl_transform, WeylDirection};

use crate::error::{Error, Result};
use crate::geometry::{ChartId, ChartPoint, GUARD_BAND};
use crate::numerics::halton2;

pub fn derive_constants(p: &ChenTeoParams) -> Result<DerivedConstants> {
    DerivedConstants::new(*p)
}

/// Open rectangle x2 < x < x3, x1 < y < x2 shrunk by the guard band.
pub fn check_rectangle(c: &DerivedConstants, x: f64, y: f64) -> Result<()> {
    let [x1, x2, x3] = c.x;
    let g = GUARD_BAND;
    let ok = x.is_finite()
        && y.is_finite()
        && x > x2 + g
        && x < x3 - g
        && y > x1 + g
        && y < x2 - g
        && x - y > g;
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "(x, y) = ({x}, {y}) not inside x2 < x < x3, x1 < y < x2 with guard band {g:e}"
        )))
    }
}

/// Quasi-random interior points, kept a fraction `margin` of each gap away
/// from the edges.
pub fn interior_samples(c: &DerivedConstants, n: usize, seed: u64, margin: f64) -> Vec<(f64, f64)> {
    let (gx, gy) = c.gaps();
    halton2(n, seed as usize)
        .into_iter()
        .map(|[u, v]| {
            let s = |t: f64| margin + (1.0 - 2.0 * margin) * t;
            (c.x[1] + gx * s(u), c.x[0] + gy * s(v))
        })
        .collect()
}

/// (τ, x, y, φ) point with τ = φ = 0.
pub fn chart_point(x: f64, y: f64) -> ChartPoint<4> {
    ChartPoint::new(ChartId::ChenTeo, [0.0, x, y, 0.0])
}
