use serde::Serialize;

use super::basis::FormCombo;
use super::potentials::{alpha, PotentialKind};
use crate::chen_teo::fields::structure;
use crate::chen_teo::metric::shear_two_form;
use crate::chen_teo::{chart_point, ChenTeoChart, DerivedConstants};
use crate::dual::{Dual, Real};
use crate::error::{Error, Result};
use crate::geometry::hodge::{hodge_star_generic, wedge_2_2};
use crate::geometry::{ChartId, ChartPoint, MetricChart, TwoFormValue};

/// The metric as λθ² + p dφ² + g_xx dx² + g_yy dy², with θ = dτ + Ω dφ
/// and p = ρ²/λ.
struct Frame<T> {
    lambda: T,
    omega: T,
    p: T,
    gxx: T,
    gyy: T,
}

fn frame<T: Real>(c: &DerivedConstants, x: T, y: T) -> Frame<T> {
    let s = structure(c, x, y);
    let d3 = s.xmy * s.xmy * s.xmy;
    let k = c.kappa();
    Frame {
        lambda: s.f / (s.xmy * s.h),
        omega: s.g / s.f,
        p: -(s.h * s.big_x * s.big_y) / (d3 * s.f),
        gxx: s.h * k / (d3 * s.big_x),
        gyy: -(s.h * k) / (d3 * s.big_y),
    }
}

/// (∂_x α, ∂_y α) with α evaluated on a dual over the caller's scalar.
fn dalpha<T: Real>(c: &DerivedConstants, kind: PotentialKind, x: T, y: T) -> [T; 2] {
    let a = alpha(c, kind, Dual::<T, 2>::var(x, 0), Dual::<T, 2>::var(y, 1));
    a.d
}

/// θ∧dα + s⋆(θ∧dα) from the orthonormal coframe (√λ θ, √g_xx dx, √g_yy dy,
/// √p dφ), which is negatively oriented; then ⋆(θ∧dx) = −√(g_yy p/(λ g_xx)) dy∧dφ
/// and ⋆(θ∧dy) = √(g_xx p/(λ g_yy)) dx∧dφ.
fn omega_in_frame<T: Real>(f: &Frame<T>, da: [T; 2], s: f64) -> [[T; 4]; 4] {
    let z = T::zero();
    let a = (f.gyy * f.p / (f.lambda * f.gxx)).sqrt();
    let b = (f.gxx * f.p / (f.lambda * f.gyy)).sqrt();
    let mut w = [[z; 4]; 4];
    let mut put = |m: usize, n: usize, v: T| {
        w[m][n] += v;
        w[n][m] -= v;
    };
    put(0, 1, da[0]);
    put(0, 2, da[1]);
    put(3, 1, f.omega * da[0]);
    put(3, 2, f.omega * da[1]);
    put(2, 3, -(a * da[0]) * s);
    put(1, 3, b * da[1] * s);
    w
}

/// Σ_k coef_k ω_k over (ω₊, ω₋, ω₂), where ω_k = θ∧dα_k ± ⋆(θ∧dα_k).
pub fn combo_components<T: Real>(c: &DerivedConstants, coef: &[f64; 3], x: T, y: T) -> [[T; 4]; 4] {
    let f = frame(c, x, y);
    let mut out = [[T::zero(); 4]; 4];
    for kind in PotentialKind::ALL {
        let k = coef[kind.index()];
        if k == 0.0 {
            continue;
        }
        let w = omega_in_frame(&f, dalpha(c, kind, x, y), kind.duality().sign());
        for m in 0..4 {
            for n in 0..4 {
                out[m][n] += w[m][n] * k;
            }
        }
    }
    out
}

fn xy_of(c: &DerivedConstants, pt: &ChartPoint<4>) -> Result<(f64, f64)> {
    if pt.chart != ChartId::ChenTeo {
        return Err(Error::Domain(format!("expected a ChenTeo chart point, got {:?}", pt.chart)));
    }
    let (x, y) = (pt.coords[1], pt.coords[2]);
    c.check_rectangle(x, y)?;
    Ok((x, y))
}

pub fn omega_eval(c: &DerivedConstants, kind: PotentialKind, pt: &ChartPoint<4>) -> Result<TwoFormValue<4>> {
    let mut coef = [0.0; 3];
    coef[kind.index()] = 1.0;
    combo_eval(c, &FormCombo { coef }, pt)
}

pub fn combo_eval(c: &DerivedConstants, combo: &FormCombo, pt: &ChartPoint<4>) -> Result<TwoFormValue<4>> {
    let (x, y) = xy_of(c, pt)?;
    Ok(TwoFormValue { components: combo_components(c, &combo.coef, x, y) })
}

/// Components of dω on (τxy, τxφ, τyφ, xyφ) and the largest |∂ω| entering
/// them, from first derivatives of the component functions.
pub fn exterior_derivative(c: &DerivedConstants, combo: &FormCombo, x: f64, y: f64) -> Result<([f64; 4], f64)> {
    c.check_rectangle(x, y)?;
    let jx = Dual::<f64, 4>::var(x, 1);
    let jy = Dual::<f64, 4>::var(y, 2);
    let w = combo_components(c, &combo.coef, jx, jy);
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let mut scale: f64 = 0.0;
    let d = triples.map(|(a, b, e)| {
        let t = [w[b][e].d[a], w[e][a].d[b], w[a][b].d[e]];
        scale = t.iter().fold(scale, |m, v| m.max(v.abs()));
        t[0] + t[1] + t[2]
    });
    Ok((d, scale))
}

/// ι_K ω − dα as a 1-form.
pub fn contraction_defect(c: &DerivedConstants, kind: PotentialKind, x: f64, y: f64) -> Result<[f64; 4]> {
    let pt = crate::chen_teo::chart_point(x, y);
    let w = omega_eval(c, kind, &pt)?;
    let i_k = w.contract(&[1.0, 0.0, 0.0, 0.0]);
    let da = dalpha(c, kind, x, y);
    Ok([i_k[0], i_k[1] - da[0], i_k[2] - da[1], i_k[3]])
}

/// The energy density |ω|² = ω∧⋆ω/dVol = (2/λ)|dα|²_g.
pub fn energy_density(c: &DerivedConstants, kind: PotentialKind, pt: &ChartPoint<4>) -> Result<f64> {
    let (x, y) = xy_of(c, pt)?;
    Ok(energy_density_of(c, &single(kind), x, y))
}

/// (2/λ)|dα|²_g for α = Σ coef_k α_k, without the domain check.
pub fn energy_density_of(c: &DerivedConstants, coef: &[f64; 3], x: f64, y: f64) -> f64 {
    let s = structure(c, x, y);
    let mut da = [0.0; 2];
    for kind in PotentialKind::ALL {
        let k = coef[kind.index()];
        if k != 0.0 {
            let d = dalpha(c, kind, x, y);
            da[0] += k * d[0];
            da[1] += k * d[1];
        }
    }
    let lam = s.f / (s.xmy * s.h);
    let d3 = s.xmy.powi(3);
    let norm = d3 * (s.big_x * da[0] * da[0] - s.big_y * da[1] * da[1]) / (c.kappa() * s.h);
    2.0 * norm / lam
}

/// Both sides of the energy-density identity at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityCheck {
    /// (2/λ)|dα|²_g
    pub potential_route: f64,
    /// ω∧⋆ω/dVol
    pub wedge_route: f64,
    /// 2|dα|²_h on the orbit space
    pub orbit_route: f64,
}

/// The form, ⋆ of it and the signed volume density in the chart sheared at
/// (x, y), with ⋆ taken from the numerically inverted metric.
fn sheared_pair(c: &DerivedConstants, coef: &[f64; 3], x: f64, y: f64) -> Result<([[f64; 4]; 4], [[f64; 4]; 4], f64)> {
    let ch = ChenTeoChart::adapted(c.clone(), x, y);
    let jet = ch.jet(&chart_point(x, y))?;
    let w = shear_two_form(&combo_components(c, coef, x, y), ch.twist_shift);
    let ginv = jet.inverse()?;
    let vol = jet.volume_density();
    Ok((w, hodge_star_generic(&ginv, vol, &w), vol))
}

pub fn energy_density_check(c: &DerivedConstants, kind: PotentialKind, x: f64, y: f64) -> Result<DensityCheck> {
    c.check_rectangle(x, y)?;
    let (w, sw, vol) = sheared_pair(c, &single(kind), x, y)?;
    let wedge_route = wedge_2_2(&w, &sw) / vol;
    let da = dalpha(c, kind, x, y);
    let s = structure(c, x, y);
    let d4 = s.xmy.powi(4);
    let orbit = d4 * (s.big_x * da[0] * da[0] - s.big_y * da[1] * da[1]) / (c.kappa() * s.f);
    Ok(DensityCheck {
        potential_route: energy_density_of(c, &single(kind), x, y),
        wedge_route,
        orbit_route: 2.0 * orbit,
    })
}

/// max |⋆ω − sω| / max |ω| for ω = Σ coef_k ω_k of duality sign s, with ⋆
/// from the metric jet.
pub fn duality_defect(c: &DerivedConstants, coef: &[f64; 3], s: f64, x: f64, y: f64) -> Result<f64> {
    c.check_rectangle(x, y)?;
    let (w, sw, _) = sheared_pair(c, coef, x, y)?;
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for m in 0..4 {
        for n in 0..4 {
            num = num.max((sw[m][n] - s * w[m][n]).abs());
            den = den.max(w[m][n].abs());
        }
    }
    Ok(num / den)
}

/// dK ± ⋆dK from the Killing-field route against ω± from the potential
/// route: the least-squares ratio and the residual after scaling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RouteComparison {
    pub ratio: f64,
    pub residual: f64,
}

pub fn killing_route_comparison(c: &DerivedConstants, kind: PotentialKind, x: f64, y: f64) -> Result<RouteComparison> {
    c.check_rectangle(x, y)?;
    let ch = ChenTeoChart::adapted(c.clone(), x, y);
    let jet = ch.jet(&chart_point(x, y))?;
    let kf = crate::geometry::killing_forms(&jet, 0)?;
    let target = match kind {
        PotentialKind::AlphaPlus => kf.omega_plus,
        PotentialKind::AlphaMinus => kf.omega_minus,
        PotentialKind::Alpha2 => {
            return Err(Error::UnsupportedForm("alpha_2 has no Killing-field route".into()));
        }
    };
    let w = TwoFormValue { components: shear_two_form(&combo_components(c, &single(kind), x, y), ch.twist_shift) };
    let flat = |t: &TwoFormValue<4>| t.components.iter().flatten().copied().collect::<Vec<_>>();
    let (a, b) = (flat(&target), flat(&w));
    let ratio = a.iter().zip(&b).map(|(p, q)| p * q).sum::<f64>() / b.iter().map(|q| q * q).sum::<f64>();
    let residual = target.sub(&w.scale(ratio)).max_abs() / target.max_abs();
    Ok(RouteComparison { ratio, residual })
}

pub(crate) fn single(kind: PotentialKind) -> [f64; 3] {
    let mut coef = [0.0; 3];
    coef[kind.index()] = 1.0;
    coef
}
