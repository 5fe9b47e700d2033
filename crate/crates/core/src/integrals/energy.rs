use std::f64::consts::PI;

use serde::Serialize;

use super::quadrature::{GaussRule, QuadratureSpec};
use crate::chen_teo::asymptotic::{asymptotic_scale, asymptotic_xy};
use crate::chen_teo::fields::{structure, zeta};
use crate::chen_teo::DerivedConstants;
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::harmonics::omega::energy_density_of;
use crate::harmonics::potentials::alpha;
use crate::harmonics::{corner_values, Duality, PotentialKind};
use crate::numerics::extrapolate_to_zero;

/// A potential Σ coef_k α_k whose forms share one duality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HarmonicPotential {
    pub duality: Duality,
    pub coef: [f64; 3],
}

impl HarmonicPotential {
    pub fn single(kind: PotentialKind) -> Self {
        HarmonicPotential { duality: kind.duality(), coef: crate::harmonics::omega::single(kind) }
    }

    pub fn validate(&self) -> Result<()> {
        for k in PotentialKind::ALL {
            if self.coef[k.index()] != 0.0 && k.duality() != self.duality {
                return Err(Error::UnsupportedForm(format!(
                    "{} does not have duality {:?}",
                    k.name(),
                    self.duality
                )));
            }
        }
        Ok(())
    }

    fn value<T: crate::dual::Real>(&self, c: &DerivedConstants, x: T, y: T) -> T {
        let mut s = T::zero();
        for k in PotentialKind::ALL {
            let a = self.coef[k.index()];
            if a != 0.0 {
                s += alpha(c, k, x, y) * a;
            }
        }
        s
    }

    /// Values at z1, z2, z3 and ∞.
    pub fn corner_values(&self, c: &DerivedConstants) -> [f64; 4] {
        let cv = corner_values(c);
        std::array::from_fn(|i| self.coef[0] * cv.plus[i] + self.coef[1] * cv.minus[i] + self.coef[2] * cv.two[i])
    }
}

/// ½‖ω‖² from the boundary formula.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryEnergy {
    /// s·½ Σ α(z_i)²/(c_R c_L), s the duality sign.
    pub corner_term: f64,
    /// Flux through the asymptotic sphere, extrapolated in 1/r.
    pub asymptotic_term: f64,
    pub asymptotic_error: f64,
    /// The flux at each cutoff radius.
    pub asymptotic_samples: [f64; 3],
    pub total: f64,
    /// The corner term for α − α(∞), whose asymptotic flux vanishes.
    pub shifted_corner_term: f64,
}

fn corner_sum(c: &DerivedConstants, s: f64, vals: &[f64; 4], shift: f64) -> f64 {
    let mut t = 0.0;
    for i in 0..3 {
        let f = c.freqs[i];
        t += (vals[i] - shift).powi(2) / (f.c_r * f.c_l);
    }
    0.5 * s * t
}

/// −|J| ∫₀^π (F^x ∂_θ y − F^y ∂_θ x) dθ on the sphere of radius r, with
/// F = αV − (s/2)α²W, V = (Xα_x, −Yα_y)/(λ(x − y)²) and W the same built
/// from ζ and λ².
pub fn asymptotic_flux(c: &DerivedConstants, pot: &HarmonicPotential, r: f64, rule: &GaussRule, panels: usize) -> Result<f64> {
    let s = pot.duality.sign();
    let jac = c.torus_jacobian().abs();
    let scale = c.x[1] * asymptotic_scale(c);
    let f = |th: f64| -> Result<f64> {
        let (x, y) = asymptotic_xy(c, r, th);
        let (dx, dy) = (Dual::<f64, 2>::var(x, 0), Dual::<f64, 2>::var(y, 1));
        let a = pot.value(c, dx, dy);
        let z = zeta(c, dx, dy);
        let st = structure(c, x, y);
        let lam = st.f / (st.xmy * st.h);
        let d2 = st.xmy * st.xmy;
        let v = [st.big_x * a.d[0] / (lam * d2), -st.big_y * a.d[1] / (lam * d2)];
        let w = [st.big_x * z.d[0] / (lam * lam * d2), -st.big_y * z.d[1] / (lam * lam * d2)];
        let fx = a.v * v[0] - 0.5 * s * a.v * a.v * w[0];
        let fy = a.v * v[1] - 0.5 * s * a.v * a.v * w[1];
        let dth = scale * th.sin() / (2.0 * r);
        Ok(fx * dth - fy * dth)
    };
    let pan: Vec<(f64, f64)> = (0..panels)
        .map(|i| (PI * i as f64 / panels as f64, PI * (i + 1) as f64 / panels as f64))
        .collect();
    Ok(-jac * rule.integrate(&pan, f)?)
}

pub fn energy_boundary_of(c: &DerivedConstants, pot: &HarmonicPotential, spec: &QuadratureSpec) -> Result<BoundaryEnergy> {
    pot.validate()?;
    spec.validate()?;
    let s = pot.duality.sign();
    let vals = pot.corner_values(c);
    let corner_term = corner_sum(c, s, &vals, 0.0);
    let shifted_corner_term = corner_sum(c, s, &vals, vals[3]);
    let rule = spec.rule();
    let mut h = Vec::new();
    let mut v = Vec::new();
    for &rc in &spec.asymptotic_cutoffs {
        let r = rc * c.sqrt_kappa;
        h.push(1.0 / r);
        v.push(asymptotic_flux(c, pot, r, &rule, 4 * spec.subdivisions)?);
    }
    let (asymptotic_term, asymptotic_error) = extrapolate_to_zero(&h, &v);
    if !asymptotic_term.is_finite() {
        return Err(Error::QuadratureFailure("asymptotic flux is not finite".into()));
    }
    let mut asymptotic_samples = [f64::NAN; 3];
    for (a, b) in asymptotic_samples.iter_mut().zip(&v) {
        *a = *b;
    }
    Ok(BoundaryEnergy {
        corner_term,
        asymptotic_term,
        asymptotic_error,
        asymptotic_samples,
        total: corner_term + asymptotic_term,
        shifted_corner_term,
    })
}

pub fn energy_boundary(c: &DerivedConstants, kind: PotentialKind, spec: &QuadratureSpec) -> Result<BoundaryEnergy> {
    energy_boundary_of(c, &HarmonicPotential::single(kind), spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirectEnergy {
    pub value: f64,
    pub error_estimate: f64,
}

/// ½‖ω‖² = (1/8π²)∫ ω∧⋆ω by quadrature over the whole rectangle.
///
/// The rectangle is parametrized from its asymptotic corner by
/// x = x2 + a cos²(θ/2) s, y = x2 − a sin²(θ/2) s, a = −x2√(κ(1 − ν²)),
/// with s ≤ s_max(θ) ending on the edge x = x3 or y = x1. The integrand is
/// smooth in (s, θ) including s = 0, so no cutoff is needed; the split at
/// the ray through the nut (x3, x1) makes each piece analytic.
pub fn energy_direct_coef(c: &DerivedConstants, coef: &[f64; 3], spec: &QuadratureSpec) -> Result<DirectEnergy> {
    spec.validate()?;
    let fine = direct_energy_with(c, coef, &spec.rule(), spec.subdivisions)?;
    let coarse = direct_energy_with(c, coef, &GaussRule::new((spec.gauss_order * 3).div_ceil(4)), spec.subdivisions)?;
    let error_estimate = (fine - coarse).abs() + 1e3 * f64::EPSILON * fine.abs();
    if !fine.is_finite() || error_estimate > 1e-3 * fine.abs() {
        return Err(Error::QuadratureFailure(format!("direct energy did not settle: {fine} ± {error_estimate:e}")));
    }
    Ok(DirectEnergy { value: fine, error_estimate })
}

pub fn energy_direct(c: &DerivedConstants, kind: PotentialKind, spec: &QuadratureSpec) -> Result<DirectEnergy> {
    energy_direct_coef(c, &crate::harmonics::omega::single(kind), spec)
}

fn direct_energy_with(c: &DerivedConstants, coef: &[f64; 3], rule: &GaussRule, panels: usize) -> Result<f64> {
    let [x1, x2, x3] = c.x;
    let a = -x2 * asymptotic_scale(c);
    let jac = c.torus_jacobian().abs();
    let kappa = c.kappa();
    let th_star = 2.0 * ((x2 - x1) / (x3 - x2)).sqrt().atan();
    let s_max = |th: f64| {
        let (ch, sh) = ((th / 2.0).cos(), (th / 2.0).sin());
        ((x3 - x2) / (a * ch * ch)).min((x2 - x1) / (a * sh * sh))
    };
    let inner = |th: f64| -> Result<f64> {
        let sm = s_max(th);
        let (ch2, sh2) = ((th / 2.0).cos().powi(2), (th / 2.0).sin().powi(2));
        let pan: Vec<(f64, f64)> = (0..panels).map(|i| (sm * i as f64 / panels as f64, sm * (i + 1) as f64 / panels as f64)).collect();
        let mut acc = Vec::with_capacity(panels * rule.order());
        for &(lo, hi) in &pan {
            for (s, w) in rule.on(lo, hi) {
                let x = x2 + a * ch2 * s;
                let y = x2 - a * sh2 * s;
                let st = structure(c, x, y);
                let vol = (kappa * st.h / st.xmy.powi(5)).abs();
                let det = 0.5 * a * a * s * th.sin();
                acc.push(w * energy_density_of(c, coef, x, y) * vol * det);
            }
        }
        Ok(crate::numerics::pairwise_sum(&acc))
    };
    let mut th_panels = Vec::new();
    for (lo, hi) in [(0.0, th_star), (th_star, PI)] {
        let h = (hi - lo) / panels as f64;
        th_panels.extend((0..panels).map(|i| (lo + h * i as f64, lo + h * (i + 1) as f64)));
    }
    Ok(0.5 * jac * rule.integrate(&th_panels, inner)?)
}
