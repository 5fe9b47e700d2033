use serde::Serialize;

use super::quadrature::{graded_panels, QuadratureSpec};
use crate::chen_teo::DerivedConstants;
use crate::error::{Error, Result};
use crate::harmonics::{basis_coefficients, named_form_at, BasisCoefficients, CornerValues, FormCombo, NamedForm};

/// Where a potential is evaluated: a nut or the asymptotic end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Corner {
    Z1,
    Z2,
    Z3,
    Infinity,
}

impl Corner {
    fn index(self) -> usize {
        match self {
            Corner::Z1 => 0,
            Corner::Z2 => 1,
            Corner::Z3 => 2,
            Corner::Infinity => 3,
        }
    }
}

/// The coordinate running along a bolt in the (x, y) rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Along {
    X,
    Y,
}

/// Orientation of bolt B_I: the ordered frame (∂_s, ℓ_j), with s the
/// coordinate running from `start` to `end` and ℓ_j the Killing field that
/// survives on the bolt.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoltOrientation {
    pub bolt: usize,
    pub along: Along,
    pub start: Corner,
    pub end: Corner,
    /// Rod on which the bolt lies; ℓ_rod vanishes there.
    pub rod: usize,
    pub surviving: usize,
}

/// Every sign of the period formulas follows from this table. With it,
/// (1/2π)∫_{B₂} ω₋ > 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrientationRegistry {
    pub bolts: [BoltOrientation; 4],
}

impl Default for OrientationRegistry {
    fn default() -> Self {
        use Corner::*;
        let b = |bolt, along, start, end, surviving| BoltOrientation { bolt, along, start, end, rod: bolt, surviving };
        OrientationRegistry {
            bolts: [
                b(1, Along::Y, Z3, Infinity, 2),
                b(2, Along::X, Z3, Z2, 1),
                b(3, Along::Y, Z2, Z1, 1),
                b(4, Along::X, Infinity, Z1, 2),
            ],
        }
    }
}

impl OrientationRegistry {
    pub fn bolt(&self, i: usize) -> Result<&BoltOrientation> {
        self.bolts
            .iter()
            .find(|b| b.bolt == i)
            .ok_or_else(|| Error::Domain(format!("no bolt B{i}; bolts are B1..B4")))
    }
}

/// On B_I the vanishing of ℓ_I gives ι_{ℓ_j} ω = ((b_j − b_I)/k_j) dα, so
/// (1/2π)∫ ω(∂_s, ℓ_j) = −((b_j − b_I)/k_j)(α(end) − α(start)).
pub fn localized_from_potential(c: &DerivedConstants, o: &BoltOrientation, pot: &[f64; 4]) -> f64 {
    let j = o.surviving - 1;
    let i = o.rod - 1;
    -c.b_difference(j, i) / c.k[j] * (pot[o.end.index()] - pot[o.start.index()])
}

/// Potential of a named form at z1, z2, z3, ∞. For dK this is −|K|².
pub fn form_potential(c: &DerivedConstants, bc: &BasisCoefficients, cv: &CornerValues, form: NamedForm) -> [f64; 4] {
    match form {
        NamedForm::DK => [0.0, 0.0, 0.0, -c.lambda_inf],
        other => other.combo(bc).potential_values(cv),
    }
}

pub fn period_localized(c: &DerivedConstants, form: NamedForm, bolt: usize) -> Result<f64> {
    let (bc, cv) = basis_coefficients(c);
    let o = OrientationRegistry::default();
    Ok(localized_from_potential(c, o.bolt(bolt)?, &form_potential(c, &bc, &cv, form)))
}

pub fn period_localized_combo(c: &DerivedConstants, combo: &FormCombo, bolt: usize) -> Result<f64> {
    let (_, cv) = basis_coefficients(c);
    let o = OrientationRegistry::default();
    Ok(localized_from_potential(c, o.bolt(bolt)?, &combo.potential_values(&cv)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirectPeriod {
    pub value: f64,
    pub error_estimate: f64,
    /// Values at each corner offset, before extrapolation.
    pub samples: [f64; 3],
}

/// (1/2π)∫_{B_I} ω by quadrature along a curve parallel to a finite bolt,
/// extrapolated to the bolt in the offset ε. The angular integral is exact
/// because ω is invariant under ℓ_j.
pub fn period_direct(c: &DerivedConstants, form: NamedForm, bolt: usize, spec: &QuadratureSpec) -> Result<DirectPeriod> {
    spec.validate()?;
    if bolt != 2 && bolt != 3 {
        return Err(Error::Domain(format!("direct periods need a finite bolt (B2 or B3), got B{bolt}")));
    }
    let (bc, _) = basis_coefficients(c);
    let reg = OrientationRegistry::default();
    let o = reg.bolt(bolt)?;
    let [x1, x2, x3] = c.x;
    let (gx, gy) = c.gaps();
    let j = o.surviving - 1;
    let ell = [c.b[j] / c.k[j], 0.0, 0.0, 1.0 / c.k[j]];
    let rule = spec.rule();
    let coarse = super::quadrature::GaussRule::new((spec.gauss_order * 3).div_ceil(4));

    let run = |eps: f64, rule: &super::quadrature::GaussRule| -> Result<(f64, f64)> {
        let (lo, hi, fixed, fine) = match o.along {
            Along::X => (x2, x3, x1 + eps * gy, eps * gy),
            Along::Y => (x1, x2, x3 - eps * gx, eps * gx),
        };
        let panels = graded_panels(lo, hi, spec.subdivisions, Some(fine), Some(fine));
        let tangent = match o.along {
            Along::X => [0.0, 1.0, 0.0, 0.0],
            Along::Y => [0.0, 0.0, 1.0, 0.0],
        };
        let f = |s: f64| -> Result<f64> {
            let (x, y) = match o.along {
                Along::X => (s, fixed),
                Along::Y => (fixed, s),
            };
            Ok(named_form_at(c, &bc, form, x, y)?.eval(&tangent, &ell))
        };
        let v = rule.integrate(&panels, f)?;
        let abs = rule.integrate(&panels, |s| f(s).map(f64::abs))?;
        Ok((v, abs))
    };

    let offs = spec.offsets();
    let mut vals = Vec::with_capacity(offs.len());
    let mut roundoff: f64 = 0.0;
    for &e in offs {
        let (v, abs) = run(e, &rule)?;
        vals.push(v);
        roundoff = roundoff.max(64.0 * f64::EPSILON * abs);
    }
    let finest = *offs.last().expect("at least one offset");
    let (v_coarse, _) = run(finest, &coarse)?;
    let quad_err = (v_coarse - vals[vals.len() - 1]).abs();
    let (value, rich_err) = crate::numerics::extrapolate_to_zero(offs, &vals);
    let error_estimate = rich_err + quad_err + roundoff;
    if !value.is_finite() || error_estimate > 1e-3 * value.abs().max(1.0) {
        return Err(Error::QuadratureFailure(format!(
            "direct period of {} over B{bolt} did not settle: {value} ± {error_estimate:e}",
            form.name()
        )));
    }
    let mut samples = [f64::NAN; 3];
    for (s, v) in samples.iter_mut().zip(&vals) {
        *s = *v;
    }
    Ok(DirectPeriod { value, error_estimate, samples })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodEntry {
    pub form: NamedForm,
    pub bolt: usize,
    pub localized: f64,
    pub direct: Option<DirectPeriod>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodTable {
    pub entries: Vec<PeriodEntry>,
}

impl PeriodTable {
    pub fn get(&self, form: NamedForm, bolt: usize) -> Option<&PeriodEntry> {
        self.entries.iter().find(|e| e.form == form && e.bolt == bolt)
    }
}

/// Localized periods for every named form and bolt, with direct quadrature
/// over the finite bolts when `spec` is given.
pub fn period_table(c: &DerivedConstants, spec: Option<&QuadratureSpec>) -> Result<PeriodTable> {
    let mut entries = Vec::new();
    for form in NamedForm::ALL {
        for bolt in 1..=4 {
            let direct = match spec {
                Some(s) if bolt == 2 || bolt == 3 => Some(period_direct(c, form, bolt, s)?),
                _ => None,
            };
            entries.push(PeriodEntry { form, bolt, localized: period_localized(c, form, bolt)?, direct });
        }
    }
    Ok(PeriodTable { entries })
}

/// Closed forms for the finite-bolt periods of ω₋ and ω₂.
pub fn closed_form_periods(c: &DerivedConstants) -> [[f64; 2]; 2] {
    let e = c.xi();
    let e2 = e * e;
    let sk = c.sqrt_kappa;
    let w = 1.0 - 2.0 * e2;
    let q = 1.0 - 2.0 * e + 2.0 * e2;
    let w4 = 1.0 - 4.0 * e2 * e2;
    [
        [2.0 * sk / w, 4.0 * e2 * sk / w],
        [2.0 * sk / (e * (2.0 * e - 1.0) * q * w4), 2.0 * sk / ((1.0 - e) * q * w4)],
    ]
}
