use serde::Serialize;

use crate::chen_teo::fields::{lambda, scalar_jet2, structure, zeta, ScalarJet2};
use crate::chen_teo::{DerivedConstants, OrbitChart};
use crate::dual::Real;
use crate::error::Result;
use crate::geometry::laplace::{dot, laplace_beltrami};
use crate::geometry::{ChartId, ChartPoint, MetricChart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Duality {
    SelfDual,
    AntiSelfDual,
}

impl Duality {
    /// ⋆ω = sign · ω
    pub fn sign(self) -> f64 {
        match self {
            Duality::SelfDual => 1.0,
            Duality::AntiSelfDual => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PotentialKind {
    AlphaPlus,
    AlphaMinus,
    Alpha2,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 3] = [PotentialKind::AlphaPlus, PotentialKind::AlphaMinus, PotentialKind::Alpha2];

    pub fn duality(self) -> Duality {
        match self {
            PotentialKind::AlphaPlus => Duality::SelfDual,
            _ => Duality::AntiSelfDual,
        }
    }

    /// Position in (ω₊, ω₋, ω₂) coefficient vectors.
    pub fn index(self) -> usize {
        match self {
            PotentialKind::AlphaPlus => 0,
            PotentialKind::AlphaMinus => 1,
            PotentialKind::Alpha2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PotentialKind::AlphaPlus => "alpha_plus",
            PotentialKind::AlphaMinus => "alpha_minus",
            PotentialKind::Alpha2 => "alpha_2",
        }
    }

    /// The limit at the asymptotic end.
    pub fn at_infinity(self, c: &DerivedConstants) -> f64 {
        match self {
            PotentialKind::AlphaPlus => 2.0 / (1.0 - c.nu * c.nu),
            _ => 0.0,
        }
    }
}

pub fn alpha<T: Real>(c: &DerivedConstants, kind: PotentialKind, x: T, y: T) -> T {
    let nu = c.nu;
    let w = x * nu + y;
    match kind {
        PotentialKind::AlphaPlus => -(x + y) / (w * (nu - 1.0)),
        PotentialKind::AlphaMinus => {
            let s = structure(c, x, y);
            s.xmy * w * ((x * y * -c.a[3]) + c.a[1]) / (s.h * (nu - 1.0))
        }
        PotentialKind::Alpha2 => {
            let s = structure(c, x, y);
            s.xmy * w / (s.h * (nu - 1.0))
        }
    }
}

pub fn alpha_eval(c: &DerivedConstants, kind: PotentialKind, x: f64, y: f64) -> Result<f64> {
    c.check_rectangle(x, y)?;
    Ok(alpha(c, kind, x, y))
}

pub fn alpha_jet(c: &DerivedConstants, kind: PotentialKind, x: f64, y: f64) -> Result<ScalarJet2> {
    c.check_rectangle(x, y)?;
    Ok(scalar_jet2(x, y, |a, b| alpha(c, kind, a, b)))
}

pub use crate::numerics::Residual as PdeResidual;

/// Δ_h α − (1/λ) h(d(λ + sζ), dα) for the 2-jet of an arbitrary α, with s
/// the duality sign.
pub fn pde_residual_of(c: &DerivedConstants, duality: Duality, x: f64, y: f64, a: &ScalarJet2) -> Result<PdeResidual> {
    let chart = OrbitChart { c: c.clone() };
    let jet = chart.jet(&ChartPoint::new(ChartId::Orbit, [x, y, 0.0]))?;
    let (ga, ha) = a.embed::<3>(0);
    let lam = scalar_jet2(x, y, |p, q| lambda(c, p, q));
    let zet = scalar_jet2(x, y, |p, q| zeta(c, p, q));
    let (gl, _) = lam.embed::<3>(0);
    let (gz, _) = zet.embed::<3>(0);
    let lap = laplace_beltrami(&jet, &ga, &ha)?;
    let tl = dot(&jet, &gl, &ga)? / lam.value;
    let tz = duality.sign() * dot(&jet, &gz, &ga)? / lam.value;
    Ok(PdeResidual { residual: lap - tl - tz, scale: lap.abs() + tl.abs() + tz.abs() })
}

pub fn pde_residual(c: &DerivedConstants, kind: PotentialKind, x: f64, y: f64) -> Result<PdeResidual> {
    let a = alpha_jet(c, kind, x, y)?;
    pde_residual_of(c, kind.duality(), x, y, &a)
}
