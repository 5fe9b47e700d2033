use serde::Serialize;

use super::potentials::PotentialKind;
use crate::chen_teo::DerivedConstants;

/// A linear combination of (ω₊, ω₋, ω₂).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FormCombo {
    pub coef: [f64; 3],
}

impl FormCombo {
    pub fn zero() -> Self {
        FormCombo { coef: [0.0; 3] }
    }

    pub fn single(kind: PotentialKind) -> Self {
        FormCombo { coef: super::omega::single(kind) }
    }

    pub fn add(&self, o: &Self) -> Self {
        FormCombo { coef: std::array::from_fn(|i| self.coef[i] + o.coef[i]) }
    }

    pub fn scale(&self, s: f64) -> Self {
        FormCombo { coef: self.coef.map(|v| v * s) }
    }

    /// The potential of the combination (ι_K ω = dα) at z1, z2, z3 and ∞.
    pub fn potential_values(&self, cv: &CornerValues) -> [f64; 4] {
        std::array::from_fn(|i| self.coef[0] * cv.plus[i] + self.coef[1] * cv.minus[i] + self.coef[2] * cv.two[i])
    }
}

/// α at the nuts z1, z2, z3 and at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CornerValues {
    pub plus: [f64; 4],
    pub minus: [f64; 4],
    pub two: [f64; 4],
}

impl CornerValues {
    pub fn of(&self, kind: PotentialKind) -> [f64; 4] {
        match kind {
            PotentialKind::AlphaPlus => self.plus,
            PotentialKind::AlphaMinus => self.minus,
            PotentialKind::Alpha2 => self.two,
        }
    }
}

pub fn corner_values(c: &DerivedConstants) -> CornerValues {
    let e = c.xi();
    let e2 = e * e;
    let e3 = e2 * e;
    let e4 = e2 * e2;
    let w4 = 1.0 - 4.0 * e4;
    let plus = [
        -(1.0 - 3.0 * e + 2.0 * e2 - 2.0 * e3) / (e * w4),
        -(1.0 - 2.0 * e - 4.0 * e3 + 4.0 * e4) / (2.0 * e2 * w4),
        (1.0 - 2.0 * e + 6.0 * e2 - 4.0 * e3) / (2.0 * e2 * w4),
        PotentialKind::AlphaPlus.at_infinity(c),
    ];
    let minus = [-plus[0], -plus[1], -plus[2], PotentialKind::AlphaMinus.at_infinity(c)];
    let two = [
        -1.0 / (4.0 * e4 * (1.0 - e) * w4),
        -1.0 / (2.0 * e3 * w4 * (1.0 - 2.0 * e + 2.0 * e2)),
        1.0 / (2.0 * e3 * (1.0 - 2.0 * e) * w4),
        PotentialKind::Alpha2.at_infinity(c),
    ];
    CornerValues { plus, minus, two }
}

/// Coefficients of the integral bases.
///
/// ω̃₋ = `tilde_minus_scale`·ω₋ and ω̃₂ = `tilde_two_scale`·ω₂; `nu2`, `nu3`
/// are over (ω̃₋, ω̃₂); μ₁ = `mu1_scale`·dK; `mu2` is over (ν₂, ν₃, μ₁).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasisCoefficients {
    pub tilde_minus_scale: f64,
    pub tilde_two_scale: f64,
    pub nu2: [f64; 2],
    pub nu3: [f64; 2],
    pub mu1_scale: f64,
    pub mu2: [f64; 3],
}

/// (1/2π)∫_{B₁} dK, 8ξ⁴√κ/((1 − 2ξ²)(2ξ² + 1)(2ξ² − 2ξ + 1)²).
pub fn dk_infinite_period(c: &DerivedConstants) -> f64 {
    let e = c.xi();
    let e2 = e * e;
    8.0 * e2 * e2 * c.sqrt_kappa / ((1.0 - 2.0 * e2) * (2.0 * e2 + 1.0) * (2.0 * e2 - 2.0 * e + 1.0).powi(2))
}

pub fn basis_coefficients(c: &DerivedConstants) -> (BasisCoefficients, CornerValues) {
    let e = c.xi();
    let e2 = e * e;
    let sk = c.sqrt_kappa;
    let t2 = e * (2.0 * e - 1.0) * (1.0 - e) * (1.0 - 2.0 * e + 2.0 * e2) * (2.0 * e2 + 1.0) / (2.0 * sk);
    let bc = BasisCoefficients {
        tilde_minus_scale: -1.0 / (2.0 * sk),
        tilde_two_scale: t2,
        nu2: [2.0 * e - 1.0, 2.0 * e],
        nu3: [1.0 - 1.0 / e, -1.0 / e],
        mu1_scale: 1.0 / dk_infinite_period(c),
        mu2: [-1.0, 1.0, -2.0 * e2 / (2.0 * e2 + 1.0)],
    };
    (bc, corner_values(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NamedForm {
    OmegaPlus,
    OmegaMinus,
    Omega2,
    DK,
    StarDK,
    Nu2,
    Nu3,
    Mu1,
    Mu2,
}

/// A form written as a·dK + b·⋆dK + (combination of ω's).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KillingSplit {
    pub dk: f64,
    pub star_dk: f64,
    pub rest: FormCombo,
}

impl NamedForm {
    pub const ALL: [NamedForm; 9] = [
        NamedForm::OmegaPlus,
        NamedForm::OmegaMinus,
        NamedForm::Omega2,
        NamedForm::DK,
        NamedForm::StarDK,
        NamedForm::Nu2,
        NamedForm::Nu3,
        NamedForm::Mu1,
        NamedForm::Mu2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedForm::OmegaPlus => "omega_plus",
            NamedForm::OmegaMinus => "omega_minus",
            NamedForm::Omega2 => "omega_2",
            NamedForm::DK => "dK",
            NamedForm::StarDK => "star_dK",
            NamedForm::Nu2 => "nu_2",
            NamedForm::Nu3 => "nu_3",
            NamedForm::Mu1 => "mu_1",
            NamedForm::Mu2 => "mu_2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    /// The form over (ω₊, ω₋, ω₂), using dK = −½(ω₊ + ω₋) and
    /// ⋆dK = ½(ω₋ − ω₊).
    pub fn combo(self, bc: &BasisCoefficients) -> FormCombo {
        let dk = FormCombo { coef: [-0.5, -0.5, 0.0] };
        let tilde = |v: [f64; 2]| FormCombo { coef: [0.0, v[0] * bc.tilde_minus_scale, v[1] * bc.tilde_two_scale] };
        match self {
            NamedForm::OmegaPlus => FormCombo::single(PotentialKind::AlphaPlus),
            NamedForm::OmegaMinus => FormCombo::single(PotentialKind::AlphaMinus),
            NamedForm::Omega2 => FormCombo::single(PotentialKind::Alpha2),
            NamedForm::DK => dk,
            NamedForm::StarDK => FormCombo { coef: [-0.5, 0.5, 0.0] },
            NamedForm::Nu2 => tilde(bc.nu2),
            NamedForm::Nu3 => tilde(bc.nu3),
            NamedForm::Mu1 => dk.scale(bc.mu1_scale),
            NamedForm::Mu2 => tilde(bc.nu2)
                .scale(bc.mu2[0])
                .add(&tilde(bc.nu3).scale(bc.mu2[1]))
                .add(&dk.scale(bc.mu1_scale * bc.mu2[2])),
        }
    }

    /// The same form with its dK and ⋆dK parts kept separate, so they can be
    /// evaluated from the Killing field directly.
    pub fn killing_split(self, bc: &BasisCoefficients) -> KillingSplit {
        let none = |rest| KillingSplit { dk: 0.0, star_dk: 0.0, rest };
        match self {
            NamedForm::DK => KillingSplit { dk: 1.0, star_dk: 0.0, rest: FormCombo::zero() },
            NamedForm::StarDK => KillingSplit { dk: 0.0, star_dk: 1.0, rest: FormCombo::zero() },
            NamedForm::Mu1 => KillingSplit { dk: bc.mu1_scale, star_dk: 0.0, rest: FormCombo::zero() },
            NamedForm::Mu2 => KillingSplit {
                dk: bc.mu1_scale * bc.mu2[2],
                star_dk: 0.0,
                rest: NamedForm::Nu2.combo(bc).scale(bc.mu2[0]).add(&NamedForm::Nu3.combo(bc).scale(bc.mu2[1])),
            },
            other => none(other.combo(bc)),
        }
    }
}
