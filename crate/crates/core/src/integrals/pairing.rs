use std::f64::consts::PI;

use serde::Serialize;

use super::energy::{energy_boundary_of, energy_direct_coef, HarmonicPotential};
use super::periods::period_localized;
use super::quadrature::QuadratureSpec;
use crate::chen_teo::DerivedConstants;
use crate::error::{Error, Result};
use crate::geometry::linalg::{inverse, sym2_eigenvalues};
use crate::harmonics::basis::dk_infinite_period;
use crate::harmonics::{basis_coefficients, Duality, NamedForm, PotentialKind};

/// Relative agreement required between the two routes to Q.
pub const INTERSECTION_TOLERANCE: f64 = 1e-8;

/// q_IJ = (1/8π²)∫ ω_I∧⋆ω_J over (ω₋, ω₂).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GramMatrix {
    /// From the boundary formula, off-diagonal by the parallelogram identity.
    pub q: [[f64; 2]; 2],
    /// From direct quadrature, off-diagonal by the parallelogram identity.
    pub direct: [[f64; 2]; 2],
    pub direct_error: [[f64; 2]; 2],
    /// Error of the extrapolated asymptotic terms in `q`.
    pub boundary_error: [[f64; 2]; 2],
}

impl GramMatrix {
    pub fn is_positive_definite(&self) -> bool {
        self.q[0][0] > 0.0 && self.q[0][0] * self.q[1][1] - self.q[0][1] * self.q[1][0] > 0.0
    }

    /// Largest relative difference between the two routes.
    pub fn route_disagreement(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.q[i][j] - self.direct[i][j]).abs() / self.q[i][j].abs());
            }
        }
        m
    }
}

fn asd(coef: [f64; 3]) -> HarmonicPotential {
    HarmonicPotential { duality: Duality::AntiSelfDual, coef }
}

pub fn gram_matrix(c: &DerivedConstants, spec: &QuadratureSpec) -> Result<GramMatrix> {
    let pots = [asd([0.0, 1.0, 0.0]), asd([0.0, 0.0, 1.0]), asd([0.0, 1.0, 1.0])];
    let mut b = [0.0; 3];
    let mut be = [0.0; 3];
    let mut d = [0.0; 3];
    let mut de = [0.0; 3];
    for (i, p) in pots.iter().enumerate() {
        let e = energy_boundary_of(c, p, spec)?;
        b[i] = e.total;
        be[i] = e.asymptotic_error;
        let r = energy_direct_coef(c, &p.coef, spec)?;
        d[i] = r.value;
        de[i] = r.error_estimate;
    }
    let build = |v: [f64; 3]| {
        let off = 0.5 * (v[2] - v[0] - v[1]);
        [[v[0], off], [off, v[1]]]
    };
    let off_err = |v: [f64; 3]| 0.5 * (v[0] + v[1] + v[2]);
    Ok(GramMatrix {
        q: build(b),
        direct: build(d),
        direct_error: [[de[0], off_err(de)], [off_err(de), de[1]]],
        boundary_error: [[be[0], off_err(be)], [off_err(be), be[1]]],
    })
}

/// The Gram matrix from the closed corner formula alone: each potential is
/// shifted to vanish at infinity, which removes the asymptotic flux.
pub fn gram_closed(c: &DerivedConstants) -> [[f64; 2]; 2] {
    let cv = crate::harmonics::corner_values(c);
    let m = cv.minus;
    let t = cv.two;
    let pair = |u: &[f64; 4], v: &[f64; 4]| {
        -0.5 * (0..3).map(|i| u[i] * v[i] / (c.freqs[i].c_r * c.freqs[i].c_l)).sum::<f64>()
    };
    [[pair(&m, &m), pair(&m, &t)], [pair(&t, &m), pair(&t, &t)]]
}

/// The solved forms printed alongside the linear system, evaluated as
/// printed: Q33 = B, Q23 = A − 2ξB, Q22 = 1 + 2A − (1 + 4ξ)B with
/// B = ((3 + 2ξ)A − 1)/(4ξ² + 4ξ + 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrintedForms {
    pub q22: f64,
    pub q23: f64,
    pub q33: f64,
    /// Largest |printed − solved|.
    pub max_discrepancy: f64,
}

/// Q_IJ = ⟨ν_I, ν_J⟩ = (1/4π²)∫ ν_I∧ν_J for I, J ∈ {2, 3} and
/// B_IJ = ⟨μ_I, ν_J⟩.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntersectionMatrix {
    /// (Q22, Q23, Q33) from the constraint system.
    pub linear_system: [f64; 3],
    /// (Q22, Q23, Q33) from the Gram matrix.
    pub gram_oracle: [f64; 3],
    /// Rows μ₁, μ₂; columns ν₂, ν₃.
    pub b: [[f64; 2]; 2],
    pub a: f64,
    pub printed: PrintedForms,
    pub max_route_difference: f64,
}

impl IntersectionMatrix {
    pub fn q(&self) -> [[f64; 2]; 2] {
        let [a, b, d] = self.gram_oracle;
        [[a, b], [b, d]]
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        sym2_eigenvalues(&self.q())
    }

    pub fn is_negative_definite(&self) -> bool {
        self.eigenvalues().iter().all(|&l| l < 0.0)
    }

    pub fn b_rounded(&self) -> [[i64; 2]; 2] {
        self.b.map(|r| r.map(|v| v.round() as i64))
    }

    /// Largest distance of a B entry from an integer.
    pub fn b_integrality(&self) -> f64 {
        self.b.iter().flatten().fold(0.0, |m, v| m.max((v - v.round()).abs()))
    }

    pub fn b_det(&self) -> f64 {
        self.b[0][0] * self.b[1][1] - self.b[0][1] * self.b[1][0]
    }
}

/// A = −8ξ⁴/((2ξ² + 1)(2ξ² − 2ξ + 1)²)
pub fn a_constant(c: &DerivedConstants) -> f64 {
    let e = c.xi();
    let e2 = e * e;
    -8.0 * e2 * e2 / ((2.0 * e2 + 1.0) * (2.0 * e2 - 2.0 * e + 1.0).powi(2))
}

/// Rows ⟨ν₃ − ν₂, ν₃ − ν₂⟩ = −1 and ⟨ν₂ + 2ξ²ν₃, ν_I⟩ = A for I = 2, 3.
pub fn solve_constraint_system(c: &DerivedConstants) -> Result<[f64; 3]> {
    let e2 = c.xi() * c.xi();
    let a = a_constant(c);
    let m = [[1.0, -2.0, 1.0], [1.0, 2.0 * e2, 0.0], [0.0, 1.0, 2.0 * e2]];
    let (inv, _) = inverse(&m).ok_or_else(|| Error::Consistency("constraint system is singular".into()))?;
    let rhs = [-1.0, a, a];
    Ok(std::array::from_fn(|i| (0..3).map(|j| inv[i][j] * rhs[j]).sum()))
}

pub fn printed_forms(c: &DerivedConstants, solved: &[f64; 3]) -> PrintedForms {
    let e = c.xi();
    let a = a_constant(c);
    let b = ((3.0 + 2.0 * e) * a - 1.0) / (4.0 * e * e + 4.0 * e + 1.0);
    let (q22, q23, q33) = (1.0 + 2.0 * a - (1.0 + 4.0 * e) * b, a - 2.0 * e * b, b);
    let max_discrepancy = [q22 - solved[0], q23 - solved[1], q33 - solved[2]]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    PrintedForms { q22, q23, q33, max_discrepancy }
}

/// Intersection data from a Gram matrix over (ω₋, ω₂).
pub fn intersection_from_gram(c: &DerivedConstants, q: &[[f64; 2]; 2]) -> Result<IntersectionMatrix> {
    let (bc, _) = basis_coefficients(c);
    // ν_J over (ω₋, ω₂)
    let cm = [
        [bc.nu2[0] * bc.tilde_minus_scale, bc.nu2[1] * bc.tilde_two_scale],
        [bc.nu3[0] * bc.tilde_minus_scale, bc.nu3[1] * bc.tilde_two_scale],
    ];
    // ⟨ν, ν′⟩ = −(1/4π²)∫ν∧⋆ν′ = −2 q(ν, ν′) for anti-self-dual forms.
    let qn = |i: usize, j: usize| {
        let mut s = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                s += cm[i][a] * q[a][b] * cm[j][b];
            }
        }
        -2.0 * s
    };
    let gram_oracle = [qn(0, 0), qn(0, 1), qn(1, 1)];
    // ⟨μ₁, ν_J⟩ with μ₁ = dK/P₁, dK = −½(ω₊ + ω₋) and ω₊∧ν = 0.
    let p1 = dk_infinite_period(c);
    let b1: [f64; 2] = std::array::from_fn(|j| (0..2).map(|b| q[0][b] * cm[j][b]).sum::<f64>() / p1);
    let qm = [[gram_oracle[0], gram_oracle[1]], [gram_oracle[1], gram_oracle[2]]];
    let b2: [f64; 2] = std::array::from_fn(|j| bc.mu2[0] * qm[0][j] + bc.mu2[1] * qm[1][j] + bc.mu2[2] * b1[j]);
    let linear_system = solve_constraint_system(c)?;
    let scale = gram_oracle.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let max_route_difference = (0..3)
        .map(|i| (linear_system[i] - gram_oracle[i]).abs() / scale)
        .fold(0.0, f64::max);
    Ok(IntersectionMatrix {
        linear_system,
        gram_oracle,
        b: [b1, b2],
        a: a_constant(c),
        printed: printed_forms(c, &linear_system),
        max_route_difference,
    })
}

/// Q and B from the boundary-formula Gram matrix, checked against the
/// constraint system.
pub fn intersection_matrix(c: &DerivedConstants, spec: &QuadratureSpec) -> Result<IntersectionMatrix> {
    let g = gram_matrix(c, spec)?;
    let im = intersection_from_gram(c, &g.q)?;
    if im.max_route_difference > INTERSECTION_TOLERANCE {
        return Err(Error::Consistency(format!(
            "constraint-system Q {:?} and Gram-oracle Q {:?} differ by {:e}",
            im.linear_system, im.gram_oracle, im.max_route_difference
        )));
    }
    Ok(im)
}

/// ∫_M dK∧⋆dK three ways.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StokesCheck {
    /// 4π² (1/2π)∫_{B₁}dK · ((1/2π)∫_{B₂}⋆dK + (1/2π)∫_{B₃}⋆dK)
    pub stokes: f64,
    /// 64π²ξ⁴κ/((1 − 2ξ²)²(2ξ² − 2ξ + 1)²)
    pub closed_form: f64,
    /// 2π²(½‖ω₊‖² + ½‖ω₋‖²), from dK = −½(ω₊ + ω₋)
    pub energy_route: f64,
    pub max_relative_difference: f64,
    /// (1/2π)∫_{B₁}dK + (1/2π)∫_{B₄}dK
    pub infinite_bolt_sum: f64,
}

pub fn stokes_crosscheck(c: &DerivedConstants) -> Result<StokesCheck> {
    let e = c.xi();
    let e2 = e * e;
    let p1 = period_localized(c, NamedForm::DK, 1)?;
    let p4 = period_localized(c, NamedForm::DK, 4)?;
    let s2 = period_localized(c, NamedForm::StarDK, 2)?;
    let s3 = period_localized(c, NamedForm::StarDK, 3)?;
    let stokes = 4.0 * PI * PI * p1 * (s2 + s3);
    let closed_form =
        64.0 * PI * PI * e2 * e2 * c.kappa() / ((1.0 - 2.0 * e2).powi(2) * (2.0 * e2 - 2.0 * e + 1.0).powi(2));
    let ep = closed_energy(c, PotentialKind::AlphaPlus);
    let em = closed_energy(c, PotentialKind::AlphaMinus);
    let energy_route = 2.0 * PI * PI * (ep + em);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let max_relative_difference = rel(stokes, closed_form).max(rel(energy_route, closed_form)).max(rel(stokes, energy_route));
    Ok(StokesCheck { stokes, closed_form, energy_route, max_relative_difference, infinite_bolt_sum: p1 + p4 })
}

/// ½‖ω‖² from the corner formula for α − α(∞).
pub fn closed_energy(c: &DerivedConstants, kind: PotentialKind) -> f64 {
    let v = crate::harmonics::corner_values(c).of(kind);
    let s = kind.duality().sign();
    0.5 * s * (0..3).map(|i| (v[i] - v[3]).powi(2) / (c.freqs[i].c_r * c.freqs[i].c_l)).sum::<f64>()
}
