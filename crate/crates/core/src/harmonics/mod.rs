//! The L² harmonic 2-forms built from the scalar potentials α₊, α₋, α₂.

pub mod basis;
pub mod gauge;
pub mod omega;
pub mod potentials;

pub use basis::{basis_coefficients, corner_values, BasisCoefficients, CornerValues, FormCombo, NamedForm};
pub use gauge::{gauge_divergence, gauge_field_strength, gauge_potential, GaugePotentialValue};
pub use omega::{combo_eval, duality_defect, energy_density, omega_eval};
pub use potentials::{alpha_eval, alpha_jet, pde_residual, Duality, PdeResidual, PotentialKind};

use crate::chen_teo::metric::{shear_two_form, sheared_components};
use crate::chen_teo::DerivedConstants;
use crate::dual::Dual;
use crate::error::Result;
use crate::geometry::{killing_forms, Jet2Metric, TwoFormValue};

/// A named form at (x, y), with any dK and ⋆dK part taken from the
/// Killing field rather than from the potentials.
pub fn named_form_value(
    c: &DerivedConstants,
    bc: &BasisCoefficients,
    form: NamedForm,
    x: f64,
    y: f64,
) -> Result<TwoFormValue<4>> {
    c.check_rectangle(x, y)?;
    named_form_at(c, bc, form, x, y)
}

/// As [`named_form_value`] without the guard band, for quadrature nodes
/// that approach the rectangle edges.
pub(crate) fn named_form_at(
    c: &DerivedConstants,
    bc: &BasisCoefficients,
    form: NamedForm,
    x: f64,
    y: f64,
) -> Result<TwoFormValue<4>> {
    let split = form.killing_split(bc);
    let mut w = TwoFormValue { components: omega::combo_components(c, &split.rest.coef, x, y) };
    if split.dk != 0.0 || split.star_dk != 0.0 {
        // Computed in the chart sheared at (x, y), where ∂_τ and ∂_φ are
        // orthogonal, then sheared back.
        let omega0 = crate::chen_teo::fields::omega_phi(c, x, y);
        let kf = killing_forms(&first_order_jet(c, x, y, omega0), 0)?;
        let k = kf.dk.scale(split.dk).add(&kf.star_dk.scale(split.star_dk));
        w = w.add(&TwoFormValue { components: shear_two_form(&k.components, -omega0) });
    }
    Ok(w)
}

/// Metric values and first derivatives at (x, y) in the chart sheared by Ω₀; second derivatives are
/// left at zero.
fn first_order_jet(c: &DerivedConstants, x: f64, y: f64, omega0: f64) -> Jet2Metric<4> {
    let m = sheared_components(c, Dual::<f64, 4>::var(x, 1), Dual::<f64, 4>::var(y, 2), omega0);
    Jet2Metric {
        g: std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].v)),
        dg: std::array::from_fn(|r| std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].d[r]))),
        ddg: [[[[0.0; 4]; 4]; 4]; 4],
        orientation_sign: -1.0,
    }
}
