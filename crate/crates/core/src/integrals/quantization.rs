use serde::Serialize;

use super::periods::period_localized_combo;
use crate::chen_teo::DerivedConstants;
use crate::error::Result;
use crate::geometry::{ChartPoint, TwoFormValue};
use crate::harmonics::{basis_coefficients, combo_eval, FormCombo, NamedForm};

/// Periods are integral when within this distance of an integer.
pub const QUANTIZATION_TOLERANCE: f64 = 1e-9;

/// F_A = m₂ν₂ + m₃ν₃ as a combination of (ω₊, ω₋, ω₂).
pub fn instanton_combo(c: &DerivedConstants, m2: i64, m3: i64) -> FormCombo {
    let (bc, _) = basis_coefficients(c);
    NamedForm::Nu2.combo(&bc).scale(m2 as f64).add(&NamedForm::Nu3.combo(&bc).scale(m3 as f64))
}

pub fn instanton_curvature(c: &DerivedConstants, m2: i64, m3: i64, pt: &ChartPoint<4>) -> Result<TwoFormValue<4>> {
    combo_eval(c, &instanton_combo(c, m2, m3), pt)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quantization {
    /// (1/2π)∫ over B₂ and B₃.
    pub periods: [f64; 2],
    pub quantized: bool,
}

pub fn quantization_check(c: &DerivedConstants, form: &FormCombo) -> Result<Quantization> {
    let periods = [period_localized_combo(c, form, 2)?, period_localized_combo(c, form, 3)?];
    let quantized = periods.iter().all(|p| (p - p.round()).abs() < QUANTIZATION_TOLERANCE);
    Ok(Quantization { periods, quantized })
}
