use super::hodge::{hodge_star3, hodge_star_generic, wedge_1_2};
use super::{Jet2Metric, TwoFormValue};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct KillingForms {
    pub dk: TwoFormValue<4>,
    pub star_dk: TwoFormValue<4>,
    pub omega_plus: TwoFormValue<4>,
    pub omega_minus: TwoFormValue<4>,
    /// ⋆(K ∧ dK)
    pub twist: [f64; 4],
}

/// Forms built from the coordinate Killing field `∂_k`, whose dual 1-form is
/// `K_m = g_mk`.
pub fn killing_forms(jet: &Jet2Metric<4>, k: usize) -> Result<KillingForms> {
    if k >= 4 {
        return Err(Error::Domain(format!("Killing direction {k} out of range")));
    }
    let ginv = jet.inverse()?;
    let vol = jet.volume_density();
    let kf: [f64; 4] = std::array::from_fn(|m| jet.g[m][k]);
    let mut dk = [[0.0; 4]; 4];
    for m in 0..4 {
        for n in 0..4 {
            dk[m][n] = jet.dg[m][n][k] - jet.dg[n][m][k];
        }
    }
    let sdk = hodge_star_generic(&ginv, vol, &dk);
    let mut plus = dk;
    let mut minus = dk;
    for m in 0..4 {
        for n in 0..4 {
            plus[m][n] += sdk[m][n];
            minus[m][n] -= sdk[m][n];
        }
    }
    let twist = hodge_star3(&ginv, vol, &wedge_1_2(&kf, &dk));
    Ok(KillingForms {
        dk: TwoFormValue { components: dk },
        star_dk: TwoFormValue { components: sdk },
        omega_plus: TwoFormValue { components: plus },
        omega_minus: TwoFormValue { components: minus },
        twist,
    })
}

/// Largest |∂_k g_mn| relative to the largest |g_mn|.
pub fn lie_derivative_defect(jet: &Jet2Metric<4>, k: usize) -> f64 {
    let scale = jet.g.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    jet.dg[k].iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())) / scale
}
