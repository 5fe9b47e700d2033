//! Hodge duality in four dimensions.
//!
//! `(⋆ω)_mn = ½ s √|g| ε_mnab ω^ab` and `(⋆β)_m = (1/6) s √|g| ε_mabc β^abc`,
//! with `s` the chart orientation sign and ε the permutation symbol of the
//! coordinate order.

use super::linalg::raise2;
use super::{levi_civita, Jet2Metric, TwoFormValue};
use crate::dual::Real;
use crate::error::Result;

/// ⋆ on 2-forms with a precomputed inverse metric and signed volume density.
pub fn hodge_star_generic<T: Real>(ginv: &[[T; 4]; 4], vol: T, w: &[[T; 4]; 4]) -> [[T; 4]; 4] {
    let up = raise2(ginv, w);
    let mut out = [[T::zero(); 4]; 4];
    for m in 0..4 {
        for n in m + 1..4 {
            let mut s = T::zero();
            for a in 0..4 {
                for b in a + 1..4 {
                    let e = levi_civita(&[m, n, a, b]);
                    if e != 0.0 {
                        s += up[a][b] * e;
                    }
                }
            }
            out[m][n] = s * vol;
            out[n][m] = -(s * vol);
        }
    }
    out
}

pub fn hodge_star(jet: &Jet2Metric<4>, form: &TwoFormValue<4>) -> Result<TwoFormValue<4>> {
    let ginv = jet.inverse()?;
    let c = hodge_star_generic(&ginv, jet.volume_density(), &form.components);
    Ok(TwoFormValue { components: c })
}

/// ⋆ of a 3-form given as a totally antisymmetric array.
pub fn hodge_star3(ginv: &[[f64; 4]; 4], vol: f64, beta: &[[[f64; 4]; 4]; 4]) -> [f64; 4] {
    let mut up = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut s = 0.0;
                for p in 0..4 {
                    for q in 0..4 {
                        for r in 0..4 {
                            s += ginv[a][p] * ginv[b][q] * ginv[c][r] * beta[p][q][r];
                        }
                    }
                }
                up[a][b][c] = s;
            }
        }
    }
    std::array::from_fn(|m| {
        let mut s = 0.0;
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    s += levi_civita(&[m, a, b, c]) * up[a][b][c];
                }
            }
        }
        vol * s
    })
}

/// (u ∧ ω)_abc for a 1-form u and a 2-form ω.
pub fn wedge_1_2(u: &[f64; 4], w: &[[f64; 4]; 4]) -> [[[f64; 4]; 4]; 4] {
    let mut out = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                out[a][b][c] = u[a] * w[b][c] + u[b] * w[c][a] + u[c] * w[a][b];
            }
        }
    }
    out
}

/// (u ∧ v)_ab
pub fn wedge_1_1<T: Real>(u: &[T; 4], v: &[T; 4]) -> [[T; 4]; 4] {
    std::array::from_fn(|a| std::array::from_fn(|b| u[a] * v[b] - u[b] * v[a]))
}

/// ω ∧ η as a multiple of dx⁰∧dx¹∧dx²∧dx³.
pub fn wedge_2_2(w: &[[f64; 4]; 4], e: &[[f64; 4]; 4]) -> f64 {
    let mut s = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let eps = levi_civita(&[a, b, c, d]);
                    if eps != 0.0 {
                        s += eps * w[a][b] * e[c][d];
                    }
                }
            }
        }
    }
    s / 4.0
}
