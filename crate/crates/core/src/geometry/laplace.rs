use super::curvature::christoffel;
use super::Jet2Metric;
use crate::error::Result;

/// Δf = g^ij (∂_i ∂_j f − Γ^k_ij ∂_k f), from the metric jet and the 2-jet
/// of `f` at the same point.
pub fn laplace_beltrami<const N: usize>(
    jet: &Jet2Metric<N>,
    grad: &[f64; N],
    hess: &[[f64; N]; N],
) -> Result<f64> {
    let ginv = jet.inverse()?;
    let gam = christoffel(&ginv, &jet.dg);
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            let mut t = hess[i][j];
            for k in 0..N {
                t -= gam[k][i][j] * grad[k];
            }
            s += ginv[i][j] * t;
        }
    }
    Ok(s)
}

/// g^ij u_i v_j
pub fn dot<const N: usize>(jet: &Jet2Metric<N>, u: &[f64; N], v: &[f64; N]) -> Result<f64> {
    Ok(super::linalg::inner1(&jet.inverse()?, u, v))
}
