use serde::Serialize;

use super::fields::{killing_norm2, structure};
use super::params::DerivedConstants;
use crate::dual::{seed1, Real};
use crate::error::{Error, Result};
use crate::numerics::extrapolate_to_zero;

/// Which side of the (x, y) rectangle a rod is.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Edge {
    /// x is fixed at the given root.
    X(f64),
    /// y is fixed at the given root.
    Y(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rod {
    /// 1..=4
    pub index: usize,
    /// Interval on the z-axis; infinite ends are ±∞.
    pub z_lo: f64,
    pub z_hi: f64,
    pub edge: Edge,
    /// Components in the (ℓ₁, ℓ₂) basis.
    pub vector: [i64; 2],
    pub k: f64,
    pub b: f64,
    /// ℓ_I in the (∂_τ, ∂_φ) basis.
    pub ell: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RodStructure {
    pub rods: Vec<Rod>,
    /// max |ℓ₁ − ℓ₂ − ℓ₃| over components.
    pub conical_defect: f64,
    /// Largest distance of a solved rod-vector component from an integer.
    pub rod_vector_rounding: f64,
    /// det[v_I | v_{I+1}] for I = 1, 2, 3.
    pub adjacent_determinants: [i64; 3],
    pub k1_over_k2: f64,
    pub k1_over_k2_is_integer: bool,
}

pub fn rod_structure(c: &DerivedConstants) -> Result<RodStructure> {
    let [x1, x2, x3] = c.x;
    let [z1, z2, z3] = c.z;
    let edges = [Edge::X(x2), Edge::Y(x1), Edge::X(x3), Edge::Y(x2)];
    let ranges = [(z3, f64::INFINITY), (z2, z3), (z1, z2), (f64::NEG_INFINITY, z1)];

    let l1 = c.ell(1);
    let l2 = c.ell(2);
    let det = l1[0] * l2[1] - l1[1] * l2[0];
    let mut rounding: f64 = 0.0;
    let mut rods = Vec::with_capacity(4);
    for i in 1..=4 {
        let l = c.ell(i);
        // l = v¹ ℓ₁ + v² ℓ₂
        let v1 = (l[0] * l2[1] - l[1] * l2[0]) / det;
        let v2 = (l1[0] * l[1] - l1[1] * l[0]) / det;
        rounding = rounding.max((v1 - v1.round()).abs()).max((v2 - v2.round()).abs());
        let solved = [v1.round() as i64, v2.round() as i64];
        // A rod vector is defined up to sign; the stored one fixes the sign.
        let vector = c.rod_vectors[i - 1];
        if solved != vector && solved != [-vector[0], -vector[1]] {
            return Err(Error::Consistency(format!(
                "rod {i}: solved vector {solved:?} differs from ±{:?}",
                c.rod_vectors[i - 1]
            )));
        }
        rods.push(Rod {
            index: i,
            z_lo: ranges[i - 1].0,
            z_hi: ranges[i - 1].1,
            edge: edges[i - 1],
            vector,
            k: c.k[i - 1],
            b: c.b[i - 1],
            ell: l,
        });
    }
    let l3 = c.ell(3);
    let conical_defect = (0..2).map(|j| (l1[j] - l2[j] - l3[j]).abs() / l1[j].abs()).fold(0.0, f64::max);
    let adjacent_determinants = std::array::from_fn(|i| {
        let v = rods[i].vector;
        let w = rods[i + 1].vector;
        v[0] * w[1] - v[1] * w[0]
    });
    let ratio = c.k[0] / c.k[1];
    Ok(RodStructure {
        rods,
        conical_defect,
        rod_vector_rounding: rounding,
        adjacent_determinants,
        k1_over_k2: ratio,
        k1_over_k2_is_integer: (ratio - ratio.round()).abs() < 1e-9,
    })
}

/// |d|ℓ|²|² / (4|ℓ|²) for ℓ = ℓ_rod at (x, y).
pub fn rod_normalization_at(c: &DerivedConstants, rod: usize, x: f64, y: f64) -> f64 {
    let l = c.ell(rod);
    let [jx, jy] = seed1([x, y]);
    let n = killing_norm2(c, jx, jy, l);
    let s = structure(c, x, y);
    let k = c.kappa();
    let d3 = s.xmy.powi(3);
    let gxx_inv = d3 * s.big_x / (k * s.h);
    let gyy_inv = -d3 * s.big_y / (k * s.h);
    (gxx_inv * n.d[0] * n.d[0] + gyy_inv * n.d[1] * n.d[1]) / (4.0 * n.v.re())
}

/// The limit of the rod normalization on rod `rod`, approached from the
/// midpoint of its edge at the given offsets (fractions of the rectangle
/// gap). Near the edge ρ² is linear in the offset, so this is polynomial
/// extrapolation in ρ².
pub fn rod_normalization_limit(c: &DerivedConstants, rod: usize, offsets: &[f64]) -> Result<(f64, f64)> {
    let [x1, x2, x3] = c.x;
    let (gx, gy) = c.gaps();
    let (xm, ym) = (0.5 * (x2 + x3), 0.5 * (x1 + x2));
    let at = |e: f64| match rod {
        1 => (x2 + e * gx, ym),
        2 => (xm, x1 + e * gy),
        3 => (x3 - e * gx, ym),
        _ => (xm, x2 - e * gy),
    };
    if !(1..=4).contains(&rod) {
        return Err(Error::Domain(format!("no rod {rod}; rods are 1..4")));
    }
    let mut h = Vec::with_capacity(offsets.len());
    let mut v = Vec::with_capacity(offsets.len());
    for &e in offsets {
        let (x, y) = at(e);
        c.check_rectangle(x, y)?;
        h.push(e);
        v.push(rod_normalization_at(c, rod, x, y));
    }
    Ok(extrapolate_to_zero(&h, &v))
}
