use serde::Serialize;

use super::fields::{rho2, weyl_z};
use super::params::DerivedConstants;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeylDirection {
    XyToRhoZ,
    RhoZToXy,
}

/// Distances R_1, R_2, R_3 from (ρ, z) to the nuts.
pub fn nut_distances(c: &DerivedConstants, rho: f64, z: f64) -> [f64; 3] {
    std::array::from_fn(|i| rho.hypot(z - c.z[i]))
}

/// Residual of the quadratic relation among R_1, R_2, R_3.
pub fn nut_distance_constraint(c: &DerivedConstants, r: [f64; 3]) -> f64 {
    let [z1, z2, z3] = c.z;
    (z1 - z2) * r[2] * r[2] + (z3 - z1) * r[1] * r[1] + (z2 - z3) * r[0] * r[0] + (z1 - z2) * (z3 - z1) * (z2 - z3)
}

pub fn xy_to_rho_z(c: &DerivedConstants, x: f64, y: f64) -> Result<(f64, f64)> {
    c.check_rectangle(x, y)?;
    Ok((rho2(c, x, y).sqrt(), weyl_z(c, x, y)))
}

/// Inverse map, valid on the closed rectangle.
pub fn rho_z_to_xy(c: &DerivedConstants, rho: f64, z: f64) -> Result<(f64, f64)> {
    if !(rho >= 0.0) || !rho.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("need ρ ≥ 0 and finite z, got ({rho}, {z})")));
    }
    let [r1, r2, r3] = nut_distances(c, rho, z);
    let num = c.n[0] * r3 + c.n[1] * r2 + c.n[2] * r1;
    let den = 2.0 * (c.f[0] * r3 + c.f[1] * r2 + c.f[2] * r1);
    let x = (2.0 * num + 1.0) / den;
    let y = (2.0 * num - 1.0) / den;
    let [x1, x2, x3] = c.x;
    let tol = 1e-12 * (x3 - x1);
    if x < x2 - tol || x > x3 + tol || y < x1 - tol || y > x2 + tol {
        return Err(Error::Domain(format!("({rho}, {z}) maps to ({x}, {y}) outside the rectangle")));
    }
    Ok((x, y))
}

pub fn weyl_transform(c: &DerivedConstants, direction: WeylDirection, point: (f64, f64)) -> Result<(f64, f64)> {
    match direction {
        WeylDirection::XyToRhoZ => xy_to_rho_z(c, point.0, point.1),
        WeylDirection::RhoZToXy => rho_z_to_xy(c, point.0, point.1),
    }
}
