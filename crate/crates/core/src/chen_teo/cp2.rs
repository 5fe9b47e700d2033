use num_complex::Complex64;

use super::params::DerivedConstants;
use crate::error::{Error, Result};

/// Rectangle to unit square: x̃ = (x2 − y)/(x2 − x1), ỹ = (x − x2)/(x3 − x2).
pub fn unit_square(c: &DerivedConstants, x: f64, y: f64) -> Result<(f64, f64)> {
    let [x1, x2, x3] = c.x;
    let tol = 1e-12;
    let xt = (x2 - y) / (x2 - x1);
    let yt = (x - x2) / (x3 - x2);
    if !(-tol..=1.0 + tol).contains(&xt) || !(-tol..=1.0 + tol).contains(&yt) {
        return Err(Error::Domain(format!("({x}, {y}) outside the closed rectangle")));
    }
    Ok((xt.clamp(0.0, 1.0), yt.clamp(0.0, 1.0)))
}

/// Unit square to the moment triangle u, v ≥ 0, u + v ≤ 1.
pub fn triangle(xt: f64, yt: f64) -> (f64, f64) {
    let (a, b) = (xt * xt, yt * yt);
    ((1.0 - a) * (1.0 + b) / 2.0, (1.0 + a) * (1.0 - b) / 2.0)
}

/// Homogeneous coordinates [√(1−u−v) : e^{iφ²}√u : e^{iφ³}√v].
pub fn cp2_map(c: &DerivedConstants, x: f64, y: f64, phi2: f64, phi3: f64) -> Result<[Complex64; 3]> {
    let (xt, yt) = unit_square(c, x, y)?;
    let (u, v) = triangle(xt, yt);
    let w = (1.0 - u - v).max(0.0);
    Ok([
        Complex64::new(w.sqrt(), 0.0),
        Complex64::from_polar(u.sqrt(), phi2),
        Complex64::from_polar(v.sqrt(), phi3),
    ])
}
