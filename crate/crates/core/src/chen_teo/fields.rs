//! Closed-form fields on the (x, y) rectangle, generic over [`Real`].

use serde::Serialize;

use super::params::DerivedConstants;
use crate::dual::{seed2, unpack2, Real};
use crate::error::Result;

/// The structure functions of the metric at (x, y).
#[derive(Clone, Copy, Debug)]
pub struct Structure<T> {
    pub x: T,
    pub y: T,
    pub xmy: T,
    pub big_x: T,
    pub big_y: T,
    pub f: T,
    pub h: T,
    pub g: T,
}

pub fn poly<T: Real>(c: &DerivedConstants, u: T) -> T {
    (u - c.x[0]) * (u - c.x[1]) * (u - c.x[2])
}

pub fn structure<T: Real>(c: &DerivedConstants, x: T, y: T) -> Structure<T> {
    let [a0, a1, _a2, a3, a4] = c.a;
    let nu = c.nu;
    let big_x = poly(c, x);
    let big_y = poly(c, y);
    let f = y * y * big_x - x * x * big_y;
    let xy = x * y;
    let h = (x * nu + y) * ((x * nu - y) * ((xy * -a3) + a1) - (xy * xy * -a4 + a0) * (2.0 * (1.0 - nu)));
    let y3 = y * y * y;
    let x4 = x * x * x * x;
    let gy = y3 * (2.0 * nu * a3) + y3 * y * (2.0 * nu * a4 - a4) + nu * nu * a0;
    let gx = x * (-2.0 * nu * a1) + x4 * (-nu * nu * a4) + (a0 - 2.0 * nu * a0);
    let g = gy * big_x + gx * big_y;
    Structure { x, y, xmy: x - y, big_x, big_y, f, h, g }
}

/// λ = |∂_τ|² = F/((x − y)H)
pub fn lambda<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let s = structure(c, x, y);
    s.f / (s.xmy * s.h)
}

/// Twist potential ζ, with dζ = ⋆(K ∧ dK).
pub fn zeta<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let s = structure(c, x, y);
    let nu = c.nu;
    let w = x * nu + y;
    let m = (x * y * -c.a[3]) + c.a[1];
    -(s.xmy * w * m) / (s.h * (2.0 * (nu - 1.0))) - (x + y) / (w * (2.0 * (nu - 1.0)))
}

/// The dφ coefficient G/F of Ω.
pub fn omega_phi<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let s = structure(c, x, y);
    s.g / s.f
}

/// ρ² = −XY/(x − y)⁴
pub fn rho2<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let s = structure(c, x, y);
    -(s.big_x * s.big_y) / s.xmy.powi(4)
}

/// Harmonic conjugate of ρ on the orbit space,
/// (2(a0 + a2 xy) + (x + y)(a1 + xy))/(2(x − y)²), expanded about x2 so that
/// the O(1) constant terms cancel exactly.
pub fn weyl_z<T: Real>(c: &DerivedConstants, x: T, y: T) -> T {
    let [x1, x2, x3] = c.x;
    let u = x - x2;
    let v = y - x2;
    let p = (x2 - x1) * (x2 - x3);
    let num = u * u * (v + x2) + u * (v * v + v * (2.0 * (x2 - x1 - x3)) + p) + v * v * x2 + v * p;
    num / (x - y).powi(2) / 2.0
}

/// |a ∂_τ + b ∂_φ|² at (x, y).
pub fn killing_norm2<T: Real>(c: &DerivedConstants, x: T, y: T, v: [f64; 2]) -> T {
    let s = structure(c, x, y);
    let lam = s.f / (s.xmy * s.h);
    let om = s.g / s.f;
    let gpp_perp = -(s.h * s.big_x * s.big_y) / (s.xmy.powi(3) * s.f);
    let t = om * v[1] + v[0];
    lam * t * t + gpp_perp * (v[1] * v[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReducedFields {
    pub lambda: f64,
    pub zeta: f64,
    pub omega_phi: f64,
    pub rho: f64,
    pub z: f64,
}

/// Value, gradient in (x, y) and Hessian of a scalar field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarJet2 {
    pub value: f64,
    pub grad: [f64; 2],
    pub hess: [[f64; 2]; 2],
}

impl ScalarJet2 {
    /// Embeds the jet into a chart whose first two coordinates are (x, y) and
    /// whose remaining coordinates are cyclic.
    pub fn embed<const N: usize>(&self, offset: usize) -> ([f64; N], [[f64; N]; N]) {
        let mut g = [0.0; N];
        let mut h = [[0.0; N]; N];
        for i in 0..2 {
            g[offset + i] = self.grad[i];
            for j in 0..2 {
                h[offset + i][offset + j] = self.hess[i][j];
            }
        }
        (g, h)
    }
}

pub fn scalar_jet2<F>(x: f64, y: f64, f: F) -> ScalarJet2
where
    F: Fn(crate::dual::Jet2<2>, crate::dual::Jet2<2>) -> crate::dual::Jet2<2>,
{
    let [jx, jy] = seed2([x, y]);
    let (value, grad, hess) = unpack2(&f(jx, jy));
    ScalarJet2 { value, grad, hess }
}

impl DerivedConstants {
    pub fn check_rectangle(&self, x: f64, y: f64) -> Result<()> {
        super::check_rectangle(self, x, y)
    }
}

pub fn reduced_fields(c: &DerivedConstants, x: f64, y: f64) -> Result<ReducedFields> {
    c.check_rectangle(x, y)?;
    Ok(ReducedFields {
        lambda: lambda(c, x, y),
        zeta: zeta(c, x, y),
        omega_phi: omega_phi(c, x, y),
        rho: rho2(c, x, y).sqrt(),
        z: weyl_z(c, x, y),
    })
}

pub fn lambda_jet(c: &DerivedConstants, x: f64, y: f64) -> Result<ScalarJet2> {
    c.check_rectangle(x, y)?;
    Ok(scalar_jet2(x, y, |a, b| lambda(c, a, b)))
}

pub fn zeta_jet(c: &DerivedConstants, x: f64, y: f64) -> Result<ScalarJet2> {
    c.check_rectangle(x, y)?;
    Ok(scalar_jet2(x, y, |a, b| zeta(c, a, b)))
}
