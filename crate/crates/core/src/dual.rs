//! Forward-mode dual numbers over a generic scalar.
//!
//! `Dual<f64, N>` carries a gradient in `N` directions. Nesting
//! `Dual<Dual<f64, N>, N>` carries exact second derivatives, and one more
//! level gives third derivatives. Everything that evaluates a metric or a
//! scalar field is written against [`Real`] so the same code runs on plain
//! floats and on jets.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + 'static
{
    fn cst(v: f64) -> Self;
    /// Innermost real value.
    fn re(&self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn powi(self, n: i32) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn abs(self) -> Self {
        if self.re() < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn re(&self) -> f64 {
        *self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// `v + Σ d[i] εᵢ` with εᵢεⱼ = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T, const N: usize> {
    pub v: T,
    pub d: [T; N],
}

impl<T: Real, const N: usize> Dual<T, N> {
    pub fn constant(v: T) -> Self {
        Dual { v, d: [T::zero(); N] }
    }

    /// The `i`-th independent variable with value `v`.
    pub fn var(v: T, i: usize) -> Self {
        let mut d = [T::zero(); N];
        d[i] = T::one();
        Dual { v, d }
    }

    #[inline]
    fn chain(self, f: T, df: T) -> Self {
        let mut d = self.d;
        for di in d.iter_mut() {
            *di = *di * df;
        }
        Dual { v: f, d }
    }
}

impl<T: Real, const N: usize> Add for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for i in 0..N {
            self.d[i] += o.d[i];
        }
        self
    }
}

impl<T: Real, const N: usize> Sub for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: Self) -> Self {
        self.v -= o.v;
        for i in 0..N {
            self.d[i] -= o.d[i];
        }
        self
    }
}

impl<T: Real, const N: usize> Mul for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let mut d = [T::zero(); N];
        for i in 0..N {
            d[i] = self.d[i] * o.v + self.v * o.d[i];
        }
        Dual { v: self.v * o.v, d }
    }
}

impl<T: Real, const N: usize> Div for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = o.v.recip();
        let q = self.v * inv;
        let mut d = [T::zero(); N];
        for i in 0..N {
            d[i] = (self.d[i] - q * o.d[i]) * inv;
        }
        Dual { v: q, d }
    }
}

impl<T: Real, const N: usize> Neg for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn neg(mut self) -> Self {
        self.v = -self.v;
        for di in self.d.iter_mut() {
            *di = -*di;
        }
        self
    }
}

impl<T: Real, const N: usize> AddAssign for Dual<T, N> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real, const N: usize> SubAssign for Dual<T, N> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real, const N: usize> MulAssign for Dual<T, N> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: Real, const N: usize> Add<f64> for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn add(mut self, c: f64) -> Self {
        self.v = self.v + c;
        self
    }
}

impl<T: Real, const N: usize> Sub<f64> for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn sub(mut self, c: f64) -> Self {
        self.v = self.v - c;
        self
    }
}

impl<T: Real, const N: usize> Mul<f64> for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn mul(mut self, c: f64) -> Self {
        self.v = self.v * c;
        for di in self.d.iter_mut() {
            *di = *di * c;
        }
        self
    }
}

impl<T: Real, const N: usize> Div<f64> for Dual<T, N> {
    type Output = Self;
    #[inline]
    fn div(self, c: f64) -> Self {
        self * (1.0 / c)
    }
}

impl<T: Real, const N: usize> Real for Dual<T, N> {
    fn cst(v: f64) -> Self {
        Self::constant(T::cst(v))
    }
    fn re(&self) -> f64 {
        self.v.re()
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, (s * 2.0).recip())
    }
    fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.v.ln(), self.v.recip())
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::one(),
            1 => self,
            _ => self.chain(self.v.powi(n), self.v.powi(n - 1) * (n as f64)),
        }
    }
}

/// Second-order jet type in `N` variables.
pub type Jet2<const N: usize> = Dual<Dual<f64, N>, N>;

/// Seed the point `p` as independent variables of a second-order jet.
pub fn seed2<const N: usize>(p: [f64; N]) -> [Jet2<N>; N] {
    std::array::from_fn(|i| Dual {
        v: Dual::var(p[i], i),
        d: std::array::from_fn(|j| Dual::cst(if i == j { 1.0 } else { 0.0 })),
    })
}

/// Value, gradient and Hessian of a scalar carried by a second-order jet.
pub fn unpack2<const N: usize>(j: &Jet2<N>) -> (f64, [f64; N], [[f64; N]; N]) {
    let grad = std::array::from_fn(|i| j.v.d[i]);
    let hess = std::array::from_fn(|a| std::array::from_fn(|b| j.d[a].d[b]));
    (j.v.v, grad, hess)
}

/// Seed the point `p` as independent variables of a first-order jet.
pub fn seed1<const N: usize>(p: [f64; N]) -> [Dual<f64, N>; N] {
    std::array::from_fn(|i| Dual::var(p[i], i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f<T: Real>(x: T, y: T) -> T {
        (x * y).sin() + x.powi(3) / (y + 2.0) + (x * x + 1.0).sqrt().ln()
    }

    #[test]
    fn second_derivatives_match_hand_computation() {
        let [x, y] = seed2([0.7, -0.4]);
        let (v, g, h) = unpack2(&f(x, y));
        let (x0, y0) = (0.7f64, -0.4f64);
        assert!((v - f(x0, y0)).abs() < 1e-15);
        let gx = y0 * (x0 * y0).cos() + 3.0 * x0 * x0 / (y0 + 2.0) + x0 / (x0 * x0 + 1.0);
        let gy = x0 * (x0 * y0).cos() - x0.powi(3) / (y0 + 2.0).powi(2);
        assert!((g[0] - gx).abs() < 1e-14 && (g[1] - gy).abs() < 1e-14);
        let hxy = (x0 * y0).cos() - x0 * y0 * (x0 * y0).sin() - 3.0 * x0 * x0 / (y0 + 2.0).powi(2);
        assert!((h[0][1] - hxy).abs() < 1e-14);
        assert!((h[1][0] - hxy).abs() < 1e-14);
    }

    #[test]
    fn powi_zero_and_negative() {
        let x = Dual::<f64, 1>::var(2.0, 0);
        assert_eq!(x.powi(0).v, 1.0);
        let r = x.powi(-2);
        assert!((r.d[0] + 2.0 / 8.0).abs() < 1e-15);
    }
}
