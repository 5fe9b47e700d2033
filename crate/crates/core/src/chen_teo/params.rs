use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChenTeoParams {
    pub xi: f64,
    pub kappa: f64,
}

impl ChenTeoParams {
    pub fn new(xi: f64, kappa: f64) -> Result<Self> {
        let p = ChenTeoParams { xi, kappa };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.xi.is_finite() || !(self.xi > 0.5) {
            return Err(Error::Param(format!("need 1/2 < xi, got xi = {}", self.xi)));
        }
        if !(self.xi < std::f64::consts::FRAC_1_SQRT_2) {
            return Err(Error::Param(format!("need xi < 1/sqrt(2), got xi = {}", self.xi)));
        }
        if !self.kappa.is_finite() || !(self.kappa > 0.0) {
            return Err(Error::Param(format!("need kappa > 0, got kappa = {}", self.kappa)));
        }
        Ok(())
    }

    pub fn derive(&self) -> Result<DerivedConstants> {
        DerivedConstants::new(*self)
    }
}

/// Frequencies of K = ∂_τ at a nut: K = c_R ℓ_R + c_L ℓ_L in the basis of
/// the Killing fields vanishing on the rods above (R) and below (L) the nut.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CornerFrequencies {
    pub c_r: f64,
    pub c_l: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivedConstants {
    pub params: ChenTeoParams,
    pub sqrt_kappa: f64,
    pub nu: f64,
    /// Coefficients of P(u) = a0 + a1 u + a2 u² + a3 u³ + a4 u⁴.
    pub a: [f64; 5],
    /// Roots x1 < x2 < x3.
    pub x: [f64; 3],
    /// Nuts z_i = x_i / 2 on the Weyl axis.
    pub z: [f64; 3],
    pub k: [f64; 4],
    pub b: [f64; 4],
    /// Rod vectors in the (ℓ₁, ℓ₂) basis.
    pub rod_vectors: [[i64; 2]; 4],
    /// Indexed by nut: `freqs[0]` is at z1.
    pub freqs: [CornerFrequencies; 3],
    pub n: [f64; 3],
    pub f: [f64; 3],
    /// |K|² at infinity, 1/(1 − ν²).
    pub lambda_inf: f64,
}

impl DerivedConstants {
    pub fn new(params: ChenTeoParams) -> Result<Self> {
        params.validate()?;
        let e = params.xi;
        let sk = params.kappa.sqrt();
        let e2 = e * e;
        let e3 = e2 * e;
        let e4 = e2 * e2;
        let q = 1.0 - 2.0 * e + 2.0 * e2;
        let w = 1.0 - 2.0 * e2;

        let nu = -2.0 * e2;
        let x = [-4.0 * e3 * (1.0 - e), -e * q, 1.0 - 2.0 * e];
        let a0 = -4.0 * (1.0 - e) * e4 * (1.0 - 2.0 * e) * q;
        let a1 = -(e - 4.0 * e2 + 10.0 * e3 - 20.0 * e4 + 20.0 * e4 * e - 16.0 * e4 * e2 + 8.0 * e4 * e3);
        let a2 = -1.0 + 3.0 * e - 2.0 * e2 + 6.0 * e3 - 4.0 * e4;

        let k1 = (1.0 - e) * (1.0 - 2.0 * e) * w * w / (2.0 * sk * q);
        let k2 = (1.0 - 2.0 * e) * w * w * q / (8.0 * sk * (1.0 - e) * e2);
        let k3 = (1.0 - e) * w * w * q / (2.0 * sk * (1.0 - 2.0 * e));
        let b1 = 4.0 * e3 * (-1.0 + 4.0 * e * (1.0 - e).powi(2) * (1.0 + 2.0 * e2)) / (1.0 - 2.0 * e * (1.0 - e));
        let b2 = e2 * (1.0 - 2.0 * e * (2.0 - 3.0 * e + 10.0 * e2 - 16.0 * e3 + 8.0 * e4)) / (1.0 - e);
        let b3 = 4.0 * e3 * (1.0 - 3.0 * e + 7.0 * e2 - 12.0 * e3 + 6.0 * e4) / (2.0 * e - 1.0);

        let c3r = -(1.0 - e).powi(2) / (2.0 * sk * e2);
        let c3l = q * q / (8.0 * sk * e4);
        let c2r = (1.0 - 2.0 * e).powi(2) / (8.0 * sk * e4);
        let freqs = [
            CornerFrequencies { c_r: -c3l, c_l: c2r },
            CornerFrequencies { c_r: c2r, c_l: -c3r },
            CornerFrequencies { c_r: c3r, c_l: c3l },
        ];

        let tm = 2.0 * e - 1.0;
        let n = [
            -tm / ((1.0 - e) * w * w * q),
            -q / ((1.0 - e) * tm * w * w),
            -4.0 * (1.0 - e) * e2 / (tm * w * w * q),
        ];
        let f = [
            1.0 / ((1.0 - e) * w * w * q),
            1.0 / (e * (1.0 - e) * tm * w * w),
            1.0 / (e * tm * w * w * q),
        ];

        let dc = DerivedConstants {
            params,
            sqrt_kappa: sk,
            nu,
            a: [a0, a1, a2, 1.0, 0.0],
            x,
            z: [x[0] / 2.0, x[1] / 2.0, x[2] / 2.0],
            k: [k1, k2, k3, k1],
            b: [b1, b2, b3, b1],
            rod_vectors: [[1, 0], [0, 1], [-1, 1], [1, 0]],
            freqs,
            n,
            f,
            lambda_inf: 1.0 / (1.0 - nu * nu),
        };
        dc.check_invariants()?;
        Ok(dc)
    }

    fn check_invariants(&self) -> Result<()> {
        let [x1, x2, x3] = self.x;
        if !(x1 < x2 && x2 < x3) {
            return Err(Error::Param(format!("roots not ordered: {x1} < {x2} < {x3}")));
        }
        if !(x2 < 0.0) {
            return Err(Error::Param(format!("need x2 < 0, got {x2}")));
        }
        if self.f.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::Param(format!("need f_i > 0, got {:?}", self.f)));
        }
        Ok(())
    }

    pub fn xi(&self) -> f64 {
        self.params.xi
    }

    /// b_j − b_i for rod indices 0..4, in factored form. Subtracting the
    /// stored b's loses the (1 − 2ξ²)² factor to cancellation as ξ → 1/√2.
    pub fn b_difference(&self, j: usize, i: usize) -> f64 {
        let e = self.xi();
        let e2 = e * e;
        let w2 = (1.0 - 2.0 * e2).powi(2);
        let q = 1.0 - 2.0 * e + 2.0 * e2;
        let rod = |r: usize| if r == 3 { 0 } else { r };
        let d21 = -e2 * (2.0 * e - 1.0) * w2 / ((1.0 - e) * q);
        let d31 = 4.0 * e2 * e2 * (1.0 - e) * w2 / ((2.0 * e - 1.0) * q);
        let d32 = e2 * w2 * q / ((1.0 - e) * (2.0 * e - 1.0));
        match (rod(j), rod(i)) {
            (1, 0) => d21,
            (0, 1) => -d21,
            (2, 0) => d31,
            (0, 2) => -d31,
            (2, 1) => d32,
            (1, 2) => -d32,
            _ => 0.0,
        }
    }

    pub fn kappa(&self) -> f64 {
        self.params.kappa
    }

    /// P(u) in factored form (u − x1)(u − x2)(u − x3).
    pub fn p(&self, u: f64) -> f64 {
        (u - self.x[0]) * (u - self.x[1]) * (u - self.x[2])
    }

    /// P(u) from the expanded coefficients.
    pub fn p_expanded(&self, u: f64) -> f64 {
        self.a.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    /// ℓ_I = (b_I ∂_τ + ∂_φ)/k_I as (τ, φ) components, I = 1..4.
    pub fn ell(&self, rod: usize) -> [f64; 2] {
        let i = rod - 1;
        [self.b[i] / self.k[i], 1.0 / self.k[i]]
    }

    /// Columns ℓ₁, ℓ₂ in (τ, φ): the linear map (φ¹, φ²) ↦ (τ, φ).
    pub fn angle_map(&self) -> [[f64; 2]; 2] {
        let l1 = self.ell(1);
        let l2 = self.ell(2);
        [[l1[0], l2[0]], [l1[1], l2[1]]]
    }

    /// dτ∧dφ = J dφ¹∧dφ².
    pub fn torus_jacobian(&self) -> f64 {
        let m = self.angle_map();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// The rectangle gaps (x3 − x2, x2 − x1).
    pub fn gaps(&self) -> (f64, f64) {
        (self.x[2] - self.x[1], self.x[1] - self.x[0])
    }
}
