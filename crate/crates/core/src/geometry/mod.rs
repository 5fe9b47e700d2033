//! Chart-based tensor calculus on 2-, 3- and 4-dimensional Riemannian charts.
//!
//! Index conventions: `dg[r][m][n] = ∂_r g_mn`, `ddg[s][r][m][n] = ∂_s ∂_r g_mn`,
//! Christoffel `gamma[m][n][r] = Γ^m_nr`, and
//! `R^m_nrs = ∂_r Γ^m_ns − ∂_s Γ^m_nr + Γ^m_rl Γ^l_ns − Γ^m_sl Γ^l_nr`.

pub mod curvature;
pub mod fd;
pub mod fixtures;
pub mod hodge;
pub mod killing;
pub mod laplace;
pub mod linalg;

use serde::Serialize;

use crate::dual::{seed2, Dual, Jet2, Real};
use crate::error::{Error, Result};

pub use curvature::{curvature, CurvatureBundle};
pub use hodge::{hodge_star, hodge_star_generic};
pub use killing::{killing_forms, KillingForms};
pub use laplace::laplace_beltrami;

/// Distance from chart boundaries below which evaluation is refused.
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChartId {
    /// (τ, x, y, φ) on the Chen-Teo rectangle.
    ChenTeo,
    /// (x, y, φ), the orbit space of ∂_τ.
    Orbit,
    /// (x, y), the orbit space of the torus.
    OrbitPlane,
    /// (τ, r, θ, φ) near the asymptotic end.
    Asymptotic,
    /// (ρ, z).
    Weyl,
    /// (τ, r, θ, φ) on flat ℝ × ℝ³.
    FlatModel,
    /// (τ, r, θ, φ) Boyer-Lindquist type coordinates.
    EuclideanKerr,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint<const N: usize> {
    pub coords: [f64; N],
    pub chart: ChartId,
}

impl<const N: usize> ChartPoint<N> {
    pub fn new(chart: ChartId, coords: [f64; N]) -> Self {
        ChartPoint { coords, chart }
    }
}

/// Metric components with exact first and second coordinate derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2Metric<const N: usize> {
    pub g: [[f64; N]; N],
    pub dg: [[[f64; N]; N]; N],
    pub ddg: [[[[f64; N]; N]; N]; N],
    pub orientation_sign: f64,
}

/// Maximum condition number of D^{-1/2} g D^{-1/2}, D = diag g, accepted
/// before reporting a singular metric. The diagonal scaling makes the test
/// blind to how the coordinates are normalized.
pub const MAX_CONDITION: f64 = 1e13;

impl<const N: usize> Jet2Metric<N> {
    pub fn inverse(&self) -> Result<[[f64; N]; N]> {
        linalg::inverse(&self.g)
            .map(|(inv, _)| inv)
            .ok_or_else(|| Error::SingularMetric("metric not invertible".into()))
    }

    pub fn det(&self) -> f64 {
        linalg::det(&self.g)
    }

    /// √det g with the orientation sign folded in.
    pub fn volume_density(&self) -> f64 {
        self.orientation_sign * self.det().abs().sqrt()
    }

    /// Symmetric, positive definite and reasonably conditioned.
    pub fn validate(&self) -> Result<()> {
        for a in 0..N {
            for b in 0..a {
                let s = self.g[a][b].abs().max(self.g[b][a].abs()).max(1.0);
                if (self.g[a][b] - self.g[b][a]).abs() > 1e-12 * s {
                    return Err(Error::SingularMetric(format!("g not symmetric at ({a},{b})")));
                }
            }
        }
        if !linalg::is_positive_definite(&self.g) {
            return Err(Error::SingularMetric("g not positive definite".into()));
        }
        let d: [f64; N] = std::array::from_fn(|i| self.g[i][i].sqrt());
        let scaled: [[f64; N]; N] = std::array::from_fn(|a| std::array::from_fn(|b| self.g[a][b] / (d[a] * d[b])));
        let inv = linalg::inverse(&scaled)
            .map(|(inv, _)| inv)
            .ok_or_else(|| Error::SingularMetric("metric not invertible".into()))?;
        let cond = linalg::frobenius(&scaled) * linalg::frobenius(&inv);
        if !cond.is_finite() || cond > MAX_CONDITION {
            return Err(Error::SingularMetric(format!("condition number {cond:e}")));
        }
        Ok(())
    }
}

/// Antisymmetric rank-2 covariant tensor at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoFormValue<const N: usize> {
    pub components: [[f64; N]; N],
}

impl<const N: usize> TwoFormValue<N> {
    pub fn zero() -> Self {
        TwoFormValue { components: [[0.0; N]; N] }
    }

    /// Antisymmetrizes `m` and zeroes the diagonal.
    pub fn from_matrix(m: [[f64; N]; N]) -> Self {
        let mut c = [[0.0; N]; N];
        for a in 0..N {
            for b in 0..N {
                if a != b {
                    c[a][b] = 0.5 * (m[a][b] - m[b][a]);
                }
            }
        }
        TwoFormValue { components: c }
    }

    /// Builds from the upper triangle; the lower triangle is ignored.
    pub fn from_upper(m: [[f64; N]; N]) -> Self {
        let mut c = [[0.0; N]; N];
        for a in 0..N {
            for b in a + 1..N {
                c[a][b] = m[a][b];
                c[b][a] = -m[a][b];
            }
        }
        TwoFormValue { components: c }
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.components;
        c.iter_mut().flatten().for_each(|v| *v *= s);
        TwoFormValue { components: c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.components;
        for a in 0..N {
            for b in 0..N {
                c[a][b] += o.components[a][b];
            }
        }
        TwoFormValue { components: c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    /// Contraction ω(u, ·).
    pub fn contract(&self, u: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|b| (0..N).map(|a| u[a] * self.components[a][b]).sum())
    }

    /// ω(u, v).
    pub fn eval(&self, u: &[f64; N], v: &[f64; N]) -> f64 {
        let c = self.contract(u);
        (0..N).map(|b| c[b] * v[b]).sum()
    }

    /// Pointwise norm ½ ω_mn ω^mn.
    pub fn norm_sq(&self, ginv: &[[f64; N]; N]) -> f64 {
        let up = linalg::raise2(ginv, &self.components);
        let mut s = 0.0;
        for a in 0..N {
            for b in 0..N {
                s += self.components[a][b] * up[a][b];
            }
        }
        0.5 * s
    }
}

/// A metric given by component functions generic over [`Real`].
pub trait MetricChart<const N: usize>: Sync {
    fn chart_id(&self) -> ChartId;

    /// Sign of √det g relative to the coordinate order.
    fn orientation(&self) -> f64 {
        1.0
    }

    fn check_domain(&self, q: &[f64; N]) -> Result<()>;

    fn components<T: Real>(&self, q: [T; N]) -> [[T; N]; N];

    fn point(&self, coords: [f64; N]) -> ChartPoint<N> {
        ChartPoint::new(self.chart_id(), coords)
    }

    fn check_point(&self, p: &ChartPoint<N>) -> Result<()> {
        if p.chart != self.chart_id() {
            return Err(Error::Domain(format!(
                "point in chart {:?}, expected {:?}",
                p.chart,
                self.chart_id()
            )));
        }
        if p.coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        self.check_domain(&p.coords)
    }

    /// Exact jet from nested dual numbers.
    fn jet(&self, p: &ChartPoint<N>) -> Result<Jet2Metric<N>> {
        self.check_point(p)?;
        let q: [Jet2<N>; N] = seed2(p.coords);
        let m = self.components(q);
        let jet = unpack_metric(&m, self.orientation());
        jet.validate()?;
        Ok(jet)
    }

    /// Metric values and first derivatives only.
    fn jet1(&self, p: &ChartPoint<N>) -> Result<([[f64; N]; N], [[[f64; N]; N]; N])> {
        self.check_point(p)?;
        let q: [Dual<f64, N>; N] = crate::dual::seed1(p.coords);
        let m = self.components(q);
        let g = std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].v));
        let dg = std::array::from_fn(|r| std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].d[r])));
        Ok((g, dg))
    }

    fn metric_value(&self, p: &ChartPoint<N>) -> Result<[[f64; N]; N]> {
        self.check_point(p)?;
        Ok(self.components(p.coords))
    }
}

fn unpack_metric<const N: usize>(m: &[[Jet2<N>; N]; N], orientation_sign: f64) -> Jet2Metric<N> {
    let g = std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].v.v));
    let dg = std::array::from_fn(|r| std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].v.d[r])));
    let ddg = std::array::from_fn(|s| {
        std::array::from_fn(|r| std::array::from_fn(|a| std::array::from_fn(|b| m[a][b].d[s].d[r])))
    });
    Jet2Metric { g, dg, ddg, orientation_sign }
}

/// Sign of a permutation of `0..n`, zero if an index repeats.
pub fn levi_civita(idx: &[usize]) -> f64 {
    let n = idx.len();
    let mut s = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                s = -s;
            }
        }
    }
    s
}
