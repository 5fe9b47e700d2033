//! Composite Gauss-Legendre quadrature on dyadically graded panels.
//!
//! Panels are evaluated in parallel; panel sums are combined by pairwise
//! summation in panel order, so results do not depend on scheduling.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::pairwise_sum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Nodes per panel.
    pub gauss_order: usize,
    /// Uniform panels before grading toward the ends.
    pub subdivisions: usize,
    /// Distances from a degenerate edge, as fractions of the rectangle gap.
    pub corner_offsets: Vec<f64>,
    /// How many of the offsets enter the extrapolation.
    pub richardson_levels: usize,
    /// Radii of the asymptotic arcs, in units of √κ.
    pub asymptotic_cutoffs: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            gauss_order: 32,
            subdivisions: 4,
            corner_offsets: vec![1e-3, 1e-4, 1e-5],
            richardson_levels: 3,
            asymptotic_cutoffs: vec![1e3, 1e4, 1e5],
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Param(m));
        if self.gauss_order < 8 {
            return bad(format!("gauss_order must be at least 8, got {}", self.gauss_order));
        }
        if self.subdivisions == 0 {
            return bad("subdivisions must be positive".into());
        }
        if self.corner_offsets.is_empty() || self.corner_offsets.iter().any(|e| !(*e > 0.0 && *e < 0.5)) {
            return bad(format!("corner offsets must lie in (0, 1/2), got {:?}", self.corner_offsets));
        }
        if self.richardson_levels == 0 || self.richardson_levels > self.corner_offsets.len() {
            return bad(format!(
                "richardson_levels must be between 1 and {}, got {}",
                self.corner_offsets.len(),
                self.richardson_levels
            ));
        }
        if self.asymptotic_cutoffs.len() < 2 || self.asymptotic_cutoffs.iter().any(|r| !(*r > 1.0)) {
            return bad(format!("need at least two asymptotic cutoffs above 1, got {:?}", self.asymptotic_cutoffs));
        }
        Ok(())
    }

    pub fn rule(&self) -> GaussRule {
        GaussRule::new(self.gauss_order)
    }

    /// The offsets that enter the extrapolation.
    pub fn offsets(&self) -> &[f64] {
        &self.corner_offsets[..self.richardson_levels]
    }
}

/// Gauss-Legendre nodes and weights on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussRule {
    pairs: Vec<(f64, f64)>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let n = NonZeroUsize::new(order.max(1)).expect("order is positive");
        GaussRule { pairs: GaussLegendre::new(n).as_node_weight_pairs().to_vec() }
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        self.pairs.iter().map(move |&(x, w)| (m + h * x, h * w))
    }

    pub fn panel<F: Fn(f64) -> Result<f64>>(&self, a: f64, b: f64, f: &F) -> Result<f64> {
        let v = self.on(a, b).map(|(x, w)| f(x).map(|fx| w * fx)).collect::<Result<Vec<_>>>()?;
        Ok(pairwise_sum(&v))
    }

    /// Σ over panels, evaluated in parallel and reduced in order.
    pub fn integrate<F>(&self, panels: &[(f64, f64)], f: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        let v = panels.par_iter().map(|&(a, b)| self.panel(a, b, &f)).collect::<Result<Vec<_>>>()?;
        let s = pairwise_sum(&v);
        if s.is_finite() {
            Ok(s)
        } else {
            Err(Error::QuadratureFailure(format!("non-finite quadrature sum {s}")))
        }
    }
}

/// `base` uniform panels on [a, b]; the first is split dyadically toward a
/// until a panel is narrower than `fine_lo`, and the last toward b likewise.
pub fn graded_panels(a: f64, b: f64, base: usize, fine_lo: Option<f64>, fine_hi: Option<f64>) -> Vec<(f64, f64)> {
    let base = base.max(1);
    let h = (b - a) / base as f64;
    let mut edges: Vec<f64> = (0..=base).map(|i| a + h * i as f64).collect();
    edges[base] = b;
    let mut out = Vec::new();
    for i in 0..base {
        let (lo, hi) = (edges[i], edges[i + 1]);
        let mut cuts = vec![lo, hi];
        if i == 0 {
            if let Some(f) = fine_lo {
                let mut w = hi - lo;
                while w > f {
                    w *= 0.5;
                    cuts.push(lo + w);
                }
            }
        }
        if i + 1 == base {
            if let Some(f) = fine_hi {
                let mut w = hi - lo;
                while w > f {
                    w *= 0.5;
                    cuts.push(hi - w);
                }
            }
        }
        cuts.sort_by(|p, q| p.total_cmp(q));
        cuts.dedup();
        out.extend(cuts.windows(2).map(|c| (c[0], c[1])));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let r = GaussRule::new(8);
        let v = r.integrate(&[(0.0, 1.0), (1.0, 2.0)], |x| Ok(x.powi(15))).unwrap();
        assert!((v - 2f64.powi(16) / 16.0).abs() < 1e-9);
    }

    #[test]
    fn graded_panels_cover_the_interval() {
        let p = graded_panels(-1.0, 3.0, 3, Some(1e-6), Some(1e-3));
        assert_eq!(p.first().unwrap().0, -1.0);
        assert_eq!(p.last().unwrap().1, 3.0);
        assert!(p.windows(2).all(|w| w[0].1 == w[1].0));
        assert!(p.first().unwrap().1 - p.first().unwrap().0 <= 1e-6);
    }

    #[test]
    fn graded_panels_resolve_a_boundary_layer() {
        let eps = 1e-6;
        let r = GaussRule::new(16);
        let p = graded_panels(0.0, 1.0, 2, Some(eps / 10.0), None);
        let v = r.integrate(&p, |x| Ok(eps / (x * x + eps * eps))).unwrap();
        assert!((v - (1.0 / eps).atan()).abs() < 1e-10);
    }

    #[test]
    fn rejects_low_order() {
        let s = QuadratureSpec { gauss_order: 4, ..Default::default() };
        assert!(s.validate().is_err());
    }
}
