//! Deterministic summation, polynomial extrapolation and quasi-random points.

use std::ops::Add;

use serde::Serialize;

/// A residual together with the size of the terms that cancel in it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub residual: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual.abs()
        } else {
            self.residual.abs() / self.scale
        }
    }
}

/// Pairwise (cascade) summation in a fixed order, so results do not depend
/// on how the terms were produced.
pub fn pairwise_sum<T: Copy + Add<Output = T> + Default>(v: &[T]) -> T {
    match v.len() {
        0 => T::default(),
        1 => v[0],
        n if n <= 8 => v[1..].iter().fold(v[0], |a, &b| a + b),
        n => {
            let (l, r) = v.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Neville extrapolation of samples `(h_i, f_i)` to h = 0.
///
/// Returns the estimate from all points and the difference to the estimate
/// that drops the coarsest sample, as an error indicator.
pub fn extrapolate_to_zero(h: &[f64], f: &[f64]) -> (f64, f64) {
    assert_eq!(h.len(), f.len());
    assert!(!h.is_empty());
    let full = neville(h, f);
    if h.len() == 1 {
        return (full, f64::INFINITY);
    }
    let partial = neville(&h[1..], &f[1..]);
    (full, (full - partial).abs())
}

fn neville(h: &[f64], f: &[f64]) -> f64 {
    let mut p = f.to_vec();
    let n = h.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (h[i + k] * p[i] - h[i] * p[i + 1]) / (h[i + k] - h[i]);
        }
    }
    p[0]
}

/// Halton points in the open unit square, bases 2 and 3, skipping `skip`
/// leading terms.
pub fn halton2(n: usize, skip: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| [halton::number(2, skip + i + 1), halton::number(3, skip + i + 1)])
        .collect()
}

/// Least-squares slope and intercept of y against x.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neville_is_exact_on_polynomials() {
        let h = [0.1, 0.05, 0.025];
        let f: Vec<f64> = h.iter().map(|x| 3.0 - 2.0 * x + 5.0 * x * x).collect();
        let (v, _) = extrapolate_to_zero(&h, &f);
        assert!((v - 3.0).abs() < 1e-13);
    }

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 500500.0);
    }

    #[test]
    fn halton_points_are_inside_unit_square() {
        for p in halton2(100, 7) {
            assert!(p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0);
        }
    }
}
