//! Eighth-order central finite differences. Used only to cross-check the
//! exact jets.

use super::{ChartPoint, Jet2Metric, MetricChart};
use crate::error::Result;

const OFFSETS: [f64; 4] = [1.0, 2.0, 3.0, 4.0];
const D1: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// f'(0) from samples at ±k·h.
fn derivative<F: FnMut(f64) -> f64>(mut f: F, h: f64) -> f64 {
    let mut s = 0.0;
    for (k, c) in OFFSETS.iter().zip(D1) {
        s += c * (f(k * h) - f(-k * h));
    }
    s / h
}

/// Jet of `chart` at `p` with per-coordinate steps `h`.
pub fn fd_jet<C: MetricChart<N>, const N: usize>(chart: &C, p: &ChartPoint<N>, h: [f64; N]) -> Result<Jet2Metric<N>> {
    chart.check_point(p)?;
    let at = |q: [f64; N]| chart.components(q);
    let shifted = |base: [f64; N], i: usize, t: f64| {
        let mut q = base;
        q[i] += t;
        q
    };
    let g = at(p.coords);
    let mut dg = [[[0.0; N]; N]; N];
    let mut ddg = [[[[0.0; N]; N]; N]; N];
    for r in 0..N {
        for a in 0..N {
            for b in a..N {
                let d = derivative(|t| at(shifted(p.coords, r, t))[a][b], h[r]);
                dg[r][a][b] = d;
                dg[r][b][a] = d;
            }
        }
    }
    for s in 0..N {
        for r in s..N {
            for a in 0..N {
                for b in a..N {
                    let d = derivative(
                        |t| derivative(|u| at(shifted(shifted(p.coords, s, t), r, u))[a][b], h[r]),
                        h[s],
                    );
                    ddg[s][r][a][b] = d;
                    ddg[s][r][b][a] = d;
                    ddg[r][s][a][b] = d;
                    ddg[r][s][b][a] = d;
                }
            }
        }
    }
    Ok(Jet2Metric { g, dg, ddg, orientation_sign: chart.orientation() })
}
