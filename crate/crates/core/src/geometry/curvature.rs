use super::{Jet2Metric, MetricChart, ChartPoint};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct CurvatureBundle<const N: usize> {
    /// `christoffel[m][n][r] = Γ^m_nr`
    pub christoffel: [[[f64; N]; N]; N],
    /// `riemann[m][n][r][s] = R^m_nrs`
    pub riemann: [[[[f64; N]; N]; N]; N],
    pub ricci: [[f64; N]; N],
    /// √(R_mn R^mn); bounds every orthonormal-frame component of Ricci.
    pub ricci_norm: f64,
    pub scalar: f64,
    pub kretschmann: f64,
}

impl<const N: usize> CurvatureBundle<N> {
    pub fn max_abs_ricci(&self) -> f64 {
        self.ricci.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_riemann(&self) -> f64 {
        self.riemann.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest violation of R^m_[nrs] = 0.
    pub fn bianchi_defect(&self) -> f64 {
        let r = &self.riemann;
        let mut worst: f64 = 0.0;
        for m in 0..N {
            for n in 0..N {
                for a in 0..N {
                    for b in 0..N {
                        worst = worst.max((r[m][n][a][b] + r[m][a][b][n] + r[m][b][n][a]).abs());
                    }
                }
            }
        }
        worst
    }
}

pub fn christoffel<const N: usize>(ginv: &[[f64; N]; N], dg: &[[[f64; N]; N]; N]) -> [[[f64; N]; N]; N] {
    let mut gam = [[[0.0; N]; N]; N];
    for m in 0..N {
        for n in 0..N {
            for r in n..N {
                let mut s = 0.0;
                for a in 0..N {
                    s += ginv[m][a] * (dg[n][a][r] + dg[r][a][n] - dg[a][n][r]);
                }
                gam[m][n][r] = 0.5 * s;
                gam[m][r][n] = 0.5 * s;
            }
        }
    }
    gam
}

/// Curvature of the jet. Christoffels use only `g, dg`; Riemann uses `ddg`.
pub fn curvature_from_jet<const N: usize>(jet: &Jet2Metric<N>) -> Result<CurvatureBundle<N>> {
    let ginv = jet.inverse()?;
    let gam = christoffel(&ginv, &jet.dg);

    // ∂_s g^{ma} = −g^{mb} ∂_s g_bc g^{ca}
    let mut dginv = [[[0.0; N]; N]; N];
    for s in 0..N {
        for m in 0..N {
            for a in 0..N {
                let mut v = 0.0;
                for b in 0..N {
                    for c in 0..N {
                        v -= ginv[m][b] * jet.dg[s][b][c] * ginv[c][a];
                    }
                }
                dginv[s][m][a] = v;
            }
        }
    }

    // dgam[s][m][n][r] = ∂_s Γ^m_nr
    let mut dgam = [[[[0.0; N]; N]; N]; N];
    for s in 0..N {
        for m in 0..N {
            for n in 0..N {
                for r in n..N {
                    let mut v = 0.0;
                    for a in 0..N {
                        let low = jet.dg[n][a][r] + jet.dg[r][a][n] - jet.dg[a][n][r];
                        let dlow = jet.ddg[s][n][a][r] + jet.ddg[s][r][a][n] - jet.ddg[s][a][n][r];
                        v += dginv[s][m][a] * low + ginv[m][a] * dlow;
                    }
                    dgam[s][m][n][r] = 0.5 * v;
                    dgam[s][m][r][n] = 0.5 * v;
                }
            }
        }
    }

    let mut riemann = [[[[0.0; N]; N]; N]; N];
    for m in 0..N {
        for n in 0..N {
            for r in 0..N {
                for s in 0..N {
                    let mut v = dgam[r][m][n][s] - dgam[s][m][n][r];
                    for l in 0..N {
                        v += gam[m][r][l] * gam[l][n][s] - gam[m][s][l] * gam[l][n][r];
                    }
                    riemann[m][n][r][s] = v;
                }
            }
        }
    }

    let mut ricci = [[0.0; N]; N];
    for n in 0..N {
        for s in 0..N {
            ricci[n][s] = (0..N).map(|m| riemann[m][n][m][s]).sum();
        }
    }
    let mut ric_up = [[0.0; N]; N];
    for m in 0..N {
        for n in 0..N {
            let mut v = 0.0;
            for a in 0..N {
                for b in 0..N {
                    v += ginv[m][a] * ginv[n][b] * ricci[a][b];
                }
            }
            ric_up[m][n] = v;
        }
    }
    let mut rr = 0.0;
    for m in 0..N {
        for n in 0..N {
            rr += ricci[m][n] * ric_up[m][n];
        }
    }
    let ricci_norm = rr.abs().sqrt();
    let mut scalar = 0.0;
    for n in 0..N {
        for s in 0..N {
            scalar += ginv[n][s] * ricci[n][s];
        }
    }

    // R_mnrs and R^m_n^rs share the first pair index placement, so
    // K = R_mnrs R^mnrs = Σ R^m_nrs · (g_ma g^nb g^rc g^sd R^a_bcd).
    let mut low = [[[[0.0; N]; N]; N]; N];
    for m in 0..N {
        for n in 0..N {
            for r in 0..N {
                for s in 0..N {
                    low[m][n][r][s] = (0..N).map(|a| jet.g[m][a] * riemann[a][n][r][s]).sum();
                }
            }
        }
    }
    let mut up = low;
    for axis in 0..4 {
        let src = up;
        for m in 0..N {
            for n in 0..N {
                for r in 0..N {
                    for s in 0..N {
                        let mut v = 0.0;
                        for a in 0..N {
                            v += match axis {
                                0 => ginv[m][a] * src[a][n][r][s],
                                1 => ginv[n][a] * src[m][a][r][s],
                                2 => ginv[r][a] * src[m][n][a][s],
                                _ => ginv[s][a] * src[m][n][r][a],
                            };
                        }
                        up[m][n][r][s] = v;
                    }
                }
            }
        }
    }
    let mut kretschmann = 0.0;
    for m in 0..N {
        for n in 0..N {
            for r in 0..N {
                for s in 0..N {
                    kretschmann += low[m][n][r][s] * up[m][n][r][s];
                }
            }
        }
    }

    Ok(CurvatureBundle { christoffel: gam, riemann, ricci, ricci_norm, scalar, kretschmann })
}

pub fn curvature<C: MetricChart<N>, const N: usize>(chart: &C, p: &ChartPoint<N>) -> Result<CurvatureBundle<N>> {
    curvature_from_jet(&chart.jet(p)?)
}
