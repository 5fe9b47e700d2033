use instanton::chen_teo::{chart_point, interior_samples, ChenTeoChart, ChenTeoParams, DerivedConstants};
use instanton::geometry::curvature::curvature_from_jet;
use instanton::geometry::fd::fd_jet;
use instanton::geometry::fixtures::{EuclideanKerr, FlatModel};
use instanton::geometry::killing::lie_derivative_defect;
use instanton::geometry::{curvature, hodge_star, MetricChart, TwoFormValue};
use instanton::numerics::halton2;
use instanton::Error;

fn constants(xi: f64, kappa: f64) -> DerivedConstants {
    ChenTeoParams::new(xi, kappa).unwrap().derive().unwrap()
}

fn kerr_points(k: &EuclideanKerr, n: usize) -> Vec<[f64; 4]> {
    halton2(n, 7)
        .into_iter()
        .map(|[u, v]| [0.0, k.r_plus() * (1.05 + 6.0 * u), 0.1 + 2.9 * v, 0.0])
        .collect()
}

#[test]
fn exact_jet_matches_finite_differences() {
    let c = constants(0.6, 1.0);
    let chart = ChenTeoChart::new(c.clone());
    let (gx, gy) = c.gaps();
    for (x, y) in interior_samples(&c, 20, 3, 0.1) {
        let p = chart_point(x, y);
        let exact = chart.jet(&p).unwrap();
        let fd = fd_jet(&chart, &p, [1.0, gx * 1e-3, gy * 1e-3, 1.0]).unwrap();
        let scale = exact.dg.iter().flatten().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        for r in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let d = (exact.dg[r][a][b] - fd.dg[r][a][b]).abs();
                    assert!(d < 1e-6 * scale, "dg[{r}][{a}][{b}] off by {d:e} at ({x}, {y})");
                }
            }
        }
    }
}

#[test]
fn kerr_jet_matches_finite_differences() {
    let k = EuclideanKerr::new(1.0, 0.3).unwrap();
    for q in kerr_points(&k, 10) {
        let p = k.point(q);
        let exact = k.jet(&p).unwrap();
        let fd = fd_jet(&k, &p, [1.0, 1e-3, 1e-3, 1.0]).unwrap();
        let scale = exact.ddg.iter().flatten().flatten().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
        for s in 0..4 {
            for r in 0..4 {
                for a in 0..4 {
                    for b in 0..4 {
                        assert!((exact.ddg[s][r][a][b] - fd.ddg[s][r][a][b]).abs() < 1e-6 * scale);
                    }
                }
            }
        }
    }
}

#[test]
fn determinant_has_closed_form() {
    let c = constants(0.6, 1.3);
    let chart = ChenTeoChart::new(c.clone());
    for (x, y) in interior_samples(&c, 100, 0, 0.01) {
        let g = chart.jet(&chart_point(x, y)).unwrap();
        let s = instanton::chen_teo::fields::structure(&c, x, y);
        let expected = (c.kappa() * s.h / (x - y).powi(5)).powi(2);
        assert!((g.det() - expected).abs() < 1e-12 * expected, "det {} vs {expected}", g.det());
    }
}

#[test]
fn star_squares_to_one_on_two_forms() {
    let c = constants(0.65, 1.0);
    let chart = ChenTeoChart::new(c.clone());
    let basis: Vec<TwoFormValue<4>> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .into_iter()
        .map(|(a, b)| {
            let mut m = [[0.0; 4]; 4];
            m[a][b] = 1.0;
            TwoFormValue::from_upper(m)
        })
        .collect();
    for (x, y) in interior_samples(&c, 25, 1, 0.05) {
        let jet = chart.jet(&chart_point(x, y)).unwrap();
        for w in &basis {
            let ss = hodge_star(&jet, &hodge_star(&jet, w).unwrap()).unwrap();
            let scale = hodge_star(&jet, w).unwrap().max_abs().max(1.0);
            assert!(ss.sub(w).max_abs() < 1e-12 * scale * scale, "{:e}", ss.sub(w).max_abs());
        }
    }
}

#[test]
fn bianchi_identity_holds() {
    let k = EuclideanKerr::new(2.0, 0.5).unwrap();
    for q in kerr_points(&k, 20) {
        let cb = curvature(&k, &k.point(q)).unwrap();
        let scale = cb.max_abs_riemann().max(1e-300);
        assert!(cb.bianchi_defect() < 1e-12 * scale);
    }
    let c = constants(0.6, 1.0);
    for (x, y) in interior_samples(&c, 20, 2, 0.05) {
        let jet = ChenTeoChart::adapted(c.clone(), x, y).jet(&chart_point(x, y)).unwrap();
        let cb = curvature_from_jet(&jet).unwrap();
        assert!(cb.bianchi_defect() < 1e-10 * cb.max_abs_riemann());
    }
}

#[test]
fn cyclic_coordinates_are_killing() {
    let c = constants(0.55, 2.0);
    let chart = ChenTeoChart::new(c.clone());
    for (x, y) in interior_samples(&c, 30, 4, 0.02) {
        let jet = chart.jet(&chart_point(x, y)).unwrap();
        assert_eq!(lie_derivative_defect(&jet, 0), 0.0);
        assert_eq!(lie_derivative_defect(&jet, 3), 0.0);
        assert!(lie_derivative_defect(&jet, 1) > 1e-3);
    }
}

#[test]
fn flat_model_is_flat() {
    for [u, v] in halton2(50, 0) {
        let cb = curvature(&FlatModel, &FlatModel.point([0.0, 0.1 + 20.0 * u, 0.05 + 3.0 * v, 0.0])).unwrap();
        assert!(cb.max_abs_riemann() < 1e-12);
        assert!(cb.kretschmann.abs() < 1e-20);
    }
}

#[test]
fn kerr_is_ricci_flat_but_curved() {
    for (m, a) in [(1.0, 0.0), (1.0, 0.3), (2.0, 0.5)] {
        let k = EuclideanKerr::new(m, a).unwrap();
        for q in kerr_points(&k, 30) {
            let cb = curvature(&k, &k.point(q)).unwrap();
            assert!(cb.max_abs_ricci() < 1e-8 * (1.0 + cb.kretschmann.abs().sqrt()));
            assert!(cb.kretschmann > 0.0);
        }
    }
}

#[test]
fn schwarzschild_kretschmann() {
    let k = EuclideanKerr::new(1.5, 0.0).unwrap();
    for r in [3.5, 5.0, 12.0] {
        let cb = curvature(&k, &k.point([0.0, r, 1.0, 0.0])).unwrap();
        let expected = 48.0 * 1.5f64.powi(2) / r.powi(6);
        assert!((cb.kretschmann - expected).abs() < 1e-10 * expected);
    }
}

#[test]
fn rejects_points_off_the_chart() {
    let k = EuclideanKerr::new(1.0, 0.3).unwrap();
    assert!(matches!(k.jet(&k.point([0.0, 0.5 * k.r_plus(), 1.0, 0.0])), Err(Error::Domain(_))));
    assert!(matches!(FlatModel.jet(&FlatModel.point([0.0, 1.0, 0.0, 0.0])), Err(Error::Domain(_))));
    assert!(matches!(FlatModel.jet(&k.point([0.0, 3.0, 1.0, 0.0])), Err(Error::Domain(_))));
    assert!(EuclideanKerr::new(-1.0, 0.0).is_err());
    let c = constants(0.6, 1.0);
    let chart = ChenTeoChart::new(c.clone());
    assert!(chart.jet(&chart_point(c.x[2] + 0.01, c.x[0] + 0.001)).is_err());
}
