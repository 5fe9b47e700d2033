use std::f64::consts::PI;

use instanton::chen_teo::fields::poly;
use instanton::chen_teo::weyl::{rho_z_to_xy, xy_to_rho_z};
use instanton::chen_teo::{
    chart_point, cp2_map, interior_samples, reduced_fields, reduced_residuals, rod_structure, weyl_transform,
    ChenTeoChart, ChenTeoParams, DerivedConstants, WeylDirection,
};
use instanton::geometry::MetricChart;
use instanton::Error;

fn constants(xi: f64, kappa: f64) -> DerivedConstants {
    ChenTeoParams::new(xi, kappa).unwrap().derive().unwrap()
}

#[test]
fn constants_at_three_fifths() {
    let c = constants(0.6, 1.0);
    let close = |a: f64, b: f64| (a - b).abs() < 1e-14;
    assert!(close(c.x[0], -0.3456) && close(c.x[1], -0.312) && close(c.x[2], -0.2), "{:?}", c.x);
    assert!(close(c.nu, -0.72));
    assert!(close(c.a[2], 0.8576) && close(c.a[1], 0.2393472) && close(c.a[0], 0.02156544));
    assert_eq!((c.a[3], c.a[4]), (1.0, 0.0));
}

#[test]
fn roots_are_roots_of_the_cubic() {
    for xi in [0.51, 0.55, 0.6, 0.65, 0.7] {
        let c = constants(xi, 1.0);
        for &r in &c.x {
            let p = c.a[0] + r * (c.a[1] + r * (c.a[2] + r * c.a[3]));
            assert!(p.abs() < 1e-12, "P({r}) = {p:e} at xi = {xi}");
            assert!(poly(&c, r) == 0.0);
        }
        assert!(c.x[0] < c.x[1] && c.x[1] < c.x[2]);
    }
}

#[test]
fn parameter_validation() {
    for (xi, kappa) in [(0.4, 1.0), (0.5, 1.0), (0.71, 1.0), (f64::NAN, 1.0), (0.6, 0.0), (0.6, -1.0)] {
        assert!(matches!(ChenTeoParams::new(xi, kappa), Err(Error::Param(_))), "({xi}, {kappa})");
    }
}

#[test]
fn factored_b_differences_match_the_constants() {
    for xi in [0.55, 0.6, 0.65] {
        let c = constants(xi, 1.0);
        for j in 0..4 {
            for i in 0..4 {
                let raw = c.b[j] - c.b[i];
                assert!((c.b_difference(j, i) - raw).abs() < 1e-12 * c.b[j].abs().max(c.b[i].abs()));
            }
        }
    }
}

#[test]
fn lambda_is_the_norm_of_the_time_direction() {
    let c = constants(0.63, 1.7);
    let chart = ChenTeoChart::new(c.clone());
    for (x, y) in interior_samples(&c, 100, 5, 0.01) {
        let g = chart.metric_value(&chart_point(x, y)).unwrap();
        let f = reduced_fields(&c, x, y).unwrap();
        assert!((g[0][0] - f.lambda).abs() < 1e-12 * f.lambda.abs());
        assert!((g[0][3] / g[0][0] - f.omega_phi).abs() < 1e-12 * f.omega_phi.abs().max(1.0));
    }
}

#[test]
fn adapted_chart_has_the_same_lambda() {
    let c = constants(0.7, 1.0);
    for (x, y) in interior_samples(&c, 30, 0, 0.01) {
        let g = ChenTeoChart::adapted(c.clone(), x, y).metric_value(&chart_point(x, y)).unwrap();
        let g0 = ChenTeoChart::new(c.clone()).metric_value(&chart_point(x, y)).unwrap();
        assert_eq!(g[0][0], g0[0][0]);
        assert!(g[0][3].abs() < 1e-12 * g0[0][3].abs());
    }
}

#[test]
fn reduced_equations_hold() {
    for xi in [0.55, 0.6, 0.65, 0.7] {
        let c = constants(xi, 1.0);
        for (x, y) in interior_samples(&c, 200, 9, 0.001) {
            let r = reduced_residuals(&c, x, y).unwrap();
            assert!(r.lambda_equation.relative() < 1e-9, "{r:?}");
            assert!(r.conservation.relative() < 1e-9, "{r:?}");
            assert!(r.twist_defect < 1e-8 && r.twist_contraction < 1e-8, "{r:?}");
            assert!(r.rho_laplacian.relative() < 1e-10, "{r:?}");
            assert!(r.weyl_conjugate_defect < 1e-10, "{r:?}");
        }
    }
}

#[test]
fn weyl_map_round_trips() {
    let c = constants(0.58, 0.7);
    let span = c.x[2] - c.x[0];
    for (x, y) in interior_samples(&c, 500, 2, 1e-4) {
        let (rho, z) = weyl_transform(&c, WeylDirection::XyToRhoZ, (x, y)).unwrap();
        let (x2, y2) = weyl_transform(&c, WeylDirection::RhoZToXy, (rho, z)).unwrap();
        assert!((x2 - x).abs() < 1e-12 * span && (y2 - y).abs() < 1e-12 * span);
    }
    assert!(rho_z_to_xy(&c, -1.0, 0.0).is_err());
    assert!(xy_to_rho_z(&c, c.x[2] + 1.0, c.x[0]).is_err());
}

#[test]
fn nuts_sit_at_the_corners() {
    let c = constants(0.6, 1.0);
    let [x1, x2, x3] = c.x;
    for (i, (x, y)) in [(x3, x2), (x3, x1), (x2, x1)].into_iter().enumerate() {
        let (x0, y0) = rho_z_to_xy(&c, 0.0, c.z[i]).unwrap();
        assert!((x0 - x).abs() < 1e-12 && (y0 - y).abs() < 1e-12, "nut {i}: ({x0}, {y0})");
    }
}

#[test]
fn rod_structure_is_smooth() {
    for xi in [0.55, 0.6, 0.65] {
        let c = constants(xi, 1.0);
        let rs = rod_structure(&c).unwrap();
        assert!(rs.conical_defect < 1e-12);
        assert!(rs.rod_vector_rounding < 1e-12);
        assert_eq!(rs.adjacent_determinants.map(i64::abs), [1, 1, 1]);
        assert_eq!(rs.rods.len(), 4);
    }
}

#[test]
fn moment_map_lands_in_the_triangle() {
    let c = constants(0.6, 1.0);
    for (x, y) in interior_samples(&c, 100, 0, 0.0) {
        let p = cp2_map(&c, x, y, 0.3, -1.2).unwrap();
        let n: f64 = p.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-12);
        assert!((p[1].arg() - 0.3).abs() < 1e-12 || p[1].norm() == 0.0);
    }
    let corner = cp2_map(&c, c.x[2], c.x[0], 0.0, PI).unwrap();
    assert!((corner[0].re - 1.0).abs() < 1e-12 && corner[1].norm() < 1e-12 && corner[2].norm() < 1e-12);
    assert!(cp2_map(&c, c.x[2] + 0.1, c.x[0], 0.0, 0.0).is_err());
}

#[test]
fn scaling_kappa_scales_the_metric() {
    let a = constants(0.6, 1.0);
    let b = constants(0.6, 3.0);
    for (x, y) in interior_samples(&a, 20, 0, 0.01) {
        let ga = ChenTeoChart::new(a.clone()).metric_value(&chart_point(x, y)).unwrap();
        let gb = ChenTeoChart::new(b.clone()).metric_value(&chart_point(x, y)).unwrap();
        assert!((gb[1][1] / ga[1][1] - 3.0).abs() < 1e-12);
        assert!((gb[2][2] / ga[2][2] - 3.0).abs() < 1e-12);
        assert!((gb[0][0] - ga[0][0]).abs() < 1e-12 * ga[0][0].abs());
    }
}
