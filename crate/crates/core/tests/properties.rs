use num_complex::Complex64;
use proptest::prelude::*;

use instanton::chen_teo::weyl::{rho_z_to_xy, xy_to_rho_z};
use instanton::chen_teo::{chart_point, ChenTeoParams, DerivedConstants};
use instanton::harmonics::{combo_eval, corner_values, duality_defect, FormCombo, NamedForm, PotentialKind};
use instanton::integrals::pairing::{closed_energy, gram_closed, intersection_from_gram};
use instanton::integrals::quantization::instanton_combo;
use instanton::integrals::{partition_classical, period_localized, quantization_check};

const XI_MAX: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn constants(xi: f64, kappa: f64) -> DerivedConstants {
    ChenTeoParams::new(xi, kappa).unwrap().derive().unwrap()
}

fn xi() -> impl Strategy<Value = f64> {
    0.501..(XI_MAX - 1e-3)
}

fn kappa() -> impl Strategy<Value = f64> {
    0.01..100.0
}

/// A point of the open rectangle from unit-square coordinates.
fn point(c: &DerivedConstants, u: f64, v: f64) -> (f64, f64) {
    let (gx, gy) = c.gaps();
    (c.x[1] + gx * u, c.x[0] + gy * v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energies_scale_with_kappa(xi in xi(), k in kappa()) {
        let one = constants(xi, 1.0);
        let c = constants(xi, k);
        for kind in PotentialKind::ALL {
            let (a, b) = (closed_energy(&c, kind), k * closed_energy(&one, kind));
            // The corner sum cancels as xi -> 1/2; allow for its condition number.
            let v = corner_values(&c).of(kind);
            let t = (0..3).map(|i| (v[i] - v[3]).powi(2) / (c.freqs[i].c_r * c.freqs[i].c_l));
            let cond = t.clone().map(f64::abs).sum::<f64>() / t.sum::<f64>().abs();
            prop_assert!((a - b).abs() < 16.0 * f64::EPSILON * cond * b.abs(), "{kind:?}: cond {cond:e}");
        }
    }

    #[test]
    fn periods_scale_with_root_kappa(xi in xi(), k in kappa()) {
        let one = constants(xi, 1.0);
        let c = constants(xi, k);
        for form in [NamedForm::OmegaMinus, NamedForm::Omega2, NamedForm::DK] {
            for bolt in 1..=4 {
                let (a, b) = (period_localized(&c, form, bolt).unwrap(), k.sqrt() * period_localized(&one, form, bolt).unwrap());
                prop_assert!((a - b).abs() <= 1e-12 * b.abs());
            }
        }
    }

    #[test]
    fn intersection_form_is_negative_definite_and_kappa_free(xi in xi(), k in kappa()) {
        let c = constants(xi, k);
        let m = intersection_from_gram(&c, &gram_closed(&c)).unwrap();
        prop_assert!(m.is_negative_definite());
        prop_assert!(m.max_route_difference < 1e-8);
        let one = constants(xi, 1.0);
        let q1 = intersection_from_gram(&one, &gram_closed(&one)).unwrap().q();
        let q = m.q();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((q[i][j] - q1[i][j]).abs() < 1e-9 * q1[i][j].abs());
            }
        }
    }

    #[test]
    fn integral_combinations_are_quantized(xi in xi(), k in kappa(), m2 in -50i64..50, m3 in -50i64..50) {
        let c = constants(xi, k);
        let q = quantization_check(&c, &instanton_combo(&c, m2, m3)).unwrap();
        prop_assert!(q.quantized);
        prop_assert!((q.periods[0] - m2 as f64).abs() < 1e-9 && (q.periods[1] - m3 as f64).abs() < 1e-9);
    }

    #[test]
    fn forms_are_linear(xi in xi(), u in 0.01..0.99, v in 0.01..0.99, a in -10.0..10.0, b in -10.0..10.0) {
        let c = constants(xi, 1.0);
        let (x, y) = point(&c, u, v);
        let p = chart_point(x, y);
        let minus = FormCombo::single(PotentialKind::AlphaMinus);
        let two = FormCombo::single(PotentialKind::Alpha2);
        let lhs = combo_eval(&c, &minus.scale(a).add(&two.scale(b)), &p).unwrap();
        let rhs = combo_eval(&c, &minus, &p).unwrap().scale(a).add(&combo_eval(&c, &two, &p).unwrap().scale(b));
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * rhs.max_abs().max(1e-300));
    }

    #[test]
    fn anti_self_dual_combinations_stay_anti_self_dual(xi in xi(), u in 0.01..0.99, v in 0.01..0.99, a in -1.0..1.0) {
        let c = constants(xi, 1.0);
        let (x, y) = point(&c, u, v);
        prop_assert!(duality_defect(&c, &[0.0, a, 1.0], -1.0, x, y).unwrap() < 1e-9);
    }

    #[test]
    fn weyl_map_round_trips(xi in xi(), u in 1e-6..(1.0 - 1e-6), v in 1e-6..(1.0 - 1e-6)) {
        let c = constants(xi, 1.0);
        let (x, y) = point(&c, u, v);
        let (rho, z) = xy_to_rho_z(&c, x, y).unwrap();
        let (x2, y2) = rho_z_to_xy(&c, rho, z).unwrap();
        let span = c.x[2] - c.x[0];
        prop_assert!((x2 - x).abs() < 1e-10 * span && (y2 - y).abs() < 1e-10 * span);
    }

    #[test]
    fn partition_function_is_real_on_the_imaginary_axis(xi in xi(), t in 0.05..10.0) {
        let c = constants(xi, 1.0);
        let q = intersection_from_gram(&c, &gram_closed(&c)).unwrap().q();
        let z = partition_classical(&q, Complex64::new(0.0, t), 1e-12).unwrap();
        prop_assert!(z.value.im.abs() < 1e-12 && z.value.re >= 1.0);
    }

    #[test]
    fn partition_function_reflects(xi in xi(), s in -3.0..3.0, t in 0.05..3.0) {
        let c = constants(xi, 1.0);
        let q = intersection_from_gram(&c, &gram_closed(&c)).unwrap().q();
        let a = partition_classical(&q, Complex64::new(s, t), 1e-13).unwrap().value;
        let b = partition_classical(&q, Complex64::new(-s, t), 1e-13).unwrap().value;
        prop_assert!((a - b.conj()).norm() < 1e-11 * a.norm().max(1.0));
    }
}
