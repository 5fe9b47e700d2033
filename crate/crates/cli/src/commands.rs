use instanton::chen_teo::rods::rod_normalization_limit;
use instanton::chen_teo::weyl::{rho_z_to_xy, xy_to_rho_z};
use instanton::chen_teo::{interior_samples, reduced_residuals, ricci_sample, rod_structure, DerivedConstants};
use instanton::harmonics::{pde_residual, NamedForm, PotentialKind};
use instanton::integrals::pairing::{closed_energy, gram_closed, intersection_from_gram};
use instanton::integrals::periods::closed_form_periods;
use instanton::integrals::quantization::instanton_combo;
use instanton::integrals::{
    energy_boundary, energy_direct, intersection_matrix, partition_classical, period_localized, period_table,
    quantization_check, stokes_crosscheck, IntersectionMatrix,
};
use instanton::Result;

use crate::config::RunConfig;
use crate::report::{Check, PointReport, Quantity};

pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub seed: u64,
}

const PERIOD_FORMS: [NamedForm; 2] = [NamedForm::OmegaMinus, NamedForm::Omega2];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn periods_into(r: &mut PointReport, c: &DerivedConstants, ctx: &Ctx) -> Result<()> {
    let table = period_table(c, Some(&ctx.cfg.quadrature))?;
    for e in &table.entries {
        let name = format!("{}_B{}", e.form.name(), e.bolt);
        r.push(name.clone(), Quantity::closed(e.localized, "localization"));
        if let Some(d) = &e.direct {
            r.push(format!("{name}_direct"), Quantity::quadrature(d.value, d.error_estimate, "bolt_quadrature"));
        }
    }
    Ok(())
}

fn energies_into(r: &mut PointReport, c: &DerivedConstants, ctx: &Ctx) -> Result<()> {
    for k in PotentialKind::ALL {
        let b = energy_boundary(c, k, &ctx.cfg.quadrature)?;
        let d = energy_direct(c, k, &ctx.cfg.quadrature)?;
        let n = k.name();
        r.push(format!("energy_{n}"), Quantity::closed(b.shifted_corner_term, "boundary_shifted_corner"));
        r.push(
            format!("energy_{n}_boundary"),
            Quantity::quadrature(b.total, b.asymptotic_error, "boundary_corner_plus_asymptotic_flux"),
        );
        r.push(format!("energy_{n}_direct"), Quantity::quadrature(d.value, d.error_estimate, "rectangle_quadrature"));
    }
    Ok(())
}

fn intersection_into(r: &mut PointReport, m: &IntersectionMatrix, provenance_quadrature: bool) {
    let err = m.max_route_difference * m.gram_oracle.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    for (i, name) in ["q22", "q23", "q33"].into_iter().enumerate() {
        r.push(format!("{name}_linear_system"), Quantity::closed(m.linear_system[i], "constraint_system"));
        let oracle = if provenance_quadrature {
            Quantity::quadrature(m.gram_oracle[i], err, "gram_quadrature")
        } else {
            Quantity::closed(m.gram_oracle[i], "gram_closed_form")
        };
        r.push(format!("{name}_gram"), oracle);
    }
    for (i, row) in ["mu1", "mu2"].into_iter().enumerate() {
        for (j, col) in ["nu2", "nu3"].into_iter().enumerate() {
            r.push(format!("b_{row}_{col}"), Quantity::closed(m.b[i][j], "pairing"));
        }
    }
    let ev = m.eigenvalues();
    r.push("q_eigenvalue_min", Quantity::closed(ev[0].min(ev[1]), "symmetric_2x2"));
    r.push("q_eigenvalue_max", Quantity::closed(ev[0].max(ev[1]), "symmetric_2x2"));
    r.push("printed_forms_discrepancy", Quantity::closed(m.printed.max_discrepancy, "printed_solution_vs_solved"));
}

fn partition_into(r: &mut PointReport, q: &[[f64; 2]; 2], ctx: &Ctx) -> Result<()> {
    let tol = ctx.cfg.tolerance("partition_tail");
    for (i, &tau) in ctx.cfg.tau.iter().enumerate() {
        let z = partition_classical(q, tau, tol)?;
        // A truncated lattice sum, with a certified bound on the omitted terms.
        r.push(format!("z{i}_re"), Quantity::quadrature(z.value.re, z.tail_bound, "lattice_sum"));
        r.push(format!("z{i}_im"), Quantity::quadrature(z.value.im, z.tail_bound, "lattice_sum"));
        r.push(format!("z{i}_truncation"), Quantity::closed(z.truncation as f64, "lattice_sum"));
    }
    Ok(())
}

pub fn periods(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let mut r = PointReport::new(c.xi(), c.kappa());
    periods_into(&mut r, c, ctx)?;
    Ok(r)
}

pub fn energies(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let mut r = PointReport::new(c.xi(), c.kappa());
    energies_into(&mut r, c, ctx)?;
    Ok(r)
}

pub fn intersection(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let mut r = PointReport::new(c.xi(), c.kappa());
    let m = intersection_matrix(c, &ctx.cfg.quadrature)?;
    intersection_into(&mut r, &m, true);
    Ok(r)
}

pub fn partition(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let mut r = PointReport::new(c.xi(), c.kappa());
    let q = intersection_from_gram(c, &gram_closed(c))?.q();
    partition_into(&mut r, &q, ctx)?;
    Ok(r)
}

pub fn rods(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let mut r = PointReport::new(c.xi(), c.kappa());
    let rs = rod_structure(c)?;
    let offsets = &ctx.cfg.quadrature.corner_offsets;
    for rod in &rs.rods {
        let i = rod.index;
        r.push(format!("rod{i}_v1"), Quantity::closed(rod.vector[0] as f64, "rod_vector"));
        r.push(format!("rod{i}_v2"), Quantity::closed(rod.vector[1] as f64, "rod_vector"));
        r.push(format!("rod{i}_k"), Quantity::closed(rod.k, "closed_form"));
        r.push(format!("rod{i}_b"), Quantity::closed(rod.b, "closed_form"));
        let (v, e) = rod_normalization_limit(c, i, offsets)?;
        r.push(format!("rod{i}_normalization"), Quantity::quadrature(v, e, "edge_extrapolation"));
    }
    for (i, d) in rs.adjacent_determinants.iter().enumerate() {
        r.push(format!("det_{}{}", i + 1, i + 2), Quantity::closed(*d as f64, "rod_vectors"));
    }
    r.push("conical_defect", Quantity::closed(rs.conical_defect, "l1_minus_l2_minus_l3"));
    r.push("k1_over_k2", Quantity::closed(rs.k1_over_k2, "closed_form"));
    Ok(r)
}

/// Closed-form values for plotting: periods, energies, Q and Z.
pub fn sweep_point(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let mut r = PointReport::new(c.xi(), c.kappa());
    for form in PERIOD_FORMS {
        for bolt in [2, 3] {
            r.push(format!("{}_B{bolt}", form.name()), Quantity::closed(period_localized(c, form, bolt)?, "localization"));
        }
    }
    for k in PotentialKind::ALL {
        r.push(format!("energy_{}", k.name()), Quantity::closed(closed_energy(c, k), "corner_formula"));
    }
    let m = intersection_from_gram(c, &gram_closed(c))?;
    intersection_into(&mut r, &m, false);
    partition_into(&mut r, &m.q(), ctx)?;
    r.checks.push(Check::holds("q_negative_definite", m.is_negative_definite()));
    Ok(r)
}

/// The full invariant suite at one parameter point.
pub fn verify(c: &DerivedConstants, ctx: &Ctx) -> Result<PointReport> {
    let cfg = ctx.cfg;
    let tol = |n: &str| cfg.tolerance(n);
    let mut r = PointReport::new(c.xi(), c.kappa());
    let samples = interior_samples(c, cfg.samples, ctx.seed, 0.001);

    let mut ricci: f64 = 0.0;
    let mut pde: f64 = 0.0;
    let mut twist: f64 = 0.0;
    let mut roundtrip: f64 = 0.0;
    let span = c.x[2] - c.x[0];
    for &(x, y) in &samples {
        let s = ricci_sample(c, x, y)?;
        ricci = ricci.max(s.ricci_norm / (1.0 + s.kretschmann.abs().sqrt()));
        for k in PotentialKind::ALL {
            pde = pde.max(pde_residual(c, k, x, y)?.relative());
        }
        twist = twist.max(reduced_residuals(c, x, y)?.twist_defect);
        let (rho, z) = xy_to_rho_z(c, x, y)?;
        let (x2, y2) = rho_z_to_xy(c, rho, z)?;
        roundtrip = roundtrip.max((x2 - x).abs().max((y2 - y).abs()) / span);
    }
    r.checks.push(Check::below("ricci", ricci, tol("ricci")));
    r.checks.push(Check::below("pde", pde, tol("pde")));
    r.checks.push(Check::below("twist", twist, tol("twist")));
    r.checks.push(Check::below("roundtrip", roundtrip, tol("roundtrip")));

    let rs = rod_structure(c)?;
    let mut rod: f64 = 0.0;
    for i in 1..=4 {
        rod = rod.max((rod_normalization_limit(c, i, &cfg.quadrature.corner_offsets)?.0 - 1.0).abs());
    }
    r.checks.push(Check::below("rod_normalization", rod, tol("rod_normalization")));
    r.checks.push(Check::holds("rod_determinants", rs.adjacent_determinants.iter().all(|d| d.abs() == 1)));

    periods_into(&mut r, c, ctx)?;
    let cf = closed_form_periods(c);
    let mut closed: f64 = 0.0;
    let mut direct: f64 = 0.0;
    let mut direct_ok = true;
    for (i, form) in PERIOD_FORMS.into_iter().enumerate() {
        for (j, bolt) in [2, 3].into_iter().enumerate() {
            let name = format!("{}_B{bolt}", form.name());
            let find = |n: &str| r.quantities.iter().find(|(k, _)| k == n).map(|(_, q)| q.clone()).unwrap();
            let (loc, d) = (find(&name), find(&format!("{name}_direct")));
            closed = closed.max(rel(loc.value, cf[i][j]));
            let diff = (d.value - loc.value).abs();
            direct = direct.max(diff / loc.value.abs());
            direct_ok &= diff <= (tol("period_direct") * loc.value.abs()).max(d.error_estimate);
        }
    }
    r.checks.push(Check::below("period_closed_form", closed, tol("period_closed_form")));
    r.checks.push(Check { name: "period_direct".into(), value: direct, tolerance: tol("period_direct"), passed: direct_ok });

    energies_into(&mut r, c, ctx)?;
    let (mut e_closed, mut e_total, mut e_direct): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for k in PotentialKind::ALL {
        let reference = closed_energy(c, k);
        let get = |suffix: &str| {
            let n = format!("energy_{}{suffix}", k.name());
            r.quantities.iter().find(|(key, _)| *key == n).unwrap().1.value
        };
        e_closed = e_closed.max(rel(get(""), reference));
        e_total = e_total.max(rel(get("_boundary"), reference));
        e_direct = e_direct.max(rel(get("_direct"), reference));
    }
    r.checks.push(Check::below("energy_closed_form", e_closed, tol("energy_closed_form")));
    r.checks.push(Check::below("energy_total", e_total, tol("energy_total")));
    r.checks.push(Check::below("energy_direct", e_direct, tol("energy_direct")));

    let s = stokes_crosscheck(c)?;
    r.push("dk_energy_stokes", Quantity::closed(s.stokes, "localized_periods"));
    r.push("dk_energy_closed_form", Quantity::closed(s.closed_form, "closed_form"));
    r.push("dk_energy_from_omega_pm", Quantity::closed(s.energy_route, "corner_formula"));
    r.checks.push(Check::below("stokes", s.max_relative_difference, tol("stokes")));

    let m = intersection_matrix(c, &cfg.quadrature)?;
    intersection_into(&mut r, &m, true);
    r.checks.push(Check::below("q_routes", m.max_route_difference, tol("q_routes")));
    r.checks.push(Check::holds("q_negative_definite", m.is_negative_definite()));
    r.checks.push(Check::below("b_integrality", m.b_integrality(), tol("b_integrality")));
    r.checks.push(Check::holds("b_unimodular", (m.b_det().abs() - 1.0).abs() < tol("b_integrality")));

    let mut quantized = true;
    for m2 in -2..=2 {
        for m3 in -2..=2 {
            quantized &= quantization_check(c, &instanton_combo(c, m2, m3))?.quantized;
        }
    }
    r.checks.push(Check::holds("instanton_quantization", quantized));

    partition_into(&mut r, &m.q(), ctx)?;
    let tail = (0..cfg.tau.len())
        .map(|i| r.quantities.iter().find(|(k, _)| *k == format!("z{i}_re")).unwrap().1.error_estimate)
        .fold(0.0f64, f64::max);
    r.checks.push(Check { name: "partition_tail".into(), value: tail, tolerance: tol("partition_tail"), passed: tail <= tol("partition_tail") });
    Ok(r)
}
