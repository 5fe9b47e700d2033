//! Python bindings: closed-form constants, periods, energies, the
//! intersection form and the classical partition function.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::instanton::chen_teo::{ChenTeoParams, DerivedConstants};
use ::instanton::harmonics::potentials::PotentialKind;
use ::instanton::integrals::pairing::{closed_energy, gram_closed, intersection_from_gram};
use ::instanton::integrals::periods::closed_form_periods;
use ::instanton::integrals::{partition_classical, IntersectionMatrix};
use ::instanton::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Param(_) | Error::Domain(_) => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn derive(xi: f64, kappa: f64) -> PyResult<DerivedConstants> {
    ChenTeoParams::new(xi, kappa).and_then(|p| p.derive()).map_err(py_err)
}

fn intersection(xi: f64) -> PyResult<IntersectionMatrix> {
    let c = derive(xi, 1.0)?;
    intersection_from_gram(&c, &gram_closed(&c)).map_err(py_err)
}

/// Roots, nuts, rod data and nut constants at (xi, kappa).
#[pyfunction]
#[pyo3(signature = (xi, kappa = 1.0))]
fn constants(py: Python<'_>, xi: f64, kappa: f64) -> PyResult<Bound<'_, PyDict>> {
    let c = derive(xi, kappa)?;
    let d = PyDict::new_bound(py);
    d.set_item("nu", c.nu)?;
    d.set_item("x", c.x.to_vec())?;
    d.set_item("z", c.z.to_vec())?;
    d.set_item("k", c.k[..3].to_vec())?;
    d.set_item("b", c.b[..3].to_vec())?;
    d.set_item("rod_vectors", c.rod_vectors[..3].to_vec())?;
    d.set_item("n", c.n.to_vec())?;
    d.set_item("f", c.f.to_vec())?;
    Ok(d)
}

/// Periods over the bolts B2, B3: rows omega_minus, omega_2.
#[pyfunction]
#[pyo3(signature = (xi, kappa = 1.0))]
fn periods(xi: f64, kappa: f64) -> PyResult<[[f64; 2]; 2]> {
    Ok(closed_form_periods(&derive(xi, kappa)?))
}

/// Half squared L² norms of omega_plus, omega_minus and omega_2.
#[pyfunction]
#[pyo3(signature = (xi, kappa = 1.0))]
fn energies(xi: f64, kappa: f64) -> PyResult<[f64; 3]> {
    let c = derive(xi, kappa)?;
    Ok(PotentialKind::ALL.map(|k| closed_energy(&c, k)))
}

/// The intersection form Q on (nu_2, nu_3).
#[pyfunction]
fn intersection_form(xi: f64) -> PyResult<[[f64; 2]; 2]> {
    Ok(intersection(xi)?.q())
}

/// The pairing B between (mu_1, mu_2) and (nu_2, nu_3).
#[pyfunction]
fn pairing(xi: f64) -> PyResult<[[f64; 2]; 2]> {
    Ok(intersection(xi)?.b)
}

/// Z(tau) summed until the certified tail is below `tol`; returns
/// (value, truncation, tail_bound).
#[pyfunction]
#[pyo3(signature = (xi, tau, tol = 1e-12))]
fn partition(xi: f64, tau: Complex64, tol: f64) -> PyResult<(Complex64, usize, f64)> {
    let q = intersection(xi)?.q();
    let r = partition_classical(&q, tau, tol).map_err(py_err)?;
    Ok((r.value, r.truncation, r.tail_bound))
}

#[pymodule]
#[pyo3(name = "instanton")]
fn py_instanton(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(periods, m)?)?;
    m.add_function(wrap_pyfunction!(energies, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_form, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    Ok(())
}
