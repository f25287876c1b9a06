//! Python bindings: codes go in and out as text, polynomials as their text form.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vknot::cobordism::{slice_obstructions, MovieFile};
use vknot::constructions::{connected_sum as csum, kt_tangle, livingston_satellite, tangle_splice};
use vknot::invariants::{ac_alexander, generalized_alexander, link_alexander};
use vknot::kernel::{KnotCode, LinkCode};
use vknot::shell::Catalog;
use vknot::{invariants, surface};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Resolves `@name` through the builtin catalog (plus `VK_CATALOG`), else parses.
fn link(code: &str) -> PyResult<LinkCode> {
    Catalog::from_env().map_err(err)?.resolve(code).map_err(err)
}

fn knot(code: &str) -> PyResult<KnotCode> {
    link(code)?.to_knot().map_err(err)
}

/// Canonical text of a code.
#[pyfunction]
fn parse(code: &str) -> PyResult<String> {
    Ok(link(code)?.to_string())
}

#[pyfunction]
fn genus(code: &str) -> PyResult<usize> {
    Ok(surface::carter_genus(&link(code)?))
}

#[pyfunction]
fn is_almost_classical(code: &str) -> PyResult<bool> {
    Ok(surface::is_almost_classical(&knot(code)?))
}

#[pyfunction]
fn odd_writhe(code: &str) -> PyResult<i32> {
    Ok(invariants::odd_writhe(&knot(code)?))
}

#[pyfunction]
fn writhe_polynomial(code: &str) -> PyResult<String> {
    Ok(invariants::writhe_polynomial(&knot(code)?).to_string())
}

/// Alexander polynomial; links are accepted.
#[pyfunction]
fn alexander(code: &str) -> PyResult<String> {
    let l = link(code)?;
    Ok(match l.to_knot() {
        Ok(k) => ac_alexander(&k).poly.to_string(),
        Err(_) => link_alexander(&l).to_string(),
    })
}

#[pyfunction]
fn galexander(code: &str) -> PyResult<String> {
    Ok(generalized_alexander(&knot(code)?).to_string())
}

#[pyfunction]
#[pyo3(signature = (a, b, at_a = 0, at_b = 0))]
fn connected_sum(a: &str, b: &str, at_a: usize, at_b: usize) -> PyResult<String> {
    Ok(csum(&knot(a)?, at_a, &knot(b)?, at_b).map_err(err)?.to_string())
}

/// Splices the shipped Kinoshita–Terasaka tangle into arcs `arc1`, `arc2`.
#[pyfunction]
fn splice_kt(code: &str, arc1: usize, arc2: usize) -> PyResult<String> {
    Ok(tangle_splice(&knot(code)?, arc1, arc2, &kt_tangle(), true).map_err(err)?.to_string())
}

#[pyfunction]
fn satellite(code: &str) -> PyResult<String> {
    Ok(livingston_satellite(&knot(code)?).to_string())
}

/// Verifies a movie file's text; returns the certificate as a dict.
#[pyfunction]
fn verify_movie<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let m: MovieFile = text.parse().map_err(err)?;
    let c = m.verify().map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("births", c.births)?;
    d.set_item("saddles", c.saddles)?;
    d.set_item("deaths", c.deaths)?;
    d.set_item("euler_ok", c.euler_ok)?;
    d.set_item("connected", c.connected)?;
    d.set_item("ok", c.ok())?;
    Ok(d)
}

/// `(verdict, {obstruction: value})`.
#[pyfunction]
fn slice_check<'py>(py: Python<'py>, code: &str) -> PyResult<(String, Bound<'py, PyDict>)> {
    let r = slice_obstructions(&knot(code)?);
    let d = PyDict::new(py);
    for o in &r.obstructions {
        d.set_item(o.name, &o.value)?;
    }
    Ok((r.verdict.to_string(), d))
}

#[pymodule]
fn vknot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(genus, m)?)?;
    m.add_function(wrap_pyfunction!(is_almost_classical, m)?)?;
    m.add_function(wrap_pyfunction!(odd_writhe, m)?)?;
    m.add_function(wrap_pyfunction!(writhe_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(alexander, m)?)?;
    m.add_function(wrap_pyfunction!(galexander, m)?)?;
    m.add_function(wrap_pyfunction!(connected_sum, m)?)?;
    m.add_function(wrap_pyfunction!(splice_kt, m)?)?;
    m.add_function(wrap_pyfunction!(satellite, m)?)?;
    m.add_function(wrap_pyfunction!(verify_movie, m)?)?;
    m.add_function(wrap_pyfunction!(slice_check, m)?)?;
    Ok(())
}
