//! Python bindings for the superspace exact-calculus engine.
//!
//! Expressions use the same grammar as the command line
//! (`x1..xm`, `th1..th2n`, `r^2k`, `R^2k`, rationals, `+ - * ^`);
//! results come back as [`ExactValue`] objects or rendered expression
//! strings, and verification reports as plain dictionaries.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use superspace::cli::parse_superfun;
use superspace::geometry::{
    divergence_i, divergence_ii, divergence_iii, try_to_radial, Metric, VectorField,
};
use superspace::grassmann::SpaceDims;
use superspace::harmonic::{self, VerificationReport};
use superspace::integrate::{self, RetractionTag};

fn dims(m: usize, n: usize) -> PyResult<SpaceDims> {
    SpaceDims::new(m, n).map_err(to_py_err)
}

fn to_py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(expr: &str, d: SpaceDims) -> PyResult<superspace::grassmann::SuperFun> {
    parse_superfun(expr, d).map_err(to_py_err)
}

fn parse_field(components: Vec<String>, d: SpaceDims) -> PyResult<VectorField> {
    if components.len() != d.total() {
        return Err(PyValueError::new_err(format!(
            "expected {} components, got {}",
            d.total(),
            components.len()
        )));
    }
    let mut field = VectorField::zero(d);
    for (k, src) in components.iter().enumerate() {
        field.set_component(k + 1, parse(src, d)?);
    }
    Ok(field)
}

fn report_dict<'py>(py: Python<'py>, report: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("theorem", &report.theorem)?;
    dict.set_item("m", report.m)?;
    dict.set_item("n", report.n)?;
    dict.set_item("lhs", report.lhs.to_string())?;
    dict.set_item("rhs", report.rhs.to_string())?;
    dict.set_item("equal", report.equal)?;
    dict.set_item("ms", report.ms)?;
    if let Some(detail) = &report.detail {
        dict.set_item("detail", detail)?;
    }
    Ok(dict)
}

/// A value `coeff * pi^(k/2) * L^q` in the exact value ring.
#[pyclass(frozen, name = "ExactValue")]
struct ExactValue {
    inner: superspace::scalar::ExactValue,
}

#[pymethods]
impl ExactValue {
    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Rational coefficient as a string "p/q".
    #[getter]
    fn coeff(&self) -> String {
        self.inner.coeff().to_string()
    }

    /// Doubled exponent of pi.
    #[getter]
    fn pi_pow_x2(&self) -> i64 {
        self.inner.pi_pow_x2()
    }

    /// Exponent of the symbolic radius L, as a string "p/q".
    #[getter]
    fn l_pow(&self) -> String {
        self.inner.l_pow().to_string()
    }

    /// The JSON form used by the command line.
    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(to_py_err)
    }
}

fn wrap(inner: superspace::scalar::ExactValue) -> ExactValue {
    ExactValue { inner }
}

/// Closed-form supersphere area for symbolic radius `L`.
#[pyfunction]
fn sphere_volume(m: usize, n: usize) -> PyResult<ExactValue> {
    Ok(wrap(integrate::sphere_volume(dims(m, n)?)))
}

/// Closed-form superball volume for symbolic radius `L`.
#[pyfunction]
fn ball_volume(m: usize, n: usize) -> PyResult<ExactValue> {
    Ok(wrap(integrate::ball_volume(dims(m, n)?)))
}

/// Exact supersphere integral of an expression.
#[pyfunction]
fn sphere_integral(expr: &str, m: usize, n: usize) -> PyResult<ExactValue> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    integrate::sphere_integral(&f).map(wrap).map_err(to_py_err)
}

/// Exact superball integral; `retraction` is "gamma" or "std".
#[pyfunction]
#[pyo3(signature = (expr, m, n, retraction = "gamma"))]
fn ball_integral(expr: &str, m: usize, n: usize, retraction: &str) -> PyResult<ExactValue> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    let tag = match retraction {
        "gamma" => RetractionTag::Gamma,
        "std" => RetractionTag::Std,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown retraction '{other}', expected 'gamma' or 'std'"
            )))
        }
    };
    integrate::ball_integral(&f, tag)
        .map(wrap)
        .map_err(to_py_err)
}

/// Flat super Laplacian of an expression, rendered in the input grammar.
#[pyfunction]
fn laplacian(expr: &str, m: usize, n: usize) -> PyResult<String> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    superspace::geometry::laplacian_flat(&f)
        .map(|g| g.to_string())
        .map_err(to_py_err)
}

/// Divergence of a vector field over the flat metric; `formula` selects one
/// of the three characterisations "i", "ii", "iii".
#[pyfunction]
#[pyo3(signature = (components, m, n, formula = "i"))]
fn divergence(components: Vec<String>, m: usize, n: usize, formula: &str) -> PyResult<String> {
    let d = dims(m, n)?;
    let x = parse_field(components, d)?.to_frac();
    let metric = Metric::flat(d);
    let div = match formula {
        "i" => divergence_i(&metric, &x),
        "ii" => divergence_ii(&metric, &x),
        "iii" => divergence_iii(&metric, &x),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown formula '{other}', expected 'i', 'ii' or 'iii'"
            )))
        }
    }
    .map_err(to_py_err)?;
    try_to_radial(&div)
        .map(|f| f.to_string())
        .ok_or_else(|| PyValueError::new_err("divergence has non-constant denominators"))
}

/// Change-of-retraction boundary term `std - gamma` of an expression.
#[pyfunction]
fn boundary_term(expr: &str, m: usize, n: usize) -> PyResult<ExactValue> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    integrate::boundary_term(&f).map(wrap).map_err(to_py_err)
}

/// The same boundary term through the displayed boundary sum.
#[pyfunction]
fn boundary_term_direct(expr: &str, m: usize, n: usize) -> PyResult<ExactValue> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    integrate::boundary_term_direct(&f)
        .map(wrap)
        .map_err(to_py_err)
}

/// A basis of harmonic superfunctions with coefficient degree at most
/// `degree`, rendered in the input grammar.
#[pyfunction]
fn harmonic_basis(m: usize, n: usize, degree: usize) -> PyResult<Vec<String>> {
    let d = dims(m, n)?;
    harmonic::harmonic_basis(d, degree)
        .map(|basis| basis.iter().map(|f| f.to_string()).collect())
        .map_err(to_py_err)
}

/// Check the fundamental solution `R^{2-M}` (or `log R` at `M = 2`).
#[pyfunction]
fn verify_fundamental<'py>(py: Python<'py>, m: usize, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = harmonic::check_fundamental_solution(dims(m, n)?).map_err(to_py_err)?;
    report_dict(py, &report)
}

/// Mean value theorem on the supersphere; non-harmonic input reports the
/// raw (failing) identity.
#[pyfunction]
fn verify_mvt_sphere<'py>(
    py: Python<'py>,
    expr: &str,
    m: usize,
    n: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    let report = harmonic::verify_mvt_sphere_unchecked(&f).map_err(to_py_err)?;
    report_dict(py, &report)
}

/// Both superball mean value identities.
#[pyfunction]
fn verify_mvt_ball<'py>(
    py: Python<'py>,
    expr: &str,
    m: usize,
    n: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let d = dims(m, n)?;
    let f = parse(expr, d)?;
    let reports = harmonic::verify_mvt_ball_unchecked(&f).map_err(to_py_err)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

/// The divergence theorem for a vector field over the flat metric.
#[pyfunction]
fn verify_divergence_theorem<'py>(
    py: Python<'py>,
    components: Vec<String>,
    m: usize,
    n: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let d = dims(m, n)?;
    let x = parse_field(components, d)?;
    let report = harmonic::verify_divergence_theorem(&x).map_err(to_py_err)?;
    report_dict(py, &report)
}

/// Green's formula for a pair of parity-homogeneous expressions.
#[pyfunction]
fn verify_green<'py>(
    py: Python<'py>,
    f: &str,
    k: &str,
    m: usize,
    n: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let d = dims(m, n)?;
    let f = parse(f, d)?;
    let k = parse(k, d)?;
    let report = harmonic::verify_green(&f, &k).map_err(to_py_err)?;
    report_dict(py, &report)
}

#[pymodule]
fn superspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ExactValue>()?;
    m.add_function(wrap_pyfunction!(sphere_volume, m)?)?;
    m.add_function(wrap_pyfunction!(ball_volume, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_integral, m)?)?;
    m.add_function(wrap_pyfunction!(ball_integral, m)?)?;
    m.add_function(wrap_pyfunction!(laplacian, m)?)?;
    m.add_function(wrap_pyfunction!(divergence, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_term, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_term_direct, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_basis, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fundamental, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mvt_sphere, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mvt_ball, m)?)?;
    m.add_function(wrap_pyfunction!(verify_divergence_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_green, m)?)?;
    Ok(())
}
