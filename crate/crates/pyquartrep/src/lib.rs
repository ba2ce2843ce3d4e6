//! Python bindings: polynomials, classification reports, verification and the counting oracles.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use quartrep::classifier::curves::cubic_curve_analysis;
use quartrep::classifier::report::Report as CoreReport;
use quartrep::classifier::{analyze_with_target, ClassifyError, DEFAULT_TARGET};
use quartrep::exact::bipoly::BiPoly;
use quartrep::exact::parse::parse_poly;
use quartrep::exact::rat::{parse_rat, rat_to_string, Int, Rat};
use quartrep::exact::unimodular::{apply_unimodular, UnimodularMap};
use quartrep::forms::direction::Direction;
use quartrep::oracle::density::density_table;
use quartrep::oracle::hilbert::reducible_specialization_count as core_hilbert;
use quartrep::oracle::sector::sector_count as core_sector;
use quartrep::oracle::values::{count_table as core_count_table, enumerate_values as core_enumerate, missing_value_search as core_missing};
use quartrep::oracle::verify::verify_report;

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl ToString) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn rat_arg(s: &str) -> PyResult<Rat> {
    parse_rat(s.trim()).ok_or_else(|| value_err(format!("not a rational number: {s}")))
}

/// Bivariate polynomial with rational coefficients.
#[pyclass(frozen, skip_from_py_object, module = "pyquartrep")]
#[derive(Clone)]
struct Poly {
    inner: BiPoly,
}

#[pymethods]
impl Poly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Poly { inner: parse_poly(text).map_err(value_err)? })
    }

    #[getter]
    fn total_degree(&self) -> u32 {
        self.inner.total_degree()
    }

    /// Exact value at an integer point, as a string such as `-238` or `7/2`.
    fn eval(&self, x: i64, y: i64) -> String {
        rat_to_string(&self.inner.eval_i64(x, y))
    }

    /// `F ∘ A⁻¹` for `A = [[a, b], [c, d]]` with determinant ±1.
    fn apply_unimodular(&self, a: i64, b: i64, c: i64, d: i64) -> PyResult<Poly> {
        let m = UnimodularMap::from_i64(a, b, c, d).map_err(value_err)?;
        Ok(Poly { inner: apply_unimodular(&self.inner, &m) })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner == other.inner
    }
}

/// Classification result with its certificate.
#[pyclass(frozen, module = "pyquartrep")]
struct Report {
    inner: CoreReport,
}

#[pymethods]
impl Report {
    /// `UnboundedBelow`, `SparseValues`, `Composition` or `ReducibleGap`.
    #[getter]
    fn tag(&self) -> &'static str {
        self.inner.verdict.tag()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.verdict.label()
    }

    #[getter]
    fn leaf(&self) -> &'static str {
        self.inner.leaf()
    }

    #[getter]
    fn path(&self) -> Vec<&'static str> {
        self.inner.trace.iter().map(|t| t.node).collect()
    }

    /// Canonical JSON text of the report.
    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    /// Re-checks the report; raises `ValueError` naming the first failed clause.
    fn verify(&self) -> PyResult<()> {
        verify_report(&self.inner.to_json()).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Report({}, leaf={})", self.inner.verdict.label(), self.inner.leaf())
    }
}

fn poly_arg(poly: &Bound<'_, PyAny>) -> PyResult<BiPoly> {
    if let Ok(p) = poly.cast::<Poly>() {
        return Ok(p.get().inner.clone());
    }
    let text: String = poly.extract()?;
    parse_poly(&text).map_err(value_err)
}

/// Classifies `poly` (a `Poly` or its text); `target` bounds the unbounded-below witness.
#[pyfunction]
#[pyo3(signature = (poly, target = None))]
fn analyze(poly: &Bound<'_, PyAny>, target: Option<&str>) -> PyResult<Report> {
    let f = poly_arg(poly)?;
    let t = match target {
        Some(s) => rat_arg(s)?,
        None => Rat::from_integer(Int::from(DEFAULT_TARGET)),
    };
    match analyze_with_target(&f, &t) {
        Ok(r) => Ok(Report { inner: r }),
        Err(e @ ClassifyError::Unsupported(_)) => Err(value_err(e)),
        Err(e) => Err(runtime_err(e)),
    }
}

/// Verifies a serialized report; raises `ValueError` on the first failed clause.
#[pyfunction]
fn verify(report_json: &str) -> PyResult<()> {
    let v: Value = serde_json::from_str(report_json).map_err(value_err)?;
    verify_report(&v).map_err(value_err)
}

/// Distinct values of an integral polynomial over `|x|, |y| ≤ box_bound` within `[−range, range]`.
#[pyfunction]
fn enumerate_values(poly: &Bound<'_, PyAny>, box_bound: u64, range: u64) -> PyResult<(Vec<i64>, bool)> {
    let t = core_enumerate(&poly_arg(poly)?, box_bound, range).map_err(runtime_err)?;
    Ok((t.values, t.exhaustive))
}

/// `[(N, #values in [1, N])]` and whether the box is provably exhaustive.
#[pyfunction]
fn count_table(poly: &Bound<'_, PyAny>, ns: Vec<u64>) -> PyResult<(Vec<(u64, u64)>, bool)> {
    let t = core_count_table(&poly_arg(poly)?, &ns).map_err(runtime_err)?;
    Ok((t.rows, t.exhaustive))
}

/// Count table with the fitted density class, as a dict.
#[pyfunction]
#[pyo3(signature = (poly, ns, predicted = None))]
fn density<'py>(py: Python<'py>, poly: &Bound<'py, PyAny>, ns: Vec<u64>, predicted: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let fit = density_table(&poly_arg(poly)?, &ns, predicted).map_err(value_err)?;
    to_py(py, &fit.to_json())
}

/// Least `v ≥ d` with `v ≡ d (mod c)` that is not a value, as a dict.
#[pyfunction]
#[pyo3(signature = (poly, c = 1, d = 0, budget = 10_000))]
fn missing_value_search<'py>(py: Python<'py>, poly: &Bound<'py, PyAny>, c: u64, d: i64, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let mv = core_missing(&poly_arg(poly)?, c, d, budget).map_err(runtime_err)?;
    to_py(py, &mv.to_json())
}

/// Lattice points with `T ≤ |p| ≤ 2T` in the window of tangent `c·T^{−1/(2R)}` around the direction `(x0, y0)`.
#[pyfunction]
fn sector_count(x0: i64, y0: i64, r: u32, c: &str, t: u64) -> PyResult<u64> {
    let xi = Direction::rational(Int::from(x0), Int::from(y0));
    core_sector(&xi, r, &rat_arg(c)?, t).map_err(value_err)
}

/// Number of `|t₀| ≤ b` with `Y(x, t₀)` reducible, where `t` is written as `y`.
#[pyfunction]
fn reducible_specialization_count(poly: &Bound<'_, PyAny>, b: u64) -> PyResult<u64> {
    Ok(core_hilbert(&poly_arg(poly)?, b).map_err(value_err)?.count())
}

/// Class of the plane cubic `P = 0` as a dict with a `class` key.
#[pyfunction]
fn cubic_curve<'py>(py: Python<'py>, poly: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let c = cubic_curve_analysis(&poly_arg(poly)?).map_err(value_err)?;
    to_py(py, &c.to_json())
}

#[pymodule]
fn pyquartrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_values, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(missing_value_search, m)?)?;
    m.add_function(wrap_pyfunction!(sector_count, m)?)?;
    m.add_function(wrap_pyfunction!(reducible_specialization_count, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_curve, m)?)?;
    m.add("DEFAULT_TARGET", DEFAULT_TARGET)?;
    Ok(())
}
