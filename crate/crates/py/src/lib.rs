//! Python bindings: `Params` for a parameter set, `Operator` for the maps
//! studied by the compactness tools, and `selftest`.
//!
//! Inputs go through the same JSON readers as the command line, so numbers,
//! `"p/q"` strings and `fractions.Fraction` values are all read exactly.
//! Rational results come back as `Fraction`, float results as `float`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use seqspace::cli::ingest::{operator_from_value, params_from_value, vector_from_value};
use seqspace::cli::selftest::run_selftest;
use seqspace::compact::{chi_estimate, classify_compact, DEFAULT_CLASSIFY_TOL, DEFAULT_SERIES_TOL};
use seqspace::duals::{mapping_class_test, ConditionPolicy, MappingTarget};
use seqspace::{
    associated_matrix, dual_membership, DualKind, Error, NumericMode, OperatorSpec, Rational, Scalar, Space,
    SpaceParams, SpaceWindow, Target, TriangleMatrix,
};

fn err(e: Error) -> PyErr {
    match e {
        Error::SeriesDivergence(_) | Error::Overflow(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

/// Python object to JSON, with non-JSON scalars such as `Fraction` passed as strings.
fn to_value(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let json = obj.py().import("json")?;
    let kwargs = pyo3::types::PyDict::new(obj.py());
    kwargs.set_item("default", obj.py().get_type::<pyo3::types::PyString>())?;
    let text: String = json.call_method("dumps", (obj,), Some(&kwargs))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn scalar_to_py<S: Scalar>(py: Python<'_>, v: &S) -> PyResult<Py<PyAny>> {
    match v.to_json() {
        Value::String(s) => Ok(py.import("fractions")?.getattr("Fraction")?.call1((s,))?.unbind()),
        other => to_py(py, &other),
    }
}

fn vec_to_py<S: Scalar>(py: Python<'_>, v: &[S]) -> PyResult<Vec<Py<PyAny>>> {
    v.iter().map(|x| scalar_to_py(py, x)).collect()
}

fn vector(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    vector_from_value(&to_value(obj)?).map_err(err)
}

fn kernel<S: Scalar>(v: &[Rational]) -> Vec<S> {
    v.iter().map(S::from_rational).collect()
}

fn dense<S: Scalar>(py: Python<'_>, m: &TriangleMatrix<S>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    (0..m.dim()).map(|i| vec_to_py(py, m.row(i))).collect()
}

/// Runs `$body` with `$S` bound to the kernel named by `$mode`.
macro_rules! by_mode {
    ($mode:expr, $S:ident => $body:expr) => {
        match parse::<NumericMode>($mode)? {
            NumericMode::Rational => {
                type $S = Rational;
                $body
            }
            NumericMode::Float => {
                type $S = f64;
                $body
            }
        }
    };
}

/// Parameter set `(r, s, t, m, p)`.
#[pyclass(frozen, name = "Params")]
struct PyParams {
    inner: SpaceParams,
}

#[pymethods]
impl PyParams {
    /// `spec` is a dict with keys `r`, `s`, `t` and optionally `m`, `p`, or
    /// `{"preset": name, "args": {...}}`.
    #[new]
    #[pyo3(signature = (spec, m = 1, p = 2.0))]
    fn new(spec: &Bound<'_, PyAny>, m: usize, p: f64) -> PyResult<Self> {
        let inner = params_from_value(&to_value(spec)?, m, Some(p)).map_err(err)?;
        inner.validate(0).map_err(err)?;
        Ok(PyParams { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (name, m = 1, p = 2.0, args = None))]
    fn preset(name: &str, m: usize, p: f64, args: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let args = match args {
            Some(a) => to_value(a)?,
            None => Value::Null,
        };
        let spec = json!({ "preset": name, "args": args });
        let inner = params_from_value(&spec, m, Some(p)).map_err(err)?;
        inner.validate(0).map_err(err)?;
        Ok(PyParams { inner })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[pyo3(signature = (x, mode = "rational"))]
    fn transform(&self, py: Python<'_>, x: &Bound<'_, PyAny>, mode: &str) -> PyResult<Vec<Py<PyAny>>> {
        let x = vector(x)?;
        by_mode!(mode, S => {
            let space = Space::<S>::new(&self.inner, x.len().saturating_sub(1)).map_err(err)?;
            vec_to_py(py, &space.forward_transform(&kernel::<S>(&x)).map_err(err)?)
        })
    }

    #[pyo3(signature = (y, mode = "rational"))]
    fn inverse_transform(&self, py: Python<'_>, y: &Bound<'_, PyAny>, mode: &str) -> PyResult<Vec<Py<PyAny>>> {
        let y = vector(y)?;
        by_mode!(mode, S => {
            let space = Space::<S>::new(&self.inner, y.len().saturating_sub(1)).map_err(err)?;
            vec_to_py(py, &space.inverse_transform(&kernel::<S>(&y)).map_err(err)?)
        })
    }

    #[pyo3(signature = (x, mode = "rational"))]
    fn paranorm(&self, x: &Bound<'_, PyAny>, mode: &str) -> PyResult<f64> {
        let x = vector(x)?;
        by_mode!(mode, S => {
            let space = Space::<S>::new(&self.inner, x.len().saturating_sub(1)).map_err(err)?;
            Ok(space.paranorm(&kernel::<S>(&x)).map_err(err)?.value)
        })
    }

    /// Remainder paranorm after the first `j + 1` basis terms, for each `j`.
    #[pyo3(signature = (x, mode = "rational"))]
    fn remainders(&self, x: &Bound<'_, PyAny>, mode: &str) -> PyResult<Vec<f64>> {
        let x = vector(x)?;
        by_mode!(mode, S => {
            let n = x.len().saturating_sub(1);
            let space = Space::<S>::new(&self.inner, n).map_err(err)?;
            let element = space.element(kernel::<S>(&x)).map_err(err)?;
            (0..=n).map(|j| space.reconstruct(&element, j).map(|r| r.remainder).map_err(err)).collect()
        })
    }

    #[pyo3(signature = (j, n, mode = "rational"))]
    fn basis_vector(&self, py: Python<'_>, j: usize, n: usize, mode: &str) -> PyResult<Vec<Py<PyAny>>> {
        by_mode!(mode, S => {
            let space = Space::<S>::new(&self.inner, n).map_err(err)?;
            vec_to_py(py, &space.basis_vector(j).map_err(err)?.b)
        })
    }

    /// Dense lower-triangular matrix: `a`, `delta`, `composite`, `inverse` or `inverse-a`.
    #[pyo3(signature = (kind, n, mode = "rational"))]
    fn matrix(&self, py: Python<'_>, kind: &str, n: usize, mode: &str) -> PyResult<Vec<Vec<Py<PyAny>>>> {
        by_mode!(mode, S => {
            let w = SpaceWindow::<S>::new(&self.inner, n).map_err(err)?;
            let m = match kind {
                "a" => w.a_matrix(),
                "delta" => w.delta_matrix(),
                "composite" => w.composite_matrix(),
                "inverse" => w.inverse_composite_matrix(),
                "inverse-a" => w.inverse_a_matrix(),
                other => return Err(PyValueError::new_err(format!("unknown matrix `{other}`"))),
            };
            dense(py, &m)
        })
    }

    #[pyo3(signature = (n, mode = "rational"))]
    fn d_coefficients(&self, py: Python<'_>, n: usize, mode: &str) -> PyResult<Vec<Py<PyAny>>> {
        by_mode!(mode, S => {
            let w = SpaceWindow::<S>::new(&self.inner, n).map_err(err)?;
            vec_to_py(py, &w.d.values)
        })
    }

    /// Window test of `a` against the `alpha`, `beta` or `gamma` dual.
    /// `a` is padded with zeros up to `n + 1` terms.
    #[pyo3(signature = (a, dual, n = None, mode = "rational", tol = None))]
    fn dual_membership(
        &self,
        py: Python<'_>,
        a: &Bound<'_, PyAny>,
        dual: &str,
        n: Option<usize>,
        mode: &str,
        tol: Option<f64>,
    ) -> PyResult<Py<PyAny>> {
        let mut a = vector(a)?;
        let n = n.unwrap_or(a.len().saturating_sub(1));
        if a.len() > n + 1 {
            return Err(err(Error::DimensionMismatch { expected: n + 1, got: a.len() }));
        }
        a.resize(n + 1, Rational::from_i64(0));
        let policy = policy(tol);
        let dual = parse::<DualKind>(dual)?;
        let v = by_mode!(mode, S => dual_membership(&kernel::<S>(&a), dual, &self.inner, n, &policy).map_err(err)?);
        to_py(py, &serde_json::to_value(&v).map_err(|e| PyValueError::new_err(e.to_string()))?)
    }

    /// Runs the invariant battery in the exact kernel.
    #[pyo3(signature = (n = 12, trials = 20, seed = 0))]
    fn selftest(&self, py: Python<'_>, n: usize, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
        let checks = run_selftest(&self.inner, n, trials, seed).map_err(err)?;
        let passed = checks.iter().all(|c| c.passed);
        to_py(py, &json!({ "passed": passed, "checks": checks }))
    }
}

fn policy(tol: Option<f64>) -> ConditionPolicy {
    let d = ConditionPolicy::default();
    ConditionPolicy { tol: tol.unwrap_or(d.tol), ..d }
}

/// Infinite matrix given as `"identity"`, `"zero"`, a dense list of rows, or
/// a dict with one of `dense`, `sparse`, `banded`, `geometric`, `column`.
#[pyclass(frozen, name = "Operator")]
struct PyOperator {
    inner: OperatorSpec,
}

#[pymethods]
impl PyOperator {
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyOperator { inner: operator_from_value(&to_value(spec)?).map_err(err)? })
    }

    #[pyo3(signature = (params, n, mode = "float"))]
    fn associated_matrix(
        &self,
        py: Python<'_>,
        params: &PyParams,
        n: usize,
        mode: &str,
    ) -> PyResult<Vec<Vec<Py<PyAny>>>> {
        by_mode!(mode, S => {
            let assoc = associated_matrix::<S>(&self.inner, &params.inner, n, DEFAULT_SERIES_TOL).map_err(err)?;
            assoc.rows.iter().map(|r| vec_to_py(py, r)).collect()
        })
    }

    /// `l1Norm`, `bvNorm` and, for `p > 1`, `operatorNorm` of the associated matrix.
    #[pyo3(signature = (params, p, n = 128, mode = "float"))]
    fn norms(&self, py: Python<'_>, params: &PyParams, p: f64, n: usize, mode: &str) -> PyResult<Py<PyAny>> {
        let body = by_mode!(mode, S => {
            let assoc = associated_matrix::<S>(&self.inner, &params.inner, n, DEFAULT_SERIES_TOL).map_err(err)?;
            let mut b = json!({ "l1Norm": assoc.l1_norm(), "bvNorm": assoc.bv_norm(), "errorBudget": assoc.error_budget });
            if p > 1.0 {
                b["operatorNorm"] = json!(assoc.operator_norm(p).map_err(err)?);
            }
            b
        });
        to_py(py, &body)
    }

    /// Bounds on the Hausdorff measure of noncompactness for `target`
    /// (`c0`, `c`, `linf`).
    #[pyo3(signature = (params, p, target = "c0", n = 128, window = 16, tol = DEFAULT_CLASSIFY_TOL, mode = "float"))]
    #[allow(clippy::too_many_arguments)]
    fn chi(
        &self,
        py: Python<'_>,
        params: &PyParams,
        p: f64,
        target: &str,
        n: usize,
        window: usize,
        tol: f64,
        mode: &str,
    ) -> PyResult<Py<PyAny>> {
        let target = parse::<Target>(target)?;
        let chi = by_mode!(mode, S => {
            let assoc = associated_matrix::<S>(&self.inner, &params.inner, n, DEFAULT_SERIES_TOL).map_err(err)?;
            chi_estimate(&assoc, p, target, window, tol).map_err(err)?
        });
        to_py(py, &serde_json::to_value(&chi).map_err(|e| PyValueError::new_err(e.to_string()))?)
    }

    /// Compactness verdict for `target` (`c0`, `c`, `linf`, `l1`, `bv`, `lq:<q>`).
    #[pyo3(signature = (params, p, target = "c0", n = 128, window = 16, tol = DEFAULT_CLASSIFY_TOL, mode = "float"))]
    #[allow(clippy::too_many_arguments)]
    fn classify(
        &self,
        py: Python<'_>,
        params: &PyParams,
        p: f64,
        target: &str,
        n: usize,
        window: usize,
        tol: f64,
        mode: &str,
    ) -> PyResult<Py<PyAny>> {
        let target = parse::<Target>(target)?;
        let cls = by_mode!(mode, S => {
            let assoc = associated_matrix::<S>(&self.inner, &params.inner, n, DEFAULT_SERIES_TOL).map_err(err)?;
            classify_compact(&assoc, p, target, window, tol).map_err(err)?
        });
        to_py(py, &serde_json::to_value(&cls).map_err(|e| PyValueError::new_err(e.to_string()))?)
    }

    /// Window test of the operator mapping the space into `linf` or `l1`.
    #[pyo3(signature = (params, target = "linf", n = 16, mode = "rational", tol = None))]
    fn maps_into(
        &self,
        py: Python<'_>,
        params: &PyParams,
        target: &str,
        n: usize,
        mode: &str,
        tol: Option<f64>,
    ) -> PyResult<Py<PyAny>> {
        let target = parse::<MappingTarget>(target)?;
        let policy = policy(tol);
        let v = by_mode!(mode, S => mapping_class_test::<S>(&self.inner, target, &params.inner, n, &policy).map_err(err)?);
        to_py(py, &serde_json::to_value(&v).map_err(|e| PyValueError::new_err(e.to_string()))?)
    }
}

#[pymodule]
pub fn seqspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyOperator>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
