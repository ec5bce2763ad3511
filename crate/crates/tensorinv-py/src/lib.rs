//! Python bindings for the engine.
//!
//! Expressions use the standard variable names. The series functions mirror the
//! command line.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tensorinv::ct::{ct_exact, ct_iter};
use tensorinv::hyperoct::{self, Model};
use tensorinv::laurent::Q;
use tensorinv::pipeline::{self, Against, Computed, MethodId, Series};
use tensorinv::{oracle, EllRational, SeriesOrder, VarId, VarTable};

fn err(e: tensorinv::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn var_id(name: &str) -> PyResult<VarId> {
    VarTable::standard()
        .id(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown variable `{name}`")))
}

/// A rational function whose denominator is a product of `(1 - c m)^r`, over the
/// variables `q, t, x1..x64, a1..a16`.
#[pyclass(name = "Expr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyExpr {
    inner: EllRational,
}

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        EllRational::parse(text, VarTable::standard())
            .map(|inner| PyExpr { inner })
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.render(VarTable::standard())
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.__str__())
    }

    fn __add__(&self, other: &PyExpr) -> PyExpr {
        PyExpr {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &PyExpr) -> PyExpr {
        PyExpr {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &PyExpr) -> PyExpr {
        PyExpr {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __eq__(&self, other: &PyExpr) -> bool {
        self.inner.equal_as_rational(&other.inner)
    }

    /// Constant term in one variable under the standard order.
    fn ct(&self, var: &str) -> PyResult<PyExpr> {
        let v = var_id(var)?;
        ct_exact(&self.inner, v, &SeriesOrder::standard())
            .map(|inner| PyExpr { inner })
            .map_err(err)
    }

    /// Iterated constant term over several variables.
    fn ct_all(&self, vars: Vec<String>) -> PyResult<PyExpr> {
        let ids = vars
            .iter()
            .map(|v| var_id(v))
            .collect::<PyResult<Vec<_>>>()?;
        ct_iter(&self.inner, &ids, &SeriesOrder::standard(), None)
            .map(|inner| PyExpr { inner })
            .map_err(err)
    }

    /// Power series coefficients in `q` up to degree `d`, as strings.
    fn series(&self, d: usize) -> PyResult<Vec<String>> {
        let s = self.inner.series(Q, d).map_err(err)?;
        Ok(s.iter().map(|c| c.to_string()).collect())
    }
}

fn series_arg(s: &str) -> PyResult<Series> {
    s.parse().map_err(err)
}

fn method_arg(series: Series, k: usize, m: Option<&str>) -> PyResult<MethodId> {
    match m {
        Some(m) => m.parse().map_err(err),
        None => Ok(MethodId::default_for(series, k)),
    }
}

/// Closed form of `G_k` or `W_k` in the canonical presentation.
#[pyfunction]
#[pyo3(signature = (series, k, method=None, sqrt=false))]
fn compute(series: &str, k: usize, method: Option<&str>, sqrt: bool) -> PyResult<String> {
    let s = series_arg(series)?;
    let m = method_arg(s, k, method)?;
    match pipeline::compute(s, k, m).map_err(err)? {
        Computed::Rational(f) => Ok(pipeline::present(&f, sqrt).map_err(err)?.text),
        Computed::Table(t) => Ok(t
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")),
    }
}

/// The closed form as an expression.
#[pyfunction]
#[pyo3(signature = (series, k, method=None))]
fn compute_expr(series: &str, k: usize, method: Option<&str>) -> PyResult<PyExpr> {
    let s = series_arg(series)?;
    let m = method_arg(s, k, method)?;
    match pipeline::compute(s, k, m).map_err(err)? {
        Computed::Rational(inner) => Ok(PyExpr { inner }),
        Computed::Table(_) => Err(PyValueError::new_err("oracle methods give a table")),
    }
}

/// Checks a method against `reference`, `oracle:D` or another method.
#[pyfunction]
#[pyo3(signature = (series, k, method, against="reference"))]
fn verify(series: &str, k: usize, method: &str, against: &str) -> PyResult<bool> {
    let s = series_arg(series)?;
    let m: MethodId = method.parse().map_err(err)?;
    let a: Against = against.parse().map_err(err)?;
    Ok(pipeline::verify(s, k, m, a).map_err(err)?.pass)
}

/// Brute-force coefficients of `q^{2d}`, `d = 0..=dmax`.
#[pyfunction]
#[pyo3(signature = (k, dmax, sdd=false))]
fn oracle_table(k: usize, dmax: usize, sdd: bool) -> PyResult<Vec<u128>> {
    oracle::oracle_table(k, dmax, sdd).map_err(err)
}

/// `(orbits, contributing, contributing orbit sizes)` for `model` in `half`/`full`.
#[pyfunction]
fn orbit_census(k: usize, model: &str) -> PyResult<(usize, usize, Vec<u64>)> {
    let model: Model = model.parse().map_err(err)?;
    let mut records = hyperoct::enumerate_orbits(k, model).map_err(err)?;
    hyperoct::fill_orbits(&mut records, true, false).map_err(err)?;
    let c = hyperoct::census(k, model, &records);
    Ok((c.orbits, c.contributing, c.contributing_sizes))
}

#[pymodule]
fn tensorinv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(compute_expr, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_table, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_census, m)?)?;
    Ok(())
}
