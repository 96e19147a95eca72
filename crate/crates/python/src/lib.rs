//! Python bindings. Structured results come back as plain dicts and lists.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use spa_core::exact::{certify_gamma_three_quarters, certify_with_lambda_prime, parse_rational};
use spa_core::linalg::DenseMatrix;
use spa_core::optimality::{
    ces_overlap as ces_see_saw, ces_projector, optimality_report, solve_constraint as solve,
};
use spa_core::realignment::{entanglement_margin, lambda0_threshold};
use spa_core::scan::{run_scan, ScanConfig};
use spa_core::witness::{self, spa_for_gamma, witness_spectrum_check, BellFamilyParams};
use spa_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_) | Error::Dimension(_) | Error::NotAWitness(_) | Error::Empty(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_json<T: Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = to_json(value)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn rows(m: &DenseMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn params(gamma: f64) -> PyResult<BellFamilyParams> {
    BellFamilyParams::new(gamma).map_err(py_err)
}

/// One member of the witness family.
#[pyclass(module = "spa_witness", frozen)]
struct BellFamily {
    params: BellFamilyParams,
}

#[pymethods]
impl BellFamily {
    #[new]
    fn new(gamma: f64) -> PyResult<Self> {
        Ok(Self {
            params: params(gamma)?,
        })
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.params.gamma()
    }

    fn witness(&self) -> Vec<Vec<Complex64>> {
        rows(witness::build_witness(self.params).matrix())
    }

    fn b(&self) -> Vec<Vec<Complex64>> {
        rows(witness::build_b(self.params).matrix())
    }

    /// `(lambda_min, degeneracy)` of the witness.
    fn spectrum(&self) -> PyResult<(f64, usize)> {
        let s = witness_spectrum_check(witness::build_witness(self.params).matrix()).map_err(py_err)?;
        Ok((s.lambda_min, s.degeneracy))
    }

    fn spa<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &spa_for_gamma(self.params).map_err(py_err)?)
    }

    fn realignment<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let spa = spa_for_gamma(self.params).map_err(py_err)?;
        to_py(py, &entanglement_margin(&spa).map_err(py_err)?)
    }

    fn __repr__(&self) -> String {
        format!("BellFamily(gamma={})", self.params.gamma())
    }
}

#[pyfunction]
fn build_witness(gamma: f64) -> PyResult<Vec<Vec<Complex64>>> {
    Ok(rows(witness::build_witness(params(gamma)?).matrix()))
}

#[pyfunction]
fn spa<'py>(py: Python<'py>, gamma: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &spa_for_gamma(params(gamma)?).map_err(py_err)?)
}

#[pyfunction]
fn realignment_report<'py>(py: Python<'py>, gamma: f64) -> PyResult<Bound<'py, PyAny>> {
    let spa = spa_for_gamma(params(gamma)?).map_err(py_err)?;
    to_py(py, &entanglement_margin(&spa).map_err(py_err)?)
}

#[pyfunction]
fn lambda0(gamma: f64) -> f64 {
    lambda0_threshold(gamma)
}

#[pyfunction]
#[pyo3(signature = (gamma_from = 0.01, gamma_to = 0.99, steps = 99))]
fn scan<'py>(py: Python<'py>, gamma_from: f64, gamma_to: f64, steps: usize) -> PyResult<Bound<'py, PyAny>> {
    let cfg = ScanConfig {
        gamma_from,
        gamma_to,
        steps,
        seed: 0,
    };
    to_py(py, &run_scan(&cfg).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (gamma, samples = 48, seed = 0))]
fn optimality<'py>(py: Python<'py>, gamma: f64, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &optimality_report(gamma, samples, seed).map_err(py_err)?)
}

/// Solutions `(x, y)` of the product-zero constraint at `x = (1, t, x2)`.
#[pyfunction]
fn solve_constraint(t: Complex64) -> PyResult<Vec<(Vec<Complex64>, Vec<Complex64>)>> {
    Ok(solve(t)
        .map_err(py_err)?
        .into_iter()
        .map(|s| (s.x.to_vec(), s.y.to_vec()))
        .collect())
}

/// See-saw estimate of the largest product-state overlap with the CES projector.
#[pyfunction]
#[pyo3(signature = (restarts = 32, iters = 300, seed = 0))]
fn ces_overlap(restarts: usize, iters: usize, seed: u64) -> PyResult<f64> {
    ces_see_saw(&ces_projector(), restarts, iters, seed).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (lambda_prime = None))]
fn certify<'py>(py: Python<'py>, lambda_prime: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let report = match lambda_prime {
        Some(s) => certify_with_lambda_prime(&parse_rational(s).map_err(py_err)?),
        None => certify_gamma_three_quarters(),
    }
    .map_err(py_err)?;
    to_py(py, &report)
}

#[pymodule]
fn spa_witness(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BellFamily>()?;
    m.add_function(wrap_pyfunction!(build_witness, m)?)?;
    m.add_function(wrap_pyfunction!(spa, m)?)?;
    m.add_function(wrap_pyfunction!(realignment_report, m)?)?;
    m.add_function(wrap_pyfunction!(lambda0, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(optimality, m)?)?;
    m.add_function(wrap_pyfunction!(solve_constraint, m)?)?;
    m.add_function(wrap_pyfunction!(ces_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    Ok(())
}
