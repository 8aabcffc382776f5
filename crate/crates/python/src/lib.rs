//! Python bindings: reports come back as plain dicts and lists.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use relidem_cli::{check_reports, monad_report, Report};
use relidem_core::enumerate::{search as run_search, SearchFlag, SearchOutcome, SearchSpec};
use relidem_core::workspace::{gallery_build, GALLERY};
use relidem_core::{Error, Workspace};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        Error::UnknownName { .. } => PyKeyError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn anyhow_err(e: anyhow::Error) -> PyErr {
    match e.downcast::<Error>() {
        Ok(e) => to_py_err(e),
        Err(e) => PyRuntimeError::new_err(format!("{e:#}")),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn flag_named(name: &str) -> PyResult<SearchFlag> {
    [
        SearchFlag::Idempotent,
        SearchFlag::AlgebraicallyIdempotent,
        SearchFlag::DenseRoot,
        SearchFlag::KleisliJReflective,
    ]
    .into_iter()
    .find(|f| f.name() == name)
    .ok_or_else(|| PyValueError::new_err(format!("unknown search flag `{name}`")))
}

/// Names of the built-in instances.
#[pyfunction]
fn gallery_names() -> Vec<&'static str> {
    GALLERY.to_vec()
}

/// Classification report for the monad `T` of a built-in instance.
#[pyfunction]
fn gallery<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let ws = gallery_build(name).map_err(to_py_err)?;
    let t = ws.require_monad("T").map_err(to_py_err)?.monad.clone();
    let r = monad_report("T", &t).map_err(anyhow_err)?;
    to_py(py, &r.to_json())
}

/// DSL text for a built-in instance, with every table entry spelled out.
#[pyfunction]
fn gallery_source(name: &str) -> PyResult<String> {
    Ok(gallery_build(name).map_err(to_py_err)?.emit())
}

/// Classification report for the relative monad `monad` declared in `text`.
#[pyfunction]
fn classify<'py>(py: Python<'py>, text: &str, monad: &str) -> PyResult<Bound<'py, PyAny>> {
    let ws = Workspace::from_text(text).map_err(to_py_err)?;
    let t = Arc::clone(&ws.require_monad(monad).map_err(to_py_err)?.monad);
    to_py(py, &monad_report(monad, &t).map_err(anyhow_err)?.to_json())
}

/// Law reports for every declaration in `text`.
#[pyfunction]
fn check<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let ws = Workspace::from_text(text).map_err(to_py_err)?;
    let reports = check_reports(&ws).map_err(anyhow_err)?;
    to_py(py, &Value::Array(reports.iter().map(Report::to_json).collect()))
}

/// Searches relative monads over roots `1 → E` within the bounds.
#[pyfunction]
#[pyo3(signature = (max_objects, max_morphisms, require = Vec::new(), forbid = Vec::new(), census = false))]
fn search<'py>(
    py: Python<'py>,
    max_objects: usize,
    max_morphisms: usize,
    require: Vec<String>,
    forbid: Vec<String>,
    census: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let mut spec = SearchSpec::new(max_objects, max_morphisms);
    for r in &require {
        spec = spec.require(flag_named(r)?);
    }
    for f in &forbid {
        spec = spec.forbid(flag_named(f)?);
    }
    if census {
        spec = spec.census();
    }
    let outcome = py.detach(|| run_search(&spec)).map_err(to_py_err)?;
    let v = match outcome {
        SearchOutcome::Found(found) => {
            let r = monad_report("T", &found.monad).map_err(anyhow_err)?;
            json!({ "outcome": "found", "position": found.position, "source": found.source, "report": r.to_json() })
        }
        SearchOutcome::Exhausted(census) => json!({ "outcome": "exhausted", "census": census }),
    };
    to_py(py, &v)
}

#[pymodule]
fn relidem(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(gallery_names, m)?)?;
    m.add_function(wrap_pyfunction!(gallery, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_source, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
