use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use rdx_core::grammar::{self, OpId, Recognition};
use rdx_core::graph::{Graph, Tree};
use rdx_core::partition::{is_excellent as excellent, partition_report_graph};
use rdx_core::{atlas, solver};

fn err(e: rdx_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `n` defaults to one more than the largest vertex index.
fn graph(edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<Graph> {
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1));
    Graph::from_edges(n, &edges).map_err(err)
}

fn tree(edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<Tree> {
    Tree::new(graph(edges, n)?).map_err(err)
}

fn to_py(py: Python<'_>, v: Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

#[pyfunction]
#[pyo3(signature = (edges, n=None))]
fn gamma_r(edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<usize> {
    solver::gamma_r(&graph(edges, n)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (edges, n=None))]
fn gamma(edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<usize> {
    solver::gamma(&graph(edges, n)?).map_err(err)
}

/// Value sets and classes as a dict.
#[pyfunction]
#[pyo3(signature = (edges, n=None))]
fn partition(py: Python<'_>, edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<Py<PyAny>> {
    let report = partition_report_graph(&graph(edges, n)?).map_err(err)?;
    to_py(py, report.to_json(None))
}

#[pyfunction]
#[pyo3(signature = (edges, n=None))]
fn is_excellent(edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<bool> {
    excellent(&graph(edges, n)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (edges, n=None))]
fn classify(py: Python<'_>, edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<Py<PyAny>> {
    to_py(py, atlas::classify(&graph(edges, n)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (edges, n=None))]
fn recognize(py: Python<'_>, edges: Vec<(usize, usize)>, n: Option<usize>) -> PyResult<Py<PyAny>> {
    let out = match grammar::recognize(&tree(edges, n)?).map_err(err)? {
        Recognition::Accept { labeled, cert, map } => json!({
            "result": "accept",
            "statuses": labeled.status_string(),
            "certificate": cert,
            "map": map,
        }),
        Recognition::Reject { witness, .. } => json!({ "result": "reject", "witness": witness }),
    };
    to_py(py, out)
}

/// Random labeled tree; `ops` defaults to the four main operations.
#[pyfunction]
#[pyo3(signature = (seed, steps, ops=None))]
fn generate(py: Python<'_>, seed: u64, steps: usize, ops: Option<Vec<String>>) -> PyResult<Py<PyAny>> {
    let ops: Vec<OpId> = match ops {
        Some(names) => names.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(err)?,
        None => OpId::MAIN.to_vec(),
    };
    let (lt, cert) = grammar::generate(seed, steps, &ops).map_err(err)?;
    to_py(py, json!({ "tree": lt.to_json(), "certificate": cert }))
}

#[pymodule]
fn rdx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma_r, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(is_excellent, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
