//! Python bindings: a Graph builder plus the recursive and Dijkstra solvers.
//! Results come back as plain float lists (`inf` / `-inf` included).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ssbp::baselines;
use ssbp::{solve_csssbp, solve_ssbp, Capacity, CsssbpInstance, SolverConfig, SsbpInstance};

/// Directed graph under construction: node count plus an edge list.
/// Edge weights may be `inf` (unrestricted); `-inf` and NaN are rejected.
#[pyclass(name = "Graph")]
struct PyGraph {
    n: usize,
    edges: Vec<(u32, u32, f64)>,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("graph needs at least one node"));
        }
        Ok(PyGraph { n, edges: Vec::new() })
    }

    fn add_edge(&mut self, u: u32, v: u32, w: f64) -> PyResult<()> {
        if (u as usize) >= self.n || (v as usize) >= self.n {
            return Err(PyValueError::new_err(format!(
                "node id out of range [0, {})",
                self.n
            )));
        }
        if w.is_nan() || w == f64::NEG_INFINITY {
            return Err(PyValueError::new_err("edge weight must be a number or inf"));
        }
        self.edges.push((u, v, w));
        Ok(())
    }

    #[getter]
    fn n(&self) -> usize {
        self.n
    }

    #[getter]
    fn m(&self) -> usize {
        self.edges.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.n, self.edges.len())
    }
}

fn build(g: &PyGraph) -> PyResult<ssbp::Graph> {
    ssbp::Graph::from_values(g.n, &g.edges).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_floats(d: &[Capacity]) -> Vec<f64> {
    d.iter().map(|c| c.value()).collect()
}

fn config(seed: u64, k: Option<usize>) -> SolverConfig {
    SolverConfig {
        seed,
        k,
        ..Default::default()
    }
}

/// Bottleneck values from `source` via the randomized recursive solver.
#[pyfunction(name = "solve_ssbp")]
#[pyo3(signature = (graph, source, seed=0, k=None))]
fn py_solve_ssbp(graph: &PyGraph, source: u32, seed: u64, k: Option<usize>) -> PyResult<Vec<f64>> {
    let inst =
        SsbpInstance::new(build(graph)?, source).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (res, _) = solve_ssbp(&inst, &config(seed, k)).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(to_floats(&res.d))
}

/// Bottleneck values with per-node initial capacities `h`.
#[pyfunction(name = "solve_csssbp")]
#[pyo3(signature = (graph, h, seed=0, k=None))]
fn py_solve_csssbp(graph: &PyGraph, h: Vec<f64>, seed: u64, k: Option<usize>) -> PyResult<Vec<f64>> {
    if h.len() != graph.n {
        return Err(PyValueError::new_err(format!(
            "h has {} entries, graph has {} nodes",
            h.len(),
            graph.n
        )));
    }
    if h.iter().any(|v| v.is_nan()) {
        return Err(PyValueError::new_err("capacities must not be NaN"));
    }
    let caps: Vec<Capacity> = h.iter().map(|&v| Capacity::from_value(v)).collect();
    let inst = CsssbpInstance::new(build(graph)?, caps);
    let (res, _) =
        solve_csssbp(&inst, &config(seed, k)).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(to_floats(&res.d))
}

/// Heap-based Dijkstra baseline, for cross-checking.
#[pyfunction(name = "dijkstra_ssbp")]
fn py_dijkstra_ssbp(graph: &PyGraph, source: u32) -> PyResult<Vec<f64>> {
    let inst =
        SsbpInstance::new(build(graph)?, source).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(to_floats(&baselines::dijkstra_ssbp(&inst).d))
}

#[pymodule]
fn ssbp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(py_solve_ssbp, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_csssbp, m)?)?;
    m.add_function(wrap_pyfunction!(py_dijkstra_ssbp, m)?)?;
    Ok(())
}
