//! Python bindings for the packing library.

use hyperpack_core::cycles::write_packing_string;
use hyperpack_core::hypercore::{parse_hypergraph_str, write_hypergraph_string};
use hyperpack_core::{self as core, AuditMode, Error, ParamOverrides, PropertyFamily, Regime};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e.exit_code() {
        4 => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// A k-uniform hypergraph on vertices 1..=n.
#[pyclass(frozen)]
#[derive(Clone)]
struct Hypergraph(core::Hypergraph);

#[pymethods]
impl Hypergraph {
    #[new]
    fn new(n: u32, k: usize, edges: Vec<Vec<u32>>) -> PyResult<Self> {
        core::Hypergraph::new(n, k, edges).map(Self).map_err(py_err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, k, p, seed=0))]
    fn generate(n: u32, k: usize, p: f64, seed: u64) -> PyResult<Self> {
        core::Hypergraph::generate(n, k, p, seed).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn complete(n: u32, k: usize) -> PyResult<Self> {
        core::Hypergraph::complete(n, k).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_hypergraph_str(text).map(Self).map_err(py_err)
    }

    fn to_text(&self) -> String {
        write_hypergraph_string(&self.0)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn density(&self) -> f64 {
        self.0.density()
    }

    fn edges(&self) -> Vec<Vec<u32>> {
        self.0.edges().map(<[u32]>::to_vec).collect()
    }

    fn contains(&self, edge: Vec<u32>) -> bool {
        self.0.contains(&edge)
    }

    /// Number of edges containing `set`, for `0 < len(set) < k`.
    fn degree(&self, set: Vec<u32>) -> PyResult<usize> {
        let s = core::VertexSet::new(set, self.0.n()).map_err(py_err)?;
        Ok(self.0.neighborhood(&s).map_err(py_err)?.degree)
    }

    fn __len__(&self) -> usize {
        self.0.m()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(n={}, k={}, m={})", self.0.n(), self.0.k(), self.0.m())
    }
}

/// Runs the packing pipeline. Returns the packing in text form and the
/// report as JSON.
#[pyfunction]
#[pyo3(signature = (h, ell, seed=0, r=None, eps=None, f0=None, pseudo_random=false, audit=None, workers=None))]
#[allow(clippy::too_many_arguments)]
fn run_packing(
    py: Python<'_>,
    h: &Hypergraph,
    ell: usize,
    seed: u64,
    r: Option<f64>,
    eps: Option<f64>,
    f0: Option<f64>,
    pseudo_random: bool,
    audit: Option<usize>,
    workers: Option<usize>,
) -> PyResult<(String, String)> {
    let mut config = core::RunConfig::new(core::InputSource::InMemory(h.0.clone()), ell, seed);
    config.overrides = ParamOverrides { r, eps, f0 };
    if pseudo_random {
        config.regime = Regime::PseudoRandom;
    }
    config.audit = audit.map(|count| if count == 0 { AuditMode::Exact } else { AuditMode::Sampled(count) });
    config.workers = workers;
    let (result, report) = py.allow_threads(|| core::run_packing(&config)).map_err(py_err)?;
    Ok((write_packing_string(&result), core::emit_report(&report)))
}

/// Checks that `order` spans a type-ℓ Hamilton cycle of `h`; returns the
/// verdict as JSON.
#[pyfunction]
fn validate_cycle(h: &Hypergraph, ell: usize, order: Vec<u32>) -> PyResult<String> {
    let cycle = core::TypeLCycle::from_order(h.0.k(), ell, order).map_err(py_err)?;
    to_json(&core::validate_cycle(&h.0, &cycle).map_err(py_err)?)
}

/// Partition-scheme parameters as JSON.
#[pyfunction]
#[pyo3(signature = (n, k, ell, p, pseudo_random=false, r=None, eps=None, f0=None))]
#[allow(clippy::too_many_arguments)]
fn scheme_parameters(
    n: u32,
    k: usize,
    ell: usize,
    p: f64,
    pseudo_random: bool,
    r: Option<f64>,
    eps: Option<f64>,
    f0: Option<f64>,
) -> PyResult<String> {
    let regime = if pseudo_random { Regime::PseudoRandom } else { Regime::Random };
    let params = core::scheme_parameters(n, k, ell, p, None, regime, ParamOverrides { r, eps, f0 }).map_err(py_err)?;
    to_json(&params)
}

/// Exact audit of the degree properties; returns one JSON report per property.
#[pyfunction]
#[pyo3(signature = (h, ell, eps=0.1, seed=0))]
fn audit_degrees(h: &Hypergraph, ell: usize, eps: f64, seed: u64) -> PyResult<Vec<String>> {
    let family = if ell == h.0.k() { PropertyFamily::R } else { PropertyFamily::P };
    core::audit_degree_properties(&h.0, ell, eps, AuditMode::Exact, family, seed)
        .map_err(py_err)?
        .iter()
        .map(to_json)
        .collect()
}

fn bipartite(n: usize, edges: Vec<(u32, u32)>) -> PyResult<core::BipartiteGraph> {
    core::BipartiteGraph::new(n, edges).map_err(py_err)
}

/// Edge-disjoint perfect matchings of a balanced bipartite graph with sides
/// 0..n; each matching is a list of `(a, b)` pairs.
#[pyfunction]
fn pack_perfect_matchings(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Vec<Vec<(u32, u32)>>> {
    Ok(core::pack_perfect_matchings(&bipartite(n, edges)?).map_err(py_err)?.matchings)
}

/// Maximum number of edge-disjoint perfect matchings by max flow.
#[pyfunction]
fn max_disjoint_pm(n: usize, edges: Vec<(u32, u32)>) -> PyResult<usize> {
    Ok(core::max_disjoint_pm_flow(&bipartite(n, edges)?).t)
}

/// Exhaustive count of edge-disjoint perfect matchings for sides of at most 7.
#[pyfunction]
fn brute_force_pm_oracle(n: usize, edges: Vec<(u32, u32)>) -> PyResult<usize> {
    core::brute_force_pm_oracle(&bipartite(n, edges)?).map_err(py_err)
}

/// Edge-disjoint Hamilton cycles of a simple graph on 0..n.
#[pyfunction]
#[pyo3(signature = (n, edges, target=None, seed=0))]
fn pack_graph_hamilton(n: usize, edges: Vec<(u32, u32)>, target: Option<usize>, seed: u64) -> PyResult<Vec<Vec<u32>>> {
    let g = core::SimpleGraph::new(n, edges).map_err(py_err)?;
    Ok(core::pack_graph_hamilton(&g, target, seed).cycles)
}

#[pymodule]
fn hyperpack(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hypergraph>()?;
    m.add_function(wrap_pyfunction!(run_packing, m)?)?;
    m.add_function(wrap_pyfunction!(validate_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(scheme_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(audit_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(pack_perfect_matchings, m)?)?;
    m.add_function(wrap_pyfunction!(max_disjoint_pm, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_pm_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(pack_graph_hamilton, m)?)?;
    Ok(())
}
