//! Python bindings: the Graph type plus the spectral, closed-form, and
//! verification entry points. Report-shaped results come back as JSON
//! strings matching the CLI body schema; scalars come back as floats.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use distspec_core::enumerate::{
    edge_switch_counterexample, verify_exhaustive, verify_structured, VerifyOpts,
};
use distspec_core::extremal;
use distspec_core::graph::{self, Graph};
use distspec_core::phipsi::{self, ComplementConfig, PsiRoute, SecularOpts};
use distspec_core::spectral::{distance_spectral_radius, SolveOpts};
use distspec_core::walks;
use distspec_core::Error;

/// Invalid input (exit classes 1 and 2 in the CLI) maps to ValueError;
/// numeric failures map to RuntimeError.
fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        1 | 2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_of<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// An undirected simple graph on vertices 0..n.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::new(n, edges).map_err(to_py)? })
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: Graph::path(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::cycle(n).map_err(to_py)? })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: Graph::complete(n) }
    }

    /// Parse an edge-list or graph6 text (format sniffed, like the CLI).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::parse_graph(text).map_err(to_py)? })
    }

    /// Realize a configuration string like "C3+P4+P4" as a graph.
    #[staticmethod]
    fn from_config(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: ComplementConfig::parse(text).map_err(to_py)?.realize() })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn complement(&self) -> Self {
        PyGraph { inner: self.inner.complement() }
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// Component multiset like "P5+P6" (arbitrary components named by size).
    fn component_summary(&self) -> String {
        self.inner.component_summary()
    }

    fn to_graph6(&self) -> PyResult<String> {
        graph::serialize_graph6(&self.inner).map_err(to_py)
    }

    fn to_edge_list(&self) -> String {
        graph::serialize_edge_list(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={}, components={})",
            self.inner.n(),
            self.inner.edge_count(),
            self.inner.component_summary()
        )
    }
}

/// Distance spectral radius of a connected graph.
#[pyfunction]
#[pyo3(signature = (g, tol = 1e-12))]
fn rho(g: PyRef<'_, PyGraph>, tol: f64) -> PyResult<f64> {
    let opts = SolveOpts { tol, keep_eigvec: false, ..SolveOpts::default() };
    Ok(distance_spectral_radius(&g.inner, &opts).map_err(to_py)?.value)
}

/// Distance spectral radius of the complement of a configuration, via the
/// secular equation (no matrix is ever built).
#[pyfunction]
#[pyo3(signature = (config, tol = 1e-12))]
fn rho_via_secular(config: &str, tol: f64) -> PyResult<f64> {
    let cfg = ComplementConfig::parse(config).map_err(to_py)?;
    let opts = SecularOpts { tol, ..SecularOpts::default() };
    Ok(phipsi::rho_via_secular(&cfg, &opts).map_err(to_py)?.value)
}

#[pyfunction]
fn phi_path(k: usize, lam: f64) -> PyResult<f64> {
    phipsi::phi_path(k, lam).map_err(to_py)
}

#[pyfunction]
fn phi_cycle(l: usize, lam: f64) -> PyResult<f64> {
    phipsi::phi_cycle(l, lam).map_err(to_py)
}

#[pyfunction]
fn phi_path_increment(k: usize, lam: f64) -> PyResult<f64> {
    phipsi::phi_path_increment(k, lam).map_err(to_py)
}

/// Psi of a configuration at lambda, by the closed forms.
#[pyfunction]
fn psi(config: &str, lam: f64) -> PyResult<f64> {
    let cfg = ComplementConfig::parse(config).map_err(to_py)?;
    phipsi::psi(&cfg, lam).map_err(to_py)
}

/// Psi of an arbitrary complement graph: (value, route) where route is
/// "closed-forms" or "general-solve".
#[pyfunction]
fn psi_graph(g: PyRef<'_, PyGraph>, lam: f64) -> PyResult<(f64, &'static str)> {
    let eval = phipsi::psi_graph(&g.inner, lam).map_err(to_py)?;
    let route = match eval.route {
        PsiRoute::ClosedForms => "closed-forms",
        PsiRoute::GeneralSolve => "general-solve",
    };
    Ok((eval.value, route))
}

/// Cancellation-free Psi_a - Psi_b at lambda; resolves orderings far below
/// float root precision.
#[pyfunction]
fn psi_difference(a: &str, b: &str, lam: f64) -> PyResult<f64> {
    let a = ComplementConfig::parse(a).map_err(to_py)?;
    let b = ComplementConfig::parse(b).map_err(to_py)?;
    phipsi::psi_difference(&a, &b, lam).map_err(to_py)
}

/// "less", "greater", or "equal" for rho(a) vs rho(b).
#[pyfunction]
fn compare_rho(a: &str, b: &str) -> PyResult<&'static str> {
    let a = ComplementConfig::parse(a).map_err(to_py)?;
    let b = ComplementConfig::parse(b).map_err(to_py)?;
    let cmp = phipsi::compare_rho(&a, &b, &SecularOpts::default()).map_err(to_py)?;
    Ok(match cmp.ordering {
        phipsi::RhoOrdering::Less => "less",
        phipsi::RhoOrdering::Greater => "greater",
        phipsi::RhoOrdering::Equal => "equal",
    })
}

/// Closed walk-count sequence w_0..w_depth.
#[pyfunction]
#[pyo3(signature = (g, depth = 20))]
fn walk_counts(g: PyRef<'_, PyGraph>, depth: usize) -> PyResult<Vec<u128>> {
    Ok(walks::walk_counts(&g.inner, depth).map_err(to_py)?.counts)
}

/// Truncated Neumann sum for Psi: (partial_sum, tail_bound or None).
#[pyfunction]
#[pyo3(signature = (g, lam, depth = 20))]
fn psi_via_neumann(g: PyRef<'_, PyGraph>, lam: f64, depth: usize) -> PyResult<(f64, Option<f64>)> {
    let e = walks::psi_via_neumann(&g.inner, lam, depth).map_err(to_py)?;
    Ok((e.partial_sum, e.tail_bound))
}

/// Walk-dominance verdict of a complement against the s-matching, as JSON.
#[pyfunction]
#[pyo3(signature = (g, s, depth = 20))]
fn walk_dominance(g: PyRef<'_, PyGraph>, s: usize, depth: usize) -> PyResult<String> {
    let v = walks::walk_dominance_check(&g.inner, g.inner.n(), s, depth).map_err(to_py)?;
    json_of(&v)
}

/// Partition of `total` into `c` near-equal parts, ascending.
#[pyfunction]
fn balanced_partition(total: usize, c: usize) -> PyResult<Vec<usize>> {
    extremal::balanced_partition(total, c).map_err(to_py)
}

/// The extremal construction for m edges: (n, s, partition, graph).
#[pyfunction]
fn extremal_graph(m: u64) -> PyResult<(usize, usize, Vec<usize>, PyGraph)> {
    let spec = extremal::params_from_m(m).map_err(to_py)?;
    let g = extremal::build_extremal_graph(&spec);
    Ok((spec.n, spec.s, spec.parts.clone(), PyGraph { inner: g }))
}

#[pyfunction]
#[pyo3(signature = (n, s))]
fn run_verify_structured(n: usize, s: usize) -> PyResult<String> {
    json_of(&verify_structured(n, s, &VerifyOpts::default(), None).map_err(to_py)?)
}

#[pyfunction]
fn run_verify_exhaustive(m: u64) -> PyResult<String> {
    json_of(&verify_exhaustive(m, &VerifyOpts::default(), None).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (n, s))]
fn run_verify_large_s(n: usize, s: usize) -> PyResult<String> {
    json_of(&walks::verify_large_s(n, s, &VerifyOpts::default(), None).map_err(to_py)?)
}

/// The n = 11 edge-switch counterexample report, as JSON.
#[pyfunction]
fn counterexample() -> PyResult<String> {
    json_of(&edge_switch_counterexample(&VerifyOpts::default()).map_err(to_py)?)
}

#[pymodule]
fn distspec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(rho_via_secular, m)?)?;
    m.add_function(wrap_pyfunction!(phi_path, m)?)?;
    m.add_function(wrap_pyfunction!(phi_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(phi_path_increment, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_graph, m)?)?;
    m.add_function(wrap_pyfunction!(psi_difference, m)?)?;
    m.add_function(wrap_pyfunction!(compare_rho, m)?)?;
    m.add_function(wrap_pyfunction!(walk_counts, m)?)?;
    m.add_function(wrap_pyfunction!(psi_via_neumann, m)?)?;
    m.add_function(wrap_pyfunction!(walk_dominance, m)?)?;
    m.add_function(wrap_pyfunction!(balanced_partition, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_graph, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify_structured, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify_exhaustive, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify_large_s, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    Ok(())
}
