//! Python bindings: graphs, relaxation decisions, theta solves, level-1
//! moment feasibility, and Choi-matrix certificates. Structured reports
//! are returned as JSON strings to keep the surface dependency-free.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use isorelax::conic::{ConeKind, SolverOptions};
use isorelax::graphs::Graph as CoreGraph;
use isorelax::relations::Relation;

fn val_err(msg: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn opts(tol: f64, max_iters: usize) -> SolverOptions {
    SolverOptions { tol, max_iters }
}

fn parse_cone(s: &str) -> PyResult<ConeKind> {
    s.parse::<ConeKind>().map_err(val_err)
}

/// Undirected simple graph on vertices 0..n.
#[pyclass(name = "Graph")]
#[derive(Clone)]
struct PyGraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = CoreGraph::from_edges(n, edges.iter().copied()).map_err(val_err)?;
        Ok(PyGraph { inner })
    }

    /// Named constructions: q4, hoffman, shrikhande, rook4, two_triangles,
    /// cycle n, complete n, empty n, path n, dist_power n d1 [d2 ...].
    #[staticmethod]
    #[pyo3(signature = (name, params = vec![]))]
    fn named(name: &str, params: Vec<usize>) -> PyResult<Self> {
        let inner = isorelax::graphs::named_graph(name, &params).map_err(val_err)?;
        Ok(PyGraph { inner })
    }

    /// Parses the edge-list file format ("n m" header, one "u v" per line).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = isorelax::graphs::parse_graph(text).map_err(val_err)?;
        Ok(PyGraph { inner })
    }

    fn serialize(&self) -> String {
        isorelax::graphs::serialize_graph(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(val_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn complement(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    fn disjoint_union(&self, other: &PyGraph) -> PyGraph {
        PyGraph {
            inner: self.inner.disjoint_union(&other.inner),
        }
    }

    /// Graph on vertex pairs with edges exactly where the relation types
    /// (equal / adjacent / distinct non-adjacent) disagree.
    fn isomorphism_product(&self, other: &PyGraph) -> PyGraph {
        PyGraph {
            inner: isorelax::graphs::isomorphism_product(&self.inner, &other.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.n(),
            self.inner.num_edges()
        )
    }
}

/// Decides one relaxation ("exact", "dnn", "psd", "fractional") by its
/// exact algebraic route; returns the verdict as a JSON string.
#[pyfunction]
fn decide_relation(g: &PyGraph, h: &PyGraph, relation: &str) -> PyResult<String> {
    let rel: Relation = relation.parse().map_err(val_err)?;
    let verdict = isorelax::relations::decide_relation(&g.inner, &h.inner, rel);
    Ok(verdict.to_json().to_string())
}

/// All four relations at once: (exact, dnn, psd, fractional).
#[pyfunction]
fn decide_all(g: &PyGraph, h: &PyGraph) -> (bool, bool, bool, bool) {
    let [a, b, c, d] = isorelax::relations::decide_all(&g.inner, &h.inner);
    (a, b, c, d)
}

/// Lexicographically least isomorphism, or None.
#[pyfunction]
fn exact_isomorphism(g: &PyGraph, h: &PyGraph) -> Option<Vec<usize>> {
    isorelax::graphs::exact_isomorphism(&g.inner, &h.inner)
}

/// 2-dimensional color-refinement equivalence (coherent algebras match).
#[pyfunction]
fn wl_equivalent(g: &PyGraph, h: &PyGraph) -> bool {
    isorelax::wl::wl_equivalent(&g.inner, &h.inner).is_some()
}

/// Partial equivalence of the partially coherent adjacency algebras.
#[pyfunction]
fn partial_equivalence(g: &PyGraph, h: &PyGraph) -> bool {
    isorelax::closure::partial_equivalence(&g.inner, &h.inner)
}

/// Existence of a doubly stochastic D with A_G D = D A_H.
#[pyfunction]
fn fractional_isomorphic(g: &PyGraph, h: &PyGraph) -> bool {
    isorelax::spectral::fractional_isomorphic(&g.inner, &h.inner).is_some()
}

/// Exact equality of adjacency characteristic polynomials.
#[pyfunction]
fn adjacency_cospectral(g: &PyGraph, h: &PyGraph) -> bool {
    isorelax::spectral::adjacency_cospectral(&g.inner, &h.inner)
}

#[pyfunction]
fn contains_clique(g: &PyGraph, k: usize) -> bool {
    isorelax::graphs::contains_clique(&g.inner, k)
}

/// Maximizes the entry sum of a unit-trace cone matrix vanishing on
/// edges ("psd" gives the Lovász theta, "dnn" the Schrijver variant).
/// Returns a JSON summary.
#[pyfunction]
#[pyo3(signature = (g, cone = "psd", tol = 1e-6, max_iters = 100_000))]
fn solve_theta(g: &PyGraph, cone: &str, tol: f64, max_iters: usize) -> PyResult<String> {
    let cone = parse_cone(cone)?;
    let sol = isorelax::conic::solve_theta(&g.inner, cone, &opts(tol, max_iters));
    Ok(serde_json::json!({
        "cone": cone.to_string(),
        "value": sol.value,
        "primal_residual": sol.primal_residual,
        "dual_residual": sol.dual_residual,
        "min_eigenvalue": sol.min_eigenvalue,
        "min_entry": sol.min_entry,
        "iterations": sol.iterations,
        "converged": sol.converged,
    })
    .to_string())
}

/// Numeric isomorphism decision: theta of the isomorphism product attains
/// |V_G| iff the graphs are cone-isomorphic. Returns a JSON report whose
/// "holds" field is true/false/null (undecided).
#[pyfunction]
#[pyo3(signature = (g, h, cone = "dnn", tol = 1e-6, max_iters = 100_000))]
fn k_isomorphic_sdp(
    g: &PyGraph,
    h: &PyGraph,
    cone: &str,
    tol: f64,
    max_iters: usize,
) -> PyResult<String> {
    let cone = parse_cone(cone)?;
    let (report, _sol) =
        isorelax::conic::k_isomorphic_sdp(&g.inner, &h.inner, cone, &opts(tol, max_iters));
    serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Level-1 moment-matrix feasibility ("feasible" / "infeasible" /
/// "undecided"), cross-checked against the exact algebraic decision.
#[pyfunction]
#[pyo3(signature = (g, h, nonneg = false, tol = 1e-6, max_iters = 100_000))]
fn lasserre1_feasible(
    g: &PyGraph,
    h: &PyGraph,
    nonneg: bool,
    tol: f64,
    max_iters: usize,
) -> PyResult<String> {
    let feas =
        isorelax::conic::lasserre1_feasible(&g.inner, &h.inner, nonneg, &opts(tol, max_iters))
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(match feas {
        isorelax::conic::Feasibility::Feasible => "feasible",
        isorelax::conic::Feasibility::Infeasible => "infeasible",
        isorelax::conic::Feasibility::Undecided => "undecided",
    }
    .to_string())
}

/// Exact doubly nonnegative Choi matrix built from the 2-WL class pairing
/// (requires the graphs to be WL-equivalent), serialized in the
/// iso-matrix file format.
#[pyfunction]
fn dnn_choi_from_wl(g: &PyGraph, h: &PyGraph) -> PyResult<String> {
    let eq = isorelax::wl::wl_equivalent(&g.inner, &h.inner)
        .ok_or_else(|| val_err("graphs are not WL-equivalent"))?;
    let iso = isorelax::isomaps::build_dnn_choi_from_wl(&g.inner, &h.inner, &eq);
    Ok(isorelax::io::serialize_iso_matrix(&iso, "G", "H"))
}

/// Verifies an iso-matrix file against its graphs; returns the condition
/// report as a JSON string.
#[pyfunction]
fn verify_iso_matrix(text: &str, g: &PyGraph, h: &PyGraph) -> PyResult<String> {
    let (iso, _header) = isorelax::io::parse_iso_matrix(text, g.inner.n(), h.inner.n())
        .map_err(val_err)?;
    let report = isorelax::isomaps::verify_iso_matrix(&iso, &g.inner, &h.inner);
    serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Kraus factors of the map of a PSD iso-matrix, as nested lists
/// (each factor is |V_H| x |V_G|).
#[pyfunction]
fn kraus_factors(text: &str, g: &PyGraph, h: &PyGraph) -> PyResult<Vec<Vec<Vec<f64>>>> {
    let (iso, _header) = isorelax::io::parse_iso_matrix(text, g.inner.n(), h.inner.n())
        .map_err(val_err)?;
    let ks = isorelax::isomaps::kraus_decompose(&iso).map_err(val_err)?;
    Ok(ks
        .iter()
        .map(|k| {
            (0..k.nrows())
                .map(|i| (0..k.ncols()).map(|j| k[(i, j)]).collect())
                .collect()
        })
        .collect())
}

#[pymodule]
fn isorelax_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(decide_relation, m)?)?;
    m.add_function(wrap_pyfunction!(decide_all, m)?)?;
    m.add_function(wrap_pyfunction!(exact_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(wl_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(partial_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(adjacency_cospectral, m)?)?;
    m.add_function(wrap_pyfunction!(contains_clique, m)?)?;
    m.add_function(wrap_pyfunction!(solve_theta, m)?)?;
    m.add_function(wrap_pyfunction!(k_isomorphic_sdp, m)?)?;
    m.add_function(wrap_pyfunction!(lasserre1_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(dnn_choi_from_wl, m)?)?;
    m.add_function(wrap_pyfunction!(verify_iso_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(kraus_factors, m)?)?;
    Ok(())
}
