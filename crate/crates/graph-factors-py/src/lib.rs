//! Python bindings: a `Graph` class plus module-level functions mirroring
//! the library's deciders, searches, constructions and sweeps. Thin
//! translation layer; structured results cross the boundary as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict, PyList};

use graph_factors::analysis::{self, Property};
use graph_factors::constructions::{self, TheoremId};
use graph_factors::error::Error;
use graph_factors::format;
use graph_factors::graph::{self, Graph, NamedGraph, VertexSet};
use graph_factors::harness::{self, CrosscheckConfig, SweepConfig};
use graph_factors::matching;
use graph_factors::search::{self, FactorFamily};

fn lib_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vertex_set(vs: Vec<usize>) -> PyResult<VertexSet> {
    VertexSet::from_slice(&vs).map_err(lib_err)
}

/// Recursively convert a serde_json value into Python objects.
fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.unbind().into_any()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.unbind().into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.unbind().into_any()
        }
    })
}

fn to_py_dict<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let json = serde_json::to_value(value)
        .map_err(|e| PyValueError::new_err(format!("serialization failed: {e}")))?;
    json_to_py(py, &json)
}

fn parse_family(family: &str, n: Option<usize>) -> PyResult<FactorFamily> {
    match (family, n) {
        ("sn", Some(n)) => Ok(FactorFamily::Stars { max_leaves: n }),
        ("sn", None) => Err(PyValueError::new_err("family `sn` needs the star width n")),
        ("p2", None) => Ok(FactorFamily::PathsAtLeast { min_order: 2 }),
        ("p3", None) => Ok(FactorFamily::PathsAtLeast { min_order: 3 }),
        ("p2p3", None) => Ok(FactorFamily::P2P3),
        (other, Some(_)) if other != "sn" => {
            Err(PyValueError::new_err(format!("family `{other}` does not take n")))
        }
        (other, _) => Err(PyValueError::new_err(format!(
            "unknown family `{other}` (expected sn, p2, p3 or p2p3)"
        ))),
    }
}

fn parse_py_property(name: &str, n: Option<usize>) -> PyResult<Property> {
    match (name, n) {
        ("sn-factor", n) => Ok(Property::SnFactor { n: n.unwrap_or(2) }),
        ("p2-factor", None) => Ok(Property::P2Factor),
        ("p3-factor", None) => Ok(Property::P3Factor),
        ("p2-covered", None) => Ok(Property::P2Covered),
        ("p3-covered", None) => Ok(Property::P3Covered),
        ("p2p3-covered", None) => Ok(Property::P2P3Covered),
        (other, Some(_)) => Err(PyValueError::new_err(format!(
            "property `{other}` does not take n"
        ))),
        (other, None) => Err(PyValueError::new_err(format!(
            "unknown property `{other}`"
        ))),
    }
}

/// An undirected simple graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

impl From<Graph> for PyGraph {
    fn from(inner: Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=None))]
    fn new(n: usize, edges: Option<Vec<(usize, usize)>>) -> PyResult<Self> {
        Graph::from_edges(n, &edges.unwrap_or_default())
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        format::parse_graph6(text).map(PyGraph::from).map_err(lib_err)
    }

    #[staticmethod]
    fn complete(m: usize) -> PyResult<Self> {
        graph::make_named_graph(NamedGraph::Complete(m))
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    #[staticmethod]
    fn path(k: usize) -> PyResult<Self> {
        graph::make_named_graph(NamedGraph::Path(k))
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    #[staticmethod]
    fn cycle(k: usize) -> PyResult<Self> {
        graph::make_named_graph(NamedGraph::Cycle(k))
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    #[staticmethod]
    fn star(r: usize) -> PyResult<Self> {
        graph::make_named_graph(NamedGraph::Star(r))
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    #[staticmethod]
    fn empty(m: usize) -> PyResult<Self> {
        graph::make_named_graph(NamedGraph::Empty(m))
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    #[staticmethod]
    fn disjoint_union(parts: Vec<PyGraph>) -> PyResult<Self> {
        let graphs: Vec<Graph> = parts.into_iter().map(|p| p.inner).collect();
        graph::disjoint_union(&graphs).map(PyGraph::from).map_err(lib_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn min_degree(&self) -> PyResult<usize> {
        graph::min_degree(&self.inner).map_err(lib_err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        graph::components(&self.inner)
            .into_iter()
            .map(|c| c.to_vec())
            .collect()
    }

    fn join(&self, other: &PyGraph) -> PyResult<Self> {
        graph::join(&self.inner, &other.inner)
            .map(PyGraph::from)
            .map_err(lib_err)
    }

    /// Delete a vertex set; returns the induced subgraph and the map from
    /// its indices back to the original labeling.
    fn delete(&self, vertices: Vec<usize>) -> PyResult<(Self, Vec<usize>)> {
        let d = graph::delete_vertices(&self.inner, vertex_set(vertices)?).map_err(lib_err)?;
        Ok((PyGraph::from(d.graph), d.original_index))
    }

    fn isolated_count(&self, deleted: Vec<usize>) -> PyResult<usize> {
        graph::isolated_count(&self.inner, vertex_set(deleted)?).map_err(lib_err)
    }

    fn neighborhood_of_set(&self, vertices: Vec<usize>) -> PyResult<Vec<usize>> {
        graph::neighborhood_of_set(&self.inner, vertex_set(vertices)?)
            .map(|s| s.to_vec())
            .map_err(lib_err)
    }

    fn is_independent(&self, vertices: Vec<usize>) -> PyResult<bool> {
        graph::is_independent(&self.inner, vertex_set(vertices)?).map_err(lib_err)
    }

    fn is_k1r_free(&self, r: usize) -> PyResult<bool> {
        if r < 2 {
            return Err(PyValueError::new_err("r must be >= 2"));
        }
        Ok(graph::is_k1r_free(&self.inner, r))
    }

    #[pyo3(signature = (r))]
    fn find_induced_star(&self, py: Python<'_>, r: usize) -> PyResult<Py<PyAny>> {
        if r < 2 {
            return Err(PyValueError::new_err("r must be >= 2"));
        }
        match graph::find_induced_star(&self.inner, r) {
            None => Ok(py.None()),
            Some(w) => to_py_dict(py, &w),
        }
    }

    fn to_graph6(&self) -> PyResult<String> {
        format::write_graph6(&self.inner).map_err(lib_err)
    }

    fn canonical_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyBytes>> {
        let label = graph::canonical_form(&self.inner).map_err(lib_err)?;
        Ok(PyBytes::new(py, &label))
    }

    fn max_matching(&self) -> Vec<(usize, usize)> {
        matching::max_matching(&self.inner).edges().to_vec()
    }

    fn has_perfect_matching(&self) -> bool {
        matching::has_perfect_matching(&self.inner)
    }

    fn is_factor_critical(&self) -> bool {
        matching::is_factor_critical(&self.inner)
    }

    fn is_sun(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        match analysis::is_sun(&self.inner).map_err(lib_err)? {
            None => Ok(py.None()),
            Some(d) => to_py_dict(py, &d),
        }
    }

    fn sun_count(&self, deleted: Vec<usize>) -> PyResult<usize> {
        analysis::sun_count(&self.inner, vertex_set(deleted)?).map_err(lib_err)
    }

    fn epsilon1(&self, s: Vec<usize>) -> PyResult<usize> {
        analysis::epsilon1(&self.inner, vertex_set(s)?).map_err(lib_err)
    }

    fn epsilon2(&self, s: Vec<usize>) -> PyResult<usize> {
        analysis::epsilon2(&self.inner, vertex_set(s)?).map_err(lib_err)
    }

    fn epsilon3(&self, s: Vec<usize>) -> PyResult<usize> {
        analysis::epsilon3(&self.inner, vertex_set(s)?).map_err(lib_err)
    }

    /// Decide a property; returns `{"verdict": bool, "witness": {...}?}`.
    #[pyo3(signature = (property, n=None))]
    fn decide(&self, py: Python<'_>, property: &str, n: Option<usize>) -> PyResult<Py<PyAny>> {
        let prop = parse_py_property(property, n)?;
        let d = prop.decide(&self.inner).map_err(lib_err)?;
        to_py_dict(py, &d)
    }

    /// Independent-set form of the S_n criterion.
    fn decide_sn_independent_form(&self, py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
        let d = analysis::has_sn_factor_independent_form(&self.inner, n).map_err(lib_err)?;
        to_py_dict(py, &d)
    }

    /// Search for a spanning factor; family is one of `sn` (with n), `p2`,
    /// `p3`, `p2p3`. Returns the factor as a dict, or None.
    #[pyo3(signature = (family, n=None))]
    fn find_factor(&self, py: Python<'_>, family: &str, n: Option<usize>) -> PyResult<Py<PyAny>> {
        let fam = parse_family(family, n)?;
        match search::find_factor(&self.inner, fam).map_err(lib_err)? {
            None => Ok(py.None()),
            Some(f) => to_py_dict(py, &f),
        }
    }

    #[pyo3(signature = (family, u, v, n=None))]
    fn find_factor_covering_edge(
        &self,
        py: Python<'_>,
        family: &str,
        u: usize,
        v: usize,
        n: Option<usize>,
    ) -> PyResult<Py<PyAny>> {
        let fam = parse_family(family, n)?;
        match search::find_factor_covering_edge(&self.inner, fam, (u, v)).map_err(lib_err)? {
            None => Ok(py.None()),
            Some(f) => to_py_dict(py, &f),
        }
    }

    #[pyo3(signature = (family, n=None))]
    fn is_covered_bruteforce(&self, family: &str, n: Option<usize>) -> PyResult<bool> {
        let fam = parse_family(family, n)?;
        search::is_covered_bruteforce(&self.inner, fam).map_err(lib_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={:?})",
            self.inner.n(),
            self.inner.edges()
        )
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }
}

/// Big sun over a factor-critical base: one pendant per base vertex.
#[pyfunction]
fn big_sun(base: &PyGraph) -> PyResult<PyGraph> {
    constructions::big_sun(&base.inner)
        .map(PyGraph::from)
        .map_err(lib_err)
}

#[pyfunction]
fn odd_cycle(k: usize) -> PyResult<PyGraph> {
    constructions::odd_cycle(k).map(PyGraph::from).map_err(lib_err)
}

/// Extremal construction for a theorem id (`T1-1`, `T1-2`, `T2-1`, `T2-2`,
/// `T2-3`); returns a dict with the graph, its graph6 form, the expected
/// minimum degree, the witness and whether it violates.
#[pyfunction]
#[pyo3(signature = (theorem, r, n=None))]
fn sharpness_case(
    py: Python<'_>,
    theorem: &str,
    r: usize,
    n: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let id = TheoremId::parse(theorem).map_err(lib_err)?;
    let case = constructions::sharpness_graph(id, r, n).map_err(lib_err)?;
    let dict = PyDict::new(py);
    dict.set_item("theorem", case.theorem.to_string())?;
    dict.set_item("r", case.r)?;
    dict.set_item("n", case.n)?;
    dict.set_item("graph", PyGraph::from(case.graph.clone()).into_pyobject(py)?)?;
    dict.set_item("graph6", format::write_graph6(&case.graph).map_err(lib_err)?)?;
    dict.set_item("min_degree", case.expected_delta)?;
    dict.set_item("witness", to_py_dict(py, &case.expected_witness)?)?;
    dict.set_item("violating", case.violating)?;
    Ok(dict.unbind().into_any())
}

/// All graphs on exactly `n` vertices, deduplicated up to isomorphism by
/// default.
#[pyfunction]
#[pyo3(signature = (n, dedup=true, connected_only=false))]
fn enumerate_graphs(n: usize, dedup: bool, connected_only: bool) -> PyResult<Vec<PyGraph>> {
    Ok(harness::enumerate_graphs(n, dedup, connected_only)
        .map_err(lib_err)?
        .into_iter()
        .map(PyGraph::from)
        .collect())
}

/// Sweep a theorem over all graphs up to `max_vertices`; returns the report
/// as a dict.
#[pyfunction]
#[pyo3(signature = (theorem, r, max_vertices, n=None, dedup=true, weaken=0, jobs=0))]
#[allow(clippy::too_many_arguments)]
fn verify_theorem(
    py: Python<'_>,
    theorem: &str,
    r: usize,
    max_vertices: usize,
    n: Option<usize>,
    dedup: bool,
    weaken: usize,
    jobs: usize,
) -> PyResult<Py<PyAny>> {
    let id = TheoremId::parse(theorem).map_err(lib_err)?;
    let config = SweepConfig {
        max_vertices,
        dedup,
        connected_only: false,
        jobs,
    };
    let report = harness::verify_theorem(id, r, n, weaken, &config).map_err(lib_err)?;
    to_py_dict(py, &report)
}

/// Cross-check deciders against brute-force searches; returns the report as
/// a dict.
#[pyfunction]
#[pyo3(signature = (max_vertices, covered_max_vertices=None, jobs=0))]
fn oracle_crosscheck(
    py: Python<'_>,
    max_vertices: usize,
    covered_max_vertices: Option<usize>,
    jobs: usize,
) -> PyResult<Py<PyAny>> {
    let config = CrosscheckConfig {
        existence_max_vertices: max_vertices,
        covered_max_vertices: covered_max_vertices.unwrap_or_else(|| max_vertices.min(7)),
        sn_values: vec![2, 3],
        jobs,
    };
    let report = harness::oracle_crosscheck(&config).map_err(lib_err)?;
    to_py_dict(py, &report)
}

#[pymodule]
fn graph_factors_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(big_sun, m)?)?;
    m.add_function(wrap_pyfunction!(odd_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_case, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_crosscheck, m)?)?;
    Ok(())
}
