//! Python bindings. Spaces and distance sets may be passed either as
//! objects or in their text forms (`"zq:q=3,n=4"`, `[1, 3]` or `"1,3"`).

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rtgraph::formula;
use rtgraph::verify::{self, Claim, VerifyOptions};
use rtgraph::{ChromaticResult, DistanceSet, Error, Graph, GraphExpr, Limits, Point, SpaceSpec};

create_exception!(pyrtgraph, SizeLimitError, PyValueError, "A resource limit was exceeded.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::SizeLimit { .. } => SizeLimitError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn limits(max_points: Option<usize>) -> Limits {
    let mut limits = Limits::from_env();
    if let Some(v) = max_points {
        limits.max_points = v;
    }
    limits
}

#[pyclass(name = "Space", frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySpace {
    inner: SpaceSpec,
}

impl std::fmt::Display for PySpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

fn space_arg(obj: &Bound<'_, PyAny>) -> PyResult<SpaceSpec> {
    if let Ok(space) = obj.cast::<PySpace>() {
        return Ok(space.get().inner.clone());
    }
    let text: String = obj.extract()?;
    text.parse().map_err(to_py)
}

fn distances_arg(obj: &Bound<'_, PyAny>) -> PyResult<DistanceSet> {
    if let Ok(text) = obj.extract::<String>() {
        return text.parse().map_err(to_py);
    }
    DistanceSet::new(obj.extract::<Vec<usize>>()?).map_err(to_py)
}

fn instance(space: &Bound<'_, PyAny>, distances: &Bound<'_, PyAny>) -> PyResult<(SpaceSpec, DistanceSet)> {
    let space = space_arg(space)?;
    let distances = distances_arg(distances)?;
    distances.check_for(&space).map_err(to_py)?;
    Ok((space, distances))
}

#[pymethods]
impl PySpace {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PySpace { inner: text.parse().map_err(to_py)? })
    }

    #[staticmethod]
    fn zq(q: u32, n: usize) -> PyResult<Self> {
        Ok(PySpace { inner: SpaceSpec::zq(q, n).map_err(to_py)? })
    }

    #[staticmethod]
    fn sn(n: usize) -> PyResult<Self> {
        Ok(PySpace { inner: SpaceSpec::sn(n).map_err(to_py)? })
    }

    #[staticmethod]
    fn product(sizes: Vec<u32>) -> PyResult<Self> {
        Ok(PySpace { inner: SpaceSpec::product(sizes).map_err(to_py)? })
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn cardinality(&self) -> BigUint {
        self.inner.cardinality()
    }

    #[getter]
    fn math_name(&self) -> String {
        self.inner.math_name()
    }

    fn distance_values(&self) -> Vec<usize> {
        self.inner.distance_values()
    }

    fn distance(&self, x: Vec<u32>, y: Vec<u32>) -> PyResult<usize> {
        self.inner.distance(&Point::new(x), &Point::new(y)).map_err(to_py)
    }

    #[pyo3(signature = (max_points=None))]
    fn enumerate(&self, max_points: Option<usize>) -> PyResult<Vec<Vec<u32>>> {
        let points = self.inner.enumerate(limits(max_points).max_points).map_err(to_py)?;
        Ok(points.into_iter().map(Point::into_coords).collect())
    }

    fn __repr__(&self) -> String {
        format!("Space('{}')", self.inner)
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph on `vertex_count` vertices with the given `(u, v)` edges.
    #[new]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edges(vertex_count, &edges).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_json(text).map_err(to_py)? })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn space(&self) -> Option<String> {
        self.inner.space().map(ToString::to_string)
    }

    #[getter]
    fn distances(&self) -> Option<Vec<usize>> {
        self.inner.distances().map(|d| d.values().to_vec())
    }

    #[getter]
    fn labels(&self) -> Option<Vec<Vec<u32>>> {
        self.inner
            .labels()
            .map(|ls| ls.iter().map(|p| p.coords().to_vec()).collect())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<u32>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.inner.has_edge(u, v))
    }

    /// Common degree, or `None` when the graph is not regular.
    fn regular_degree(&self) -> Option<usize> {
        self.inner.is_regular()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        self.inner.connected_components().members()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v < self.inner.vertex_count() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("vertex {v} out of range")))
        }
    }
}

#[pyclass(name = "Expr", frozen, eq, str)]
#[derive(PartialEq)]
struct PyExpr {
    inner: GraphExpr,
}

impl std::fmt::Display for PyExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

#[pymethods]
impl PyExpr {
    /// Parses expression text such as `"3*[3*K_3(1)]^3"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyExpr { inner: text.parse().map_err(to_py)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyExpr { inner: GraphExpr::from_json(text).map_err(to_py)? })
    }

    #[getter]
    fn vertex_count(&self) -> BigUint {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> BigUint {
        self.inner.edge_count()
    }

    #[getter]
    fn degree(&self) -> BigUint {
        self.inner.degree()
    }

    #[getter]
    fn component_count(&self) -> BigUint {
        self.inner.component_count()
    }

    #[getter]
    fn chromatic_number(&self) -> BigUint {
        self.inner.chromatic_number()
    }

    #[pyo3(signature = (max_points=None))]
    fn evaluate(&self, max_points: Option<usize>) -> PyResult<PyGraph> {
        let limits = limits(max_points);
        let graph = self.inner.evaluate(limits.max_points, limits.max_edges).map_err(to_py)?;
        Ok(PyGraph { inner: graph })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Expr('{}')", self.inner)
    }
}

/// Brute-force distance graph `G(space, distances)`.
#[pyfunction]
#[pyo3(signature = (space, distances, max_points=None))]
fn build_distance_graph(
    space: &Bound<'_, PyAny>,
    distances: &Bound<'_, PyAny>,
    max_points: Option<usize>,
) -> PyResult<PyGraph> {
    let (space, distances) = instance(space, distances)?;
    let graph = rtgraph::build_distance_graph(&space, &distances, &limits(max_points)).map_err(to_py)?;
    Ok(PyGraph { inner: graph })
}

/// Closed-form structure expression of `G(space, distances)`.
#[pyfunction]
fn structure_expr(space: &Bound<'_, PyAny>, distances: &Bound<'_, PyAny>) -> PyResult<PyExpr> {
    let (space, distances) = instance(space, distances)?;
    Ok(PyExpr { inner: formula::structure_expr(&space, &distances).map_err(to_py)? })
}

/// Vertex map from `g` to `h`, or `None` when they are not isomorphic.
#[pyfunction]
fn find_isomorphism(g: &PyGraph, h: &PyGraph) -> PyResult<Option<Vec<usize>>> {
    rtgraph::find_isomorphism(&g.inner, &h.inner, &Limits::from_env()).map_err(to_py)
}

#[pyfunction]
fn is_isomorphism(g: &PyGraph, h: &PyGraph, mapping: Vec<usize>) -> bool {
    rtgraph::is_isomorphism(&g.inner, &h.inner, &mapping)
}

/// Exact chromatic number as a dict with keys `exact` (or `None`), `lower`,
/// `upper` and `colors` (a proper coloring).
#[pyfunction]
#[pyo3(signature = (graph, max_component=None, budget=None))]
fn chromatic_number<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    max_component: Option<usize>,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut limits = Limits::from_env();
    if let Some(v) = max_component {
        limits.max_coloring_component = v;
    }
    if let Some(v) = budget {
        limits.coloring_node_budget = v;
    }
    let result = py
        .detach(|| rtgraph::chromatic_number(&graph.inner, &limits))
        .map_err(to_py)?;
    let (lower, upper) = result.bounds();
    let out = PyDict::new(py);
    let exact = match &result {
        ChromaticResult::Exact { chromatic_number, .. } => Some(*chromatic_number),
        ChromaticResult::Inconclusive { .. } => None,
    };
    out.set_item("exact", exact)?;
    out.set_item("lower", lower)?;
    out.set_item("upper", upper)?;
    out.set_item("colors", result.witness().colors.clone())?;
    Ok(out)
}

/// Distance set of a `Z_q^n` graph with this degree, or `None`.
#[pyfunction]
fn recover_zq(q: u32, degree: BigUint) -> PyResult<Option<Vec<usize>>> {
    recovered(verify::recover_distance_set_zq(q, &degree))
}

/// Distance set of an `S_n` graph with this degree, or `None`.
#[pyfunction]
fn recover_sn(degree: BigUint) -> PyResult<Option<Vec<usize>>> {
    recovered(verify::recover_distance_set_sn(&degree))
}

fn recovered(result: rtgraph::Result<DistanceSet>) -> PyResult<Option<Vec<usize>>> {
    match result {
        Ok(d) => Ok(Some(d.values().to_vec())),
        Err(Error::NoPreimage(_)) => Ok(None),
        Err(e) => Err(to_py(e)),
    }
}

/// Checks claims and returns one JSON report per line. With neither
/// `distances` nor `all_distance_sets`, only space-wide claims can run.
#[pyfunction]
#[pyo3(signature = (space, distances=None, claims=None, all_distance_sets=false, seed=verify::DEFAULT_SEED, max_points=None))]
fn verify_claims(
    py: Python<'_>,
    space: &Bound<'_, PyAny>,
    distances: Option<&Bound<'_, PyAny>>,
    claims: Option<Vec<String>>,
    all_distance_sets: bool,
    seed: u64,
    max_points: Option<usize>,
) -> PyResult<Vec<String>> {
    let space = space_arg(space)?;
    let claims = claims
        .unwrap_or_else(|| vec!["structure".into()])
        .iter()
        .map(|c| c.parse::<Claim>())
        .collect::<rtgraph::Result<Vec<_>>>()
        .map_err(to_py)?;
    let sets = match (distances, all_distance_sets) {
        (Some(_), true) => return Err(PyValueError::new_err("give distances or all_distance_sets, not both")),
        (Some(d), false) => {
            let d = distances_arg(d)?;
            d.check_for(&space).map_err(to_py)?;
            vec![d]
        }
        (None, true) => DistanceSet::all_nonempty_for(&space),
        (None, false) => Vec::new(),
    };
    let options = VerifyOptions {
        limits: limits(max_points),
        seed,
        ..VerifyOptions::default()
    };
    let reports = py
        .detach(|| verify::verify_space(&space, &sets, &claims, &options))
        .map_err(to_py)?;
    Ok(reports.iter().map(|r| r.to_json_line()).collect())
}

#[pymodule]
fn pyrtgraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyExpr>()?;
    m.add("SizeLimitError", m.py().get_type::<SizeLimitError>())?;
    m.add_function(wrap_pyfunction!(build_distance_graph, m)?)?;
    m.add_function(wrap_pyfunction!(structure_expr, m)?)?;
    m.add_function(wrap_pyfunction!(find_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(recover_zq, m)?)?;
    m.add_function(wrap_pyfunction!(recover_sn, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    Ok(())
}
