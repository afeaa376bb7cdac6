//! Python bindings: shapes, sets, topologies, neighbourhoods, maps, products
//! and compactness. Library errors surface as `ValueError`.

use std::collections::BTreeMap;
use std::sync::Arc;

use mftop::cover::{check_compact, check_product_compact, CompactnessConfig, CompactnessReport};
use mftop::{
    nbd_family, nbd_from_topology, product_topology, topology_from_nbd, verify_nbd_axioms, Factor,
    Grade, MultiFuzzySet, MultiFuzzyTopology, PointMap, ProductSpace, SpaceMap, TopologyKind,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: mftop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind(name: &str) -> PyResult<TopologyKind> {
    match name {
        "lowen" => Ok(TopologyKind::Lowen),
        "chang" => Ok(TopologyKind::Chang),
        other => Err(PyValueError::new_err(format!(
            "unknown kind {other:?}; expected \"lowen\" or \"chang\""
        ))),
    }
}

/// Points, tuple dimension `n` and grade denominator `D`.
#[pyclass(name = "Shape", frozen)]
#[derive(Clone)]
struct PyShape(Arc<mftop::Shape>);

#[pymethods]
impl PyShape {
    #[new]
    fn new(points: Vec<String>, n: usize, denominator: u32) -> PyResult<Self> {
        mftop::Shape::build(points, n, denominator)
            .map(PyShape)
            .map_err(err)
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.0.universe().labels().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.dimension()
    }

    #[getter]
    fn denominator(&self) -> u32 {
        self.0.chain().denominator()
    }

    /// Every set on the grid (may be large).
    fn all_sets(&self) -> PyResult<Vec<PySet>> {
        Ok(mftop::grid::all_sets(&self.0)
            .map_err(err)?
            .into_iter()
            .map(PySet)
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Shape({:?}, n={}, D={})",
            self.points(),
            self.n(),
            self.denominator()
        )
    }
}

/// A multi-fuzzy set; grades are numerators over the shape's denominator.
#[pyclass(name = "MultiFuzzySet", frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySet(MultiFuzzySet);

#[pymethods]
impl PySet {
    /// `rows` maps every point to its tuple of numerators.
    #[new]
    fn new(shape: &PyShape, rows: BTreeMap<String, Vec<u32>>) -> PyResult<Self> {
        let shape = &shape.0;
        let mut grades = Vec::with_capacity(shape.cells());
        for label in shape.universe().labels() {
            let tuple = rows
                .get(label)
                .ok_or_else(|| PyValueError::new_err(format!("missing point {label}")))?;
            for &k in tuple {
                grades.push(shape.chain().grade(k).map_err(err)?);
            }
        }
        if let Some(extra) = rows.keys().find(|k| shape.universe().index_of(k).is_none()) {
            return Err(PyValueError::new_err(format!("unknown point {extra}")));
        }
        MultiFuzzySet::from_grades(shape.clone(), grades)
            .map(PySet)
            .map_err(err)
    }

    #[staticmethod]
    fn null(shape: &PyShape) -> Self {
        PySet(MultiFuzzySet::null(shape.0.clone()))
    }

    #[staticmethod]
    fn absolute(shape: &PyShape) -> Self {
        PySet(MultiFuzzySet::absolute(shape.0.clone()))
    }

    #[staticmethod]
    fn constant(shape: &PyShape, tuple: Vec<u32>) -> PyResult<Self> {
        let chain = shape.0.chain();
        let grades = tuple
            .into_iter()
            .map(|k| chain.grade(k))
            .collect::<Result<Vec<Grade>, _>>()
            .map_err(err)?;
        MultiFuzzySet::constant(shape.0.clone(), &grades)
            .map(PySet)
            .map_err(err)
    }

    fn meet(&self, other: &PySet) -> PyResult<PySet> {
        self.0.meet(&other.0).map(PySet).map_err(err)
    }

    fn join(&self, other: &PySet) -> PyResult<PySet> {
        self.0.join_with(&other.0).map(PySet).map_err(err)
    }

    fn complement(&self) -> PySet {
        PySet(self.0.complement())
    }

    fn leq(&self, other: &PySet) -> PyResult<bool> {
        self.0.leq(&other.0).map_err(err)
    }

    fn is_restricted(&self) -> bool {
        self.0.in_restricted_class()
    }

    /// `{point: ["k/D", ...]}`.
    fn to_dict(&self) -> BTreeMap<String, Vec<String>> {
        let shape = self.0.shape();
        shape
            .universe()
            .labels()
            .iter()
            .enumerate()
            .map(|(x, label)| {
                let tuple = self
                    .0
                    .tuple(x)
                    .iter()
                    .map(|&g| shape.chain().format(g))
                    .collect();
                (label.clone(), tuple)
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        self.0.to_canonical_string()
    }
}

fn sets(family: &[MultiFuzzySet]) -> Vec<PySet> {
    family.iter().cloned().map(PySet).collect()
}

fn unwrap_sets(family: Vec<PySet>) -> Vec<MultiFuzzySet> {
    family.into_iter().map(|s| s.0).collect()
}

fn compactness<'py>(py: Python<'py>, r: &CompactnessReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("compact", r.compact)?;
    d.set_item("cover_exists", r.cover_exists)?;
    d.set_item("exhaustive", r.exhaustive)?;
    d.set_item("families_examined", r.families_examined)?;
    d.set_item("open_covers", r.open_covers)?;
    d.set_item("subcovers_found", r.subcovers_found)?;
    d.set_item("largest_subcover", r.largest_subcover)?;
    d.set_item("readings_agree", r.readings_agree)?;
    Ok(d)
}

/// A Lowen- or Chang-kind multi-fuzzy topology.
#[pyclass(name = "Topology", frozen, eq)]
#[derive(Clone, PartialEq, Eq)]
struct PyTopology(Arc<MultiFuzzyTopology>);

#[pymethods]
impl PyTopology {
    /// The opens must already satisfy the axioms of `kind`.
    #[new]
    #[pyo3(signature = (shape, opens, kind = "lowen"))]
    fn new(shape: &PyShape, opens: Vec<PySet>, kind: &str) -> PyResult<Self> {
        MultiFuzzyTopology::new(shape.0.clone(), self::kind(kind)?, unwrap_sets(opens))
            .map(|t| PyTopology(Arc::new(t)))
            .map_err(err)
    }

    /// The smallest topology of `kind` containing `seeds`.
    #[staticmethod]
    #[pyo3(signature = (shape, seeds, kind = "lowen"))]
    fn generate(shape: &PyShape, seeds: Vec<PySet>, kind: &str) -> PyResult<Self> {
        MultiFuzzyTopology::generate_with_kind(
            shape.0.clone(),
            self::kind(kind)?,
            &unwrap_sets(seeds),
        )
        .map(|t| PyTopology(Arc::new(t)))
        .map_err(err)
    }

    #[getter]
    fn shape(&self) -> PyShape {
        PyShape(self.0.shape().clone())
    }

    #[getter]
    fn kind(&self) -> String {
        self.0.kind().to_string()
    }

    #[getter]
    fn opens(&self) -> Vec<PySet> {
        sets(self.0.opens())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, set: &PySet) -> bool {
        self.0.contains(&set.0)
    }

    /// Axiom violations as messages; empty when the axioms hold.
    fn verify(&self) -> Vec<String> {
        self.0
            .verify()
            .violations
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn closed_sets(&self) -> Vec<PySet> {
        sets(&self.0.closed_sets())
    }

    fn minimal_base(&self) -> Vec<PySet> {
        sets(&self.0.minimal_base())
    }

    fn is_open_base(&self, base: Vec<PySet>) -> PyResult<bool> {
        self.0.is_open_base(&unwrap_sets(base)).map_err(err)
    }

    fn is_nbd(&self, set: &PySet, point: &str) -> PyResult<bool> {
        mftop::is_nbd(&set.0, point, &self.0).map_err(err)
    }

    fn nbd_family(&self, point: &str) -> PyResult<Vec<PySet>> {
        nbd_family(&self.0, point).map(|f| sets(&f)).map_err(err)
    }

    /// Neighbourhood families of every point.
    fn nbd_system(&self) -> PyResult<BTreeMap<String, Vec<PySet>>> {
        let system = nbd_from_topology(&self.0).map_err(err)?;
        Ok(self
            .0
            .shape()
            .universe()
            .labels()
            .iter()
            .enumerate()
            .map(|(x, label)| (label.clone(), sets(system.family(x))))
            .collect())
    }

    /// Names of the neighbourhood axioms the derived system violates.
    fn nbd_violations(&self) -> PyResult<Vec<String>> {
        let system = nbd_from_topology(&self.0).map_err(err)?;
        let report = verify_nbd_axioms(&system).map_err(err)?;
        Ok(report.violations.iter().map(|v| v.to_string()).collect())
    }

    /// The topology rebuilt from this topology's neighbourhood system.
    fn rebuilt_from_nbd(&self) -> PyResult<PyTopology> {
        let system = nbd_from_topology(&self.0).map_err(err)?;
        topology_from_nbd(&system)
            .map(|t| PyTopology(Arc::new(t)))
            .map_err(err)
    }

    #[pyo3(signature = (max_family = 4, seed = 0))]
    fn compactness<'py>(
        &self,
        py: Python<'py>,
        max_family: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let config = CompactnessConfig {
            max_family,
            seed,
            ..CompactnessConfig::default()
        };
        compactness(py, &check_compact(&self.0, &config))
    }

    fn __repr__(&self) -> String {
        format!("Topology(kind={}, opens={})", self.0.kind(), self.0.len())
    }
}

/// A point map between the universes of two spaces.
#[pyclass(name = "SpaceMap", frozen)]
#[derive(Clone)]
struct PySpaceMap(SpaceMap);

#[pymethods]
impl PySpaceMap {
    #[new]
    fn new(
        mapping: BTreeMap<String, String>,
        domain: &PyTopology,
        codomain: &PyTopology,
    ) -> PyResult<Self> {
        let map = PointMap::new(
            domain.0.shape().universe().clone(),
            codomain.0.shape().universe().clone(),
            mapping.iter().map(|(k, v)| (k.as_str(), v.as_str())),
        )
        .map_err(err)?;
        SpaceMap::new(map, domain.0.clone(), codomain.0.clone())
            .map(PySpaceMap)
            .map_err(err)
    }

    #[getter]
    fn mapping(&self) -> BTreeMap<String, String> {
        let map = self.0.map();
        let (from, to) = (map.domain(), map.codomain());
        (0..from.len())
            .map(|x| {
                (
                    from.label(x).to_string(),
                    to.label(map.apply(x)).to_string(),
                )
            })
            .collect()
    }

    fn image(&self, set: &PySet) -> PyResult<PySet> {
        self.0.image(&set.0).map(PySet).map_err(err)
    }

    fn preimage(&self, set: &PySet) -> PyResult<PySet> {
        self.0.preimage(&set.0).map(PySet).map_err(err)
    }

    fn is_continuous(&self) -> bool {
        self.0.is_continuous()
    }

    /// Verdict of every continuity criterion by name.
    fn continuity_criteria(&self) -> PyResult<BTreeMap<String, bool>> {
        let verdicts = self.0.continuity_criteria().map_err(err)?;
        Ok(verdicts
            .iter()
            .map(|(c, v)| (c.name().to_string(), *v))
            .collect())
    }

    fn is_open_map(&self) -> bool {
        self.0.is_open_map()
    }

    fn is_closed_map(&self) -> bool {
        self.0.is_closed_map()
    }

    fn is_homeomorphism(&self) -> bool {
        self.0.is_homeomorphism()
    }

    /// `self` followed by `next`.
    fn then(&self, next: &PySpaceMap) -> PyResult<PySpaceMap> {
        self.0.then(&next.0).map(PySpaceMap).map_err(err)
    }
}

fn factor(j: u8) -> PyResult<Factor> {
    match j {
        1 => Ok(Factor::First),
        2 => Ok(Factor::Second),
        _ => Err(PyValueError::new_err("factor must be 1 or 2")),
    }
}

/// The product of two spaces of the same kind, grid and denominator.
#[pyclass(name = "Product", frozen)]
struct PyProduct(ProductSpace);

#[pymethods]
impl PyProduct {
    #[new]
    fn new(first: &PyTopology, second: &PyTopology) -> PyResult<Self> {
        product_topology(first.0.clone(), second.0.clone())
            .map(PyProduct)
            .map_err(err)
    }

    #[getter]
    fn topology(&self) -> PyTopology {
        PyTopology(self.0.topology().clone())
    }

    #[getter]
    fn basis(&self) -> Vec<PySet> {
        sets(self.0.basis())
    }

    fn basis_is_open_base(&self) -> bool {
        self.0.basis_is_open_base()
    }

    /// `pi_1` or `pi_2`.
    fn projection(&self, j: u8) -> PyResult<PySpaceMap> {
        Ok(PySpaceMap(self.0.projection(factor(j)?)))
    }

    fn smallest_topology_check(&self) -> PyResult<bool> {
        self.0.smallest_topology_check().map_err(err)
    }

    /// The embedding that fixes `point` in factor `j`.
    fn slice_embedding(&self, point: &str, j: u8) -> PyResult<PySpaceMap> {
        self.0
            .slice_embedding(point, factor(j)?)
            .map(PySpaceMap)
            .map_err(err)
    }

    #[pyo3(signature = (max_family = 4, seed = 0))]
    fn compactness<'py>(
        &self,
        py: Python<'py>,
        max_family: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let config = CompactnessConfig {
            max_family,
            seed,
            ..CompactnessConfig::default()
        };
        let report = check_product_compact(&self.0, &config);
        let d = compactness(py, &report)?;
        d.set_item("factor_pattern_holds", report.factor_pattern_holds)?;
        Ok(d)
    }
}

#[pymodule]
#[pyo3(name = "mftop")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyShape>()?;
    m.add_class::<PySet>()?;
    m.add_class::<PyTopology>()?;
    m.add_class::<PySpaceMap>()?;
    m.add_class::<PyProduct>()?;
    Ok(())
}
