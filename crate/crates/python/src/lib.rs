//! Python bindings: family parameters, maps and their invariants, coset
//! enumeration and the census reports. Structured results are returned as
//! JSON text.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use regmap::census::{self, CensusConfig};
use regmap::families::{self, Family, MapParameters, RawParams};
use regmap::fpgroups::{enumerate_cosets as enumerate, parse_presentation, DEFAULT_MAX_COSETS};
use regmap::graphs::{self, complete_multipartite_shape, underlying_graph};
use regmap::maps::{self, AlgebraicMap, MapReport};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(runtime_err)
}

/// Validated family parameters.
#[pyclass(name = "MapParams", frozen)]
struct PyMapParams {
    inner: MapParameters,
}

#[pymethods]
impl PyMapParams {
    #[new]
    #[pyo3(signature = (family, m=None, n=None, p=None, e=None, k=None, i=None, l=None, j=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        family: &str,
        m: Option<i64>,
        n: Option<i64>,
        p: Option<i64>,
        e: Option<i64>,
        k: Option<i64>,
        i: Option<i64>,
        l: Option<i64>,
        j: Option<i64>,
    ) -> PyResult<Self> {
        let raw = RawParams {
            family: Some(family.parse::<Family>().map_err(value_err)?),
            m,
            n,
            p,
            e,
            k,
            i,
            l,
            j,
        };
        Ok(PyMapParams {
            inner: families::validate_params(&raw).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let raw = RawParams::from_json(text).map_err(value_err)?;
        Ok(PyMapParams {
            inner: families::validate_params(&raw).map_err(value_err)?,
        })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.m
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n
    }

    #[getter]
    fn j(&self) -> i64 {
        self.inner.j
    }

    #[getter]
    fn group_order(&self) -> u64 {
        self.inner.group_order()
    }

    fn presentation(&self) -> String {
        families::presentation_for(&self.inner).to_string()
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("MapParams({})", self.inner.label())
    }
}

/// An algebraic map `M(G; a, b)` built from family parameters.
#[pyclass(name = "Map", frozen)]
struct PyMap {
    inner: AlgebraicMap,
}

#[pymethods]
impl PyMap {
    #[new]
    fn new(params: &PyMapParams) -> PyResult<Self> {
        let fg = families::build_group(&params.inner).map_err(runtime_err)?;
        Ok(PyMap {
            inner: AlgebraicMap::from_family(&fg).map_err(runtime_err)?,
        })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.dart_count()
    }

    /// Invariants as JSON: type, V, E, F, genus, chirality.
    fn invariants(&self) -> PyResult<String> {
        to_json(&MapReport::new(&self.inner))
    }

    fn is_reflexible(&self) -> bool {
        self.inner.is_reflexible()
    }

    fn is_isomorphic(&self, other: &PyMap) -> bool {
        maps::is_isomorphic(&self.inner, &other.inner)
    }

    fn mirror(&self) -> PyMap {
        PyMap {
            inner: self.inner.mirror(),
        }
    }

    fn rotation_system(&self) -> Vec<Vec<usize>> {
        maps::rotation_system(&self.inner)
    }

    fn shape(&self) -> PyResult<Option<(usize, usize)>> {
        let g = underlying_graph(&self.inner).map_err(runtime_err)?;
        Ok(complete_multipartite_shape(&g))
    }

    fn dot(&self) -> PyResult<String> {
        let g = underlying_graph(&self.inner).map_err(runtime_err)?;
        Ok(graphs::to_dot(&g))
    }

    fn edge_list(&self) -> PyResult<Vec<(usize, usize)>> {
        let g = underlying_graph(&self.inner).map_err(runtime_err)?;
        Ok(g.edges().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Map({}, order={})", self.inner.label(), self.inner.dart_count())
    }
}

/// Coset table CSV for presentation text and optional subgroup words.
#[pyfunction]
#[pyo3(signature = (text, subgroup=Vec::new(), max_cosets=DEFAULT_MAX_COSETS))]
fn coset_table(text: &str, subgroup: Vec<String>, max_cosets: usize) -> PyResult<String> {
    let pres = parse_presentation(text).map_err(value_err)?;
    let words = subgroup
        .iter()
        .map(|w| pres.parse_word(w))
        .collect::<Result<Vec<_>, _>>()
        .map_err(value_err)?;
    let table = enumerate(&pres, &words, max_cosets).map_err(value_err)?;
    if !table.is_complete() {
        return Err(runtime_err(format!("overflow at {max_cosets} cosets")));
    }
    Ok(table.to_csv())
}

#[pyfunction]
fn enumerate_maps(m: u64, n: u64) -> PyResult<String> {
    to_json(&census::enumerate_report(m, n, &CensusConfig::default()).map_err(value_err)?)
}

#[pyfunction]
fn verify_tables(m: u64, n: u64) -> PyResult<String> {
    to_json(&census::verify_tables(m, n, &CensusConfig::default()).map_err(value_err)?)
}

#[pyfunction]
fn census_report(m: u64, n: u64) -> PyResult<String> {
    to_json(&census::census_report(m, n, &CensusConfig::default()).map_err(value_err)?)
}

#[pyfunction]
fn geometric_sum(q: i64, k: u64, modulus: u64) -> PyResult<u64> {
    if modulus == 0 {
        return Err(value_err("modulus must be positive"));
    }
    Ok(regmap::numtheory::geometric_sum(q, k, modulus))
}

#[pymodule]
fn pyregmap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMapParams>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(coset_table, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_maps, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    m.add_function(wrap_pyfunction!(census_report, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_sum, m)?)?;
    Ok(())
}
