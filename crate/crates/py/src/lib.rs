use polymem_core::chain::{
    build_normal_chain, check_erosion_identities, validate_chain, ChainConfig,
};
use polymem_core::json as pj;
use polymem_core::koszul::koszul_kernel_dim;
use polymem_core::membership::{foundation_supports, membership_dim, Protocol, SystemSpec};
use polymem_core::osculate::{osculation_report, MAX_SCAN_PRIME};
use polymem_core::rational::{format_rational, parse_rational};
use polymem_core::{HPolytope, PointSet, PrimeField, Rational, SparsePoly};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn factor(t: &str) -> PyResult<Rational> {
    parse_rational(t).map_err(err)
}

fn protocol(primes: Option<Vec<u64>>, seeds: Option<Vec<u64>>) -> Protocol {
    let mut p = Protocol::default();
    if let Some(primes) = primes {
        p.primes = primes;
    }
    if let Some(seeds) = seeds {
        p.seeds = seeds;
    }
    p
}

/// A finite set of lattice points.
#[pyclass(name = "PointSet", module = "polymem")]
struct PyPointSet {
    inner: PointSet,
}

#[pymethods]
impl PyPointSet {
    #[new]
    fn new(dim: usize, points: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyPointSet {
            inner: PointSet::new(dim, points).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn points(&self) -> Vec<Vec<i64>> {
        self.inner.to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, p: Vec<i64>) -> bool {
        self.inner.contains(&p)
    }

    fn __repr__(&self) -> String {
        format!(
            "PointSet(dim={}, len={})",
            self.inner.dim(),
            self.inner.len()
        )
    }

    fn translate(&self, v: Vec<i64>) -> Self {
        PyPointSet {
            inner: self.inner.translate(&v),
        }
    }

    fn minkowski_sum(&self, other: &PyPointSet) -> Self {
        PyPointSet {
            inner: self.inner.minkowski_sum(&other.inner),
        }
    }

    fn erode(&self, other: &PyPointSet) -> Self {
        PyPointSet {
            inner: self.inner.erode(&other.inner),
        }
    }

    fn union(&self, other: &PyPointSet) -> Self {
        PyPointSet {
            inner: self.inner.union(&other.inner),
        }
    }
}

/// A rational polytope given by facet inequalities `x . a >= b`.
#[pyclass(name = "Polytope", module = "polymem")]
struct PyPolytope {
    inner: HPolytope,
}

#[pymethods]
impl PyPolytope {
    #[staticmethod]
    fn hull(points: &PyPointSet) -> PyResult<Self> {
        Ok(PyPolytope {
            inner: HPolytope::from_points(&points.inner).map_err(err)?,
        })
    }

    #[staticmethod]
    fn simplex(dim: usize, scale: i64) -> Self {
        PyPolytope {
            inner: HPolytope::simplex(dim, scale),
        }
    }

    #[staticmethod]
    fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        PyPolytope {
            inner: HPolytope::cube(dim, lo, hi),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPolytope {
            inner: pj::parse_polytope(text).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn facet_count(&self) -> usize {
        self.inner.facet_count()
    }

    /// Vertices as strings, exact rationals written `p/q`.
    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner
            .vertices()
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect()
    }

    fn lattice_points(&self) -> PyPointSet {
        PyPointSet {
            inner: self.inner.lattice_points(),
        }
    }

    fn dilate(&self, t: &str) -> PyResult<Self> {
        Ok(PyPolytope {
            inner: self.inner.dilate(&factor(t)?).map_err(err)?,
        })
    }

    fn minkowski_sum(&self, other: &PyPolytope) -> PyResult<Self> {
        Ok(PyPolytope {
            inner: self.inner.minkowski_sum(&other.inner).map_err(err)?,
        })
    }

    /// The erosion by `other`, or `None` when it is empty.
    fn erode(&self, other: &PyPolytope) -> PyResult<Option<Self>> {
        Ok(self
            .inner
            .erode(&other.inner)
            .map_err(err)?
            .map(|inner| PyPolytope { inner }))
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &pj::polytope_to_json(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, facets={})",
            self.inner.dim(),
            self.inner.facet_count()
        )
    }
}

/// Dimension of the members supported in `a` of `k` generic polynomials on
/// `Z(b)`, with multipliers on `c` (the foundation supports when omitted).
#[pyfunction]
#[pyo3(signature = (a, b, k=1, c=None, primes=None, seeds=None))]
fn membership<'py>(
    py: Python<'py>,
    a: &PyPointSet,
    b: &PyPolytope,
    k: usize,
    c: Option<&PyPointSet>,
    primes: Option<Vec<u64>>,
    seeds: Option<Vec<u64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let protocol = protocol(primes, seeds);
    let zb = b.inner.lattice_points();
    let (c, translation) = match c {
        Some(c) => (c.inner.clone(), vec![0; a.inner.dim()]),
        None => {
            let found = foundation_supports(&a.inner, &b.inner, k, false).map_err(err)?;
            let t = found
                .shift_b
                .iter()
                .zip(&found.shift_a)
                .map(|(x, y)| x - y)
                .collect();
            (found.supports[0].clone(), t)
        }
    };
    let spec = SystemSpec::uniform(a.inner.clone(), c, zb, k);
    let r = membership_dim(&spec, &protocol).map_err(err)?;
    to_py(py, &pj::membership_json(&r, &translation))
}

#[pyfunction]
#[pyo3(signature = (a, b, k=1, allow_outside=false))]
fn foundation<'py>(
    py: Python<'py>,
    a: &PyPointSet,
    b: &PyPolytope,
    k: usize,
    allow_outside: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let found = foundation_supports(&a.inner, &b.inner, k, allow_outside).map_err(err)?;
    to_py(py, &pj::foundation_json(&found))
}

/// Syzygy kernel dimension against the alternating erosion formula.
#[pyfunction]
#[pyo3(signature = (c, b, k, primes=None, seeds=None))]
fn koszul<'py>(
    py: Python<'py>,
    c: &PyPointSet,
    b: &PyPointSet,
    k: usize,
    primes: Option<Vec<u64>>,
    seeds: Option<Vec<u64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = koszul_kernel_dim(&c.inner, &b.inner, k, &protocol(primes, seeds)).map_err(err)?;
    to_py(py, &pj::koszul_json(&r))
}

#[pyfunction]
#[pyo3(signature = (b, t="3"))]
fn normal_chain<'py>(py: Python<'py>, b: &PyPolytope, t: &str) -> PyResult<Bound<'py, PyAny>> {
    let t = factor(t)?;
    let chain = build_normal_chain(&b.inner, &ChainConfig::new(t.clone())).map_err(err)?;
    let rep = validate_chain(&chain, &t).map_err(err)?;
    let ids = check_erosion_identities(&chain).map_err(err)?;
    to_py(py, &pj::chain_json(&chain, &rep, &ids))
}

/// Osculation flags of a plane curve given as `[(exponent, coefficient), ...]`.
#[pyfunction]
#[pyo3(signature = (a, terms, prime=32003, seed=1))]
fn osculate<'py>(
    py: Python<'py>,
    a: &PyPointSet,
    terms: Vec<(Vec<i64>, i64)>,
    prime: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    if prime > MAX_SCAN_PRIME {
        return Err(err(format!(
            "osculate scans the field; use a prime at most {MAX_SCAN_PRIME}"
        )));
    }
    let field = PrimeField::new(prime).map_err(err)?;
    let f = SparsePoly::from_terms(field, 2, terms).map_err(err)?;
    let r = osculation_report(&a.inner, &f, seed).map_err(err)?;
    to_py(py, &pj::osculation_json(&r))
}

#[pymodule]
fn polymem(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(foundation, m)?)?;
    m.add_function(wrap_pyfunction!(koszul, m)?)?;
    m.add_function(wrap_pyfunction!(normal_chain, m)?)?;
    m.add_function(wrap_pyfunction!(osculate, m)?)?;
    Ok(())
}
