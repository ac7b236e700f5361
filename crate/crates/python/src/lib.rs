//! Python bindings: vectors, group elements, multisets, quadratic forms,
//! and entry points into the factorization search, the partition verifier,
//! the relation solver and the suite runner.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use spschur_core::factorize::{enumerate, min_length, FactorQuery, MinLength};
use spschur_core::ortho::{QuadForm, Sign};
use spschur_core::relations::{solve_case, Family, Verdict};
use spschur_core::schur::{verify_partition, TPartition};
use spschur_core::spgroup::class_sizes as core_class_sizes;
use spschur_core::{ClassTag, Gf2Vector, Multiset as CoreMultiset, SpElement};
use spschur_cli::{Params, Range};

fn err(e: spschur_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hash_of<T: Hash>(x: &T) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

/// A vector of `F_2^n`, bit `i - 1` holding the coordinate of `e_i`.
#[pyclass(name = "Vector", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq)]
struct PyVector(Gf2Vector);

#[pymethods]
impl PyVector {
    #[new]
    fn new(n: usize, bits: u32) -> PyResult<Self> {
        Gf2Vector::new(n, bits).map(PyVector).map_err(err)
    }

    /// Parses the literal syntax, e.g. `"1,2,6"`.
    #[staticmethod]
    fn parse(n: usize, s: &str) -> PyResult<Self> {
        Gf2Vector::parse(n, s).map(PyVector).map_err(err)
    }

    #[staticmethod]
    fn basis(n: usize, i: usize) -> PyResult<Self> {
        Gf2Vector::basis(n, i).map(PyVector).map_err(err)
    }

    /// Every nonzero vector of `F_2^n`.
    #[staticmethod]
    fn nonzero(n: usize) -> PyResult<Vec<Self>> {
        Ok(Gf2Vector::nonzero(n).map_err(err)?.map(PyVector).collect())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn bits(&self) -> u32 {
        self.0.bits()
    }

    fn indices(&self) -> Vec<usize> {
        self.0.indices()
    }

    fn dot(&self, other: &PyVector) -> PyResult<bool> {
        self.0.try_dot(other.0).map_err(err)
    }

    fn __add__(&self, other: &PyVector) -> PyResult<Self> {
        if self.0.dim() != other.0.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(PyVector(self.0 + other.0))
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Vector({}, \"{}\")", self.0.dim(), self.0)
    }
}

/// An element of `Sp(n, 2)`; products apply the left factor first.
#[pyclass(name = "Element", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq)]
struct PyElement(SpElement);

#[pymethods]
impl PyElement {
    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        SpElement::identity(n).map(PyElement).map_err(err)
    }

    #[staticmethod]
    fn transvection(v: &PyVector) -> Self {
        PyElement(SpElement::transvection(v.0))
    }

    /// `t_(v_1) ... t_(v_k)`.
    #[staticmethod]
    fn product(n: usize, vectors: Vec<PyVector>) -> PyResult<Self> {
        let vs: Vec<_> = vectors.iter().map(|v| v.0).collect();
        SpElement::product_of_transvections(n, &vs).map(PyElement).map_err(err)
    }

    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        SpElement::parse(s).map(PyElement).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn apply(&self, v: &PyVector) -> PyResult<PyVector> {
        if v.0.dim() != self.0.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(PyVector(self.0.apply(v.0)))
    }

    fn inverse(&self) -> Self {
        PyElement(self.0.inverse())
    }

    /// `g^-1 self g`.
    fn conj(&self, g: &PyElement) -> Self {
        PyElement(self.0.conj(&g.0))
    }

    fn order(&self) -> Option<u32> {
        self.0.order(1 << 20)
    }

    /// One of `identity`, `transvection`, `tt0`, `tt1`, `other`.
    fn class_tag(&self) -> &'static str {
        match self.0.class_tag() {
            ClassTag::Identity => "identity",
            ClassTag::Transvection => "transvection",
            ClassTag::TT0 => "tt0",
            ClassTag::TT1 => "tt1",
            ClassTag::Other => "other",
        }
    }

    fn serialize(&self) -> String {
        self.0.serialize()
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        if self.0.dim() != other.0.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(PyElement(self.0 * other.0))
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Element.parse(\"{}\")", self.0.serialize())
    }
}

/// A group-algebra element with nonnegative integer coefficients.
#[pyclass(name = "Multiset", from_py_object)]
#[derive(Clone)]
struct PyMultiset(CoreMultiset);

#[pymethods]
impl PyMultiset {
    /// Sum of all transvections.
    #[staticmethod]
    fn transvection_class(n: usize) -> PyResult<Self> {
        CoreMultiset::transvection_class(n).map(PyMultiset).map_err(err)
    }

    #[staticmethod]
    fn transvections(n: usize, vectors: Vec<PyVector>) -> PyResult<Self> {
        CoreMultiset::transvections(n, vectors.into_iter().map(|v| v.0))
            .map(PyMultiset)
            .map_err(err)
    }

    #[staticmethod]
    fn indicator(n: usize, elements: Vec<PyElement>) -> PyResult<Self> {
        CoreMultiset::indicator(n, elements.into_iter().map(|g| g.0))
            .map(PyMultiset)
            .map_err(err)
    }

    fn convolve(&self, other: &PyMultiset) -> PyResult<Self> {
        self.0.convolve(&other.0).map(PyMultiset).map_err(err)
    }

    fn coefficient(&self, g: &PyElement) -> BigUint {
        self.0.coefficient(&g.0)
    }

    fn mass(&self) -> BigUint {
        self.0.mass()
    }

    fn support_len(&self) -> usize {
        self.0.support_len()
    }

    /// `{multiplicity: number of elements}`.
    fn spectrum<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in self.0.spectrum() {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    fn filter_multiplicity(&self, m: u64) -> Self {
        PyMultiset(self.0.filter_multiplicity(m))
    }

    fn commutes_with(&self, other: &PyMultiset) -> PyResult<bool> {
        Ok(spschur_core::galg::commutes(&self.0, &other.0).map_err(err)?.is_ok())
    }

    fn __mul__(&self, other: &PyMultiset) -> PyResult<Self> {
        self.convolve(other)
    }

    fn __eq__(&self, other: &PyMultiset) -> bool {
        self.0 == other.0
    }

    fn __len__(&self) -> usize {
        self.0.support_len()
    }
}

/// A quadratic form polarizing to the symplectic form.
#[pyclass(name = "QuadForm", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyQuadForm(QuadForm);

#[pymethods]
impl PyQuadForm {
    /// The standard form with Arf invariant `alpha`.
    #[staticmethod]
    fn standard(n: usize, alpha: bool) -> PyResult<Self> {
        QuadForm::standard(n, alpha).map(PyQuadForm).map_err(err)
    }

    #[staticmethod]
    fn from_diagonal(n: usize, diagonal: u32) -> PyResult<Self> {
        QuadForm::from_diagonal(n, diagonal).map(PyQuadForm).map_err(err)
    }

    fn eval(&self, v: &PyVector) -> bool {
        self.0.eval(v.0)
    }

    fn arf(&self) -> bool {
        self.0.arf()
    }

    /// `"plus"` or `"minus"`.
    fn sign(&self) -> &'static str {
        match self.0.sign() {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }

    /// Vectors with `Q(v) = 1`.
    fn so_transvections(&self) -> PyResult<Vec<PyVector>> {
        Ok(self.0.so_transvections().map_err(err)?.into_iter().map(PyVector).collect())
    }
}

/// `(transvections, tt0, tt1, zero_triangles, group_order)`.
#[pyfunction]
fn class_sizes(n: usize) -> PyResult<(BigUint, BigUint, BigUint, BigUint, BigUint)> {
    let s = core_class_sizes(n).map_err(err)?;
    Ok((s.transvections, s.tt0, s.tt1, s.zero_triangles, s.group_order))
}

/// Every `length`-tuple of vectors whose transvection product is `target`.
#[pyfunction]
fn factorizations(target: &PyElement, length: usize) -> PyResult<Vec<Vec<PyVector>>> {
    let found = enumerate(&FactorQuery::new(target.0, length)).map_err(err)?;
    Ok(found.into_iter().map(|t| t.into_iter().map(PyVector).collect()).collect())
}

/// Least number of transvections with product `g`, or `None` above `cap`.
#[pyfunction]
#[pyo3(signature = (g, cap = 6))]
fn transvection_length(g: &PyElement, cap: usize) -> PyResult<Option<usize>> {
    Ok(match min_length(&g.0, cap).map_err(err)? {
        MinLength::Exact(k) => Some(k),
        MinLength::ExceedsCap(_) => None,
    })
}

/// Runs the partition verifier; returns `(check, passed, witness)` triples.
#[pyfunction]
fn verify(n: usize, blocks: Vec<Vec<PyVector>>) -> PyResult<Vec<(String, bool, Option<String>)>> {
    let blocks = blocks.into_iter().map(|b| b.into_iter().map(|v| v.0).collect()).collect();
    let p = TPartition::new(n, blocks).map_err(err)?;
    Ok(verify_partition(&p)
        .checks
        .into_iter()
        .map(|c| (c.name, c.passed, c.witness))
        .collect())
}

/// Solves a relation system; returns the verdict and the determined values
/// as strings.
#[pyfunction]
fn solve_relations<'py>(py: Python<'py>, family: &str, r: usize, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let family = Family::parse(family).map_err(err)?;
    let s = solve_case(family, r, n).map_err(err)?;
    let d = PyDict::new(py);
    let verdict = match &s.verdict {
        Verdict::Feasible => "feasible",
        Verdict::Infeasible { .. } => "infeasible",
        Verdict::Underdetermined { .. } => "underdetermined",
    };
    d.set_item("verdict", verdict)?;
    d.set_item("kernel_dim", s.kernel_dim)?;
    let values = PyDict::new(py);
    for (name, v) in &s.values {
        values.set_item(*name, v.as_ref().map(|x| x.to_string()))?;
    }
    d.set_item("values", values)?;
    Ok(d)
}

/// Ids of all suites.
#[pyfunction]
fn suite_ids() -> Vec<String> {
    spschur_cli::catalog().into_iter().map(|s| s.id).collect()
}

/// Runs a suite and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (suite, n = None, family = None, range = None, seed = None, r = None))]
fn run_suite(
    suite: &str,
    n: Option<usize>,
    family: Option<String>,
    range: Option<(usize, usize)>,
    seed: Option<u64>,
    r: Option<usize>,
) -> PyResult<String> {
    let params = Params {
        n,
        family,
        range: range.map(|(lo, hi)| Range { lo, hi }),
        seed,
        r,
    };
    spschur_cli::run(suite, &params)
        .map(|rep| rep.to_json())
        .map_err(|e| match e.exit_code() {
            2 => PyValueError::new_err(e.to_string()),
            _ => PyRuntimeError::new_err(e.to_string()),
        })
}

#[pymodule]
fn spschur(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVector>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyMultiset>()?;
    m.add_class::<PyQuadForm>()?;
    m.add_function(wrap_pyfunction!(class_sizes, m)?)?;
    m.add_function(wrap_pyfunction!(factorizations, m)?)?;
    m.add_function(wrap_pyfunction!(transvection_length, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(solve_relations, m)?)?;
    m.add_function(wrap_pyfunction!(suite_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
