//! Python bindings for the `codent` library.

use std::path::PathBuf;

use codent::catalog;
use codent::codes::{enumerate_code, is_self_dual, is_type2};
use codent::enumerators::{act, is_invariant, swe};
use codent::groups::close_group;
use codent::molien::{expand_formula, fixed_space_dim, molien_series};
use codent::poly::CLASS_VARS;
use codent::verify::{self, EmitKind, Format, VerifyConfig, DEFAULT_CLOSURE_LIMIT};
use codent::{CMatrix, Error};
use pyo3::exceptions::{PyKeyError, PyOverflowError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    match e {
        Error::NotFound(_) => PyKeyError::new_err(e.to_string()),
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        Error::ClosureOverflow { .. } | Error::EnumerationOverflow { .. } | Error::DimensionOverflow { .. } => {
            PyOverflowError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An element of `Q(zeta_8)`.
#[pyclass(name = "Cyclo8", frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCyclo8(codent::Cyclo8);

#[derive(FromPyObject)]
enum CycloLike {
    Cyclo(PyCyclo8),
    Int(i64),
    Text(String),
}

impl CycloLike {
    fn into_cyclo(self) -> PyResult<codent::Cyclo8> {
        match self {
            CycloLike::Cyclo(c) => Ok(c.0),
            CycloLike::Int(n) => Ok(codent::Cyclo8::from_integer(n)),
            CycloLike::Text(s) => s.parse().map_err(err),
        }
    }
}

#[pymethods]
impl PyCyclo8 {
    /// Accepts an integer or text such as `"1/2 + 3*z^2"`.
    #[new]
    fn new(value: CycloLike) -> PyResult<Self> {
        Ok(PyCyclo8(value.into_cyclo()?))
    }

    /// The primitive eighth root of unity.
    #[staticmethod]
    fn z() -> Self {
        PyCyclo8(codent::Cyclo8::z())
    }

    #[staticmethod]
    fn sqrt2() -> Self {
        PyCyclo8(codent::Cyclo8::sqrt2())
    }

    /// Coordinates in the basis `1, z, z^2, z^3`, as fraction strings.
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(|c| c.to_string()).collect()
    }

    fn conj(&self) -> Self {
        PyCyclo8(self.0.conj())
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(PyCyclo8).map_err(err)
    }

    fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    fn __complex__(&self) -> (f64, f64) {
        self.0.to_complex_f64()
    }

    fn to_complex(&self) -> (f64, f64) {
        self.0.to_complex_f64()
    }

    fn __add__(&self, o: CycloLike) -> PyResult<Self> {
        Ok(PyCyclo8(&self.0 + o.into_cyclo()?))
    }

    fn __radd__(&self, o: CycloLike) -> PyResult<Self> {
        self.__add__(o)
    }

    fn __sub__(&self, o: CycloLike) -> PyResult<Self> {
        Ok(PyCyclo8(&self.0 - o.into_cyclo()?))
    }

    fn __rsub__(&self, o: CycloLike) -> PyResult<Self> {
        Ok(PyCyclo8(o.into_cyclo()? - &self.0))
    }

    fn __mul__(&self, o: CycloLike) -> PyResult<Self> {
        Ok(PyCyclo8(&self.0 * o.into_cyclo()?))
    }

    fn __rmul__(&self, o: CycloLike) -> PyResult<Self> {
        self.__mul__(o)
    }

    fn __truediv__(&self, o: CycloLike) -> PyResult<Self> {
        let d = o.into_cyclo()?.inv().map_err(err)?;
        Ok(PyCyclo8(&self.0 * d))
    }

    fn __pow__(&self, e: u32, _modulo: Option<Py<PyAny>>) -> Self {
        PyCyclo8(self.0.pow(e))
    }

    fn __neg__(&self) -> Self {
        PyCyclo8(-self.0.clone())
    }

    fn __eq__(&self, o: &Bound<'_, PyAny>) -> bool {
        o.extract::<CycloLike>().ok().and_then(|c| c.into_cyclo().ok()).is_some_and(|c| c == self.0)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyclo8('{}')", self.0)
    }
}

/// A dense matrix over `Q(zeta_8)`.
#[pyclass(name = "Matrix", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix(CMatrix);

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<CycloLike>>) -> PyResult<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(CycloLike::into_cyclo).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        CMatrix::from_rows(rows).map(PyMatrix).map_err(err)
    }

    /// A generator (`chi`, `xi_u1`, ...) or its symmetrized image (`phi_chi`, ...).
    #[staticmethod]
    fn catalog(id: &str) -> PyResult<Self> {
        verify::catalog_matrix(id).map(PyMatrix).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyMatrix(CMatrix::identity(n))
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.0.rows(), self.0.cols())
    }

    fn rows(&self) -> Vec<Vec<PyCyclo8>> {
        (0..self.0.rows()).map(|i| self.0.row(i).iter().cloned().map(PyCyclo8).collect()).collect()
    }

    fn __getitem__(&self, ij: (usize, usize)) -> PyResult<PyCyclo8> {
        let (i, j) = ij;
        if i >= self.0.rows() || j >= self.0.cols() {
            return Err(pyo3::exceptions::PyIndexError::new_err(format!("index ({i}, {j}) out of range")));
        }
        Ok(PyCyclo8(self.0.get(i, j).clone()))
    }

    fn det(&self) -> PyResult<PyCyclo8> {
        self.0.det().map(PyCyclo8).map_err(err)
    }

    fn transpose(&self) -> Self {
        PyMatrix(self.0.transpose())
    }

    fn is_unitary(&self) -> bool {
        self.0.is_unitary()
    }

    fn __matmul__(&self, o: &PyMatrix) -> PyResult<Self> {
        self.0.mat_mul(&o.0).map(PyMatrix).map_err(err)
    }

    fn __pow__(&self, e: u32, _modulo: Option<Py<PyAny>>) -> PyResult<Self> {
        self.0.pow(e).map(PyMatrix).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}x{})", self.0.rows(), self.0.cols())
    }
}

/// A polynomial over `Q(zeta_8)` in the class variables `a..f`.
#[pyclass(name = "Poly", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(codent::SwePoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        codent::SwePoly::parse(text, &CLASS_VARS).map(PyPoly).map_err(err)
    }

    /// A bundled enumerator such as `W_E8_Q8` or `W_D16_Q8K8`.
    #[staticmethod]
    fn catalog(id: &str) -> PyResult<Self> {
        verify::catalog_poly(id).map(PyPoly).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyPoly).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn degree(&self) -> Option<u32> {
        self.0.homogeneous_degree()
    }

    fn coeff(&self, exponents: Vec<u32>) -> PyCyclo8 {
        PyCyclo8(self.0.coeff(&exponents))
    }

    fn terms(&self) -> Vec<(Vec<u32>, PyCyclo8)> {
        self.0.terms().map(|(m, c)| (m.0.clone(), PyCyclo8(c.clone()))).collect()
    }

    fn evaluate(&self, point: Vec<CycloLike>) -> PyResult<PyCyclo8> {
        let pt = point.into_iter().map(CycloLike::into_cyclo).collect::<PyResult<Vec<_>>>()?;
        self.0.evaluate(&pt).map(PyCyclo8).map_err(err)
    }

    /// `f(M x)`; a right action.
    fn act(&self, py: Python<'_>, m: &PyMatrix) -> PyResult<Self> {
        py.detach(|| act(&m.0, &self.0)).map(PyPoly).map_err(err)
    }

    fn is_invariant(&self, py: Python<'_>, generators: Vec<PyMatrix>) -> PyResult<bool> {
        let gens: Vec<CMatrix> = generators.into_iter().map(|g| g.0).collect();
        py.detach(|| is_invariant(&self.0, &gens)).map_err(err)
    }

    fn __add__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.add(&o.0).map(PyPoly).map_err(err)
    }

    fn __sub__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.sub(&o.0).map(PyPoly).map_err(err)
    }

    fn __mul__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.mul(&o.0).map(PyPoly).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({} terms)", self.0.len())
    }
}

fn generators(group: &str) -> PyResult<Vec<CMatrix>> {
    match group {
        "G" => catalog::g_generators().map_err(err),
        "H" => catalog::h_generators().map_err(err),
        _ => Err(PyKeyError::new_err(format!("unknown group {group:?}, expected G or H"))),
    }
}

#[pyfunction]
fn group_generators(group: &str) -> PyResult<Vec<PyMatrix>> {
    Ok(generators(group)?.into_iter().map(PyMatrix).collect())
}

#[pyfunction]
#[pyo3(signature = (group, limit = DEFAULT_CLOSURE_LIMIT))]
fn group_order(py: Python<'_>, group: &str, limit: usize) -> PyResult<usize> {
    let gens = generators(group)?;
    py.detach(|| close_group(&gens, limit)).map(|g| g.order()).map_err(err)
}

/// Size and self-duality checks of a bundled code.
#[pyfunction]
fn code_info<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyDict>> {
    let c = enumerate_code(&catalog::code(id).map_err(err)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("modulus", c.modulus())?;
    d.set_item("n", c.n())?;
    d.set_item("size", c.len())?;
    d.set_item("self_dual", is_self_dual(&c))?;
    d.set_item("type_ii", is_type2(&c))?;
    d.set_item("hamming_weights", c.hamming_weights())?;
    Ok(d)
}

/// The enumerator of a binary and a quaternary bundled code.
#[pyfunction]
fn swe_of(py: Python<'_>, binary: &str, quaternary: &str) -> PyResult<PyPoly> {
    let a = enumerate_code(&catalog::code(binary).map_err(err)?).map_err(err)?;
    let b = enumerate_code(&catalog::code(quaternary).map_err(err)?).map_err(err)?;
    py.detach(|| swe(&[&a, &b], &catalog::ring())).map(PyPoly).map_err(err)
}

/// Molien coefficients up to `t^order`; entries are ints, or strings if not integral.
#[pyfunction]
#[pyo3(signature = (group = "H", order = 56))]
fn molien<'py>(py: Python<'py>, group: &str, order: usize) -> PyResult<Bound<'py, PyAny>> {
    let gens = generators(group)?;
    let s = py
        .detach(|| close_group(&gens, DEFAULT_CLOSURE_LIMIT).and_then(|g| molien_series(&g, order)))
        .map_err(err)?;
    json_to_py(py, &serde_json::to_string(&s).expect("serializable"))
}

/// The closed form for `H`, expanded to `t^order`.
#[pyfunction]
#[pyo3(signature = (order = 56))]
fn molien_formula_h(order: usize) -> Vec<i64> {
    expand_formula(&catalog::molien_formula_h(), order).as_integers().expect("integral series")
}

#[pyfunction]
#[pyo3(signature = (degree, group = "H"))]
fn fixed_space_dimension(py: Python<'_>, degree: u32, group: &str) -> PyResult<usize> {
    let gens = generators(group)?;
    py.detach(|| fixed_space_dim(&gens, degree)).map_err(err)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Runs every claim and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (skip_g = false, deep_degree = None, codes = None))]
fn verify_paper<'py>(
    py: Python<'py>,
    skip_g: bool,
    deep_degree: Option<u32>,
    codes: Option<std::collections::BTreeMap<String, PathBuf>>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = VerifyConfig { skip_g, deep_degree, codes: codes.unwrap_or_default(), ..VerifyConfig::default() };
    let report = py.detach(|| verify::verify_paper(&cfg));
    json_to_py(py, &serde_json::to_string(&report).expect("serializable"))
}

/// Text or JSON for a catalog object; `kind` is parsed as an `EmitKind`.
#[pyfunction]
#[pyo3(signature = (kind, id, format = "text"))]
fn emit(kind: &str, id: &str, format: &str) -> PyResult<String> {
    let kind: EmitKind = kind.parse().map_err(err)?;
    let format: Format = format.parse().map_err(err)?;
    verify::emit(kind, id, format).map_err(err)
}

#[pymodule]
pub fn codent_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCyclo8>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(group_generators, m)?)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(code_info, m)?)?;
    m.add_function(wrap_pyfunction!(swe_of, m)?)?;
    m.add_function(wrap_pyfunction!(molien, m)?)?;
    m.add_function(wrap_pyfunction!(molien_formula_h, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_space_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    m.add_function(wrap_pyfunction!(emit, m)?)?;
    m.add("ORDER_G", catalog::ORDER_G)?;
    m.add("ORDER_H", catalog::ORDER_H)?;
    Ok(())
}
