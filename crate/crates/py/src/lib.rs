//! Python bindings. Structured inputs and reports cross the boundary as the
//! same JSON documents the CLI reads and writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;

use lamplighter::finite_quotients::{self, QuSource};
use lamplighter::fp_poly::{FieldSpec, FpPoly};
use lamplighter::json::{self, CandidateJson, MatrixJson, PresentationJson};
use lamplighter::poly_matrix;
use lamplighter::rigidity::{self, CandidateGroup, CertifyOptions, DecompositionReport};
use lamplighter::rp_module::{self, ModulePresentation};
use lamplighter::wreath::{Base, LamplighterSpec, WreathElement};

fn err(e: lamplighter::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(p: u64) -> PyResult<FieldSpec> {
    FieldSpec::new(p).map_err(err)
}

/// Accepts either a bare presentation or a candidate document.
fn presentation(text: &str) -> PyResult<ModulePresentation> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    if value.get("presentation").is_some() {
        let c: CandidateJson = json::parse(text).map_err(err)?;
        Ok(CandidateGroup::from_json(&c).map_err(err)?.presentation().clone())
    } else {
        json::parse::<PresentationJson>(text).map_err(err)?.to_presentation().map_err(err)
    }
}

/// A polynomial over F_p, built from its coefficient list (constant first).
#[pyclass(name = "Poly", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(FpPoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(p: u64, coeffs: Vec<i64>) -> PyResult<Self> {
        Ok(PyPoly(FpPoly::from_signed(field(p)?, &coeffs)))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.field().p()
    }

    fn coeffs(&self) -> Vec<u64> {
        self.0.coeffs().to_vec()
    }

    /// `None` for the zero polynomial.
    fn degree(&self) -> Option<usize> {
        self.0.degree().finite()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn monic(&self) -> Self {
        PyPoly(self.0.monic())
    }

    fn eval(&self, at: u64) -> u64 {
        self.0.eval(at)
    }

    fn gcd(&self, other: &PyPoly) -> Self {
        PyPoly(self.0.gcd(&other.0))
    }

    fn divmod(&self, other: &PyPoly) -> PyResult<(PyPoly, PyPoly)> {
        let (q, r) = self.0.divmod(&other.0).map_err(err)?;
        Ok((PyPoly(q), PyPoly(r)))
    }

    fn __add__(&self, other: &PyPoly) -> Self {
        PyPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyPoly) -> Self {
        PyPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyPoly) -> Self {
        PyPoly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        PyPoly(-&self.0)
    }

    fn __pow__(&self, exp: u32, _modulo: Option<u32>) -> Self {
        PyPoly(self.0.pow(exp))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, {:?})", self.p(), self.0.coeffs())
    }
}

/// An element of (Z/p)^n wr Z, or of (Z/p)^n wr Z/m when `cyclic` is given.
#[pyclass(name = "WreathElement", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWreath(WreathElement);

impl PyWreath {
    fn op(&self, other: &PyWreath) -> PyResult<Self> {
        Ok(PyWreath(self.0.mul(&other.0).map_err(err)?))
    }
}

#[pymethods]
impl PyWreath {
    #[new]
    #[pyo3(signature = (p, n, lamps, shift, cyclic=None))]
    fn new(p: u64, n: usize, lamps: Vec<(i64, Vec<i64>)>, shift: i64, cyclic: Option<u64>) -> PyResult<Self> {
        let base = cyclic.map_or(Base::Integers, Base::Cyclic);
        let spec = LamplighterSpec::new(field(p)?, n, base).map_err(err)?;
        Ok(PyWreath(WreathElement::new(spec, lamps, shift).map_err(err)?))
    }

    #[classmethod]
    #[pyo3(signature = (p, n, cyclic=None))]
    fn identity(_cls: &Bound<'_, PyType>, p: u64, n: usize, cyclic: Option<u64>) -> PyResult<Self> {
        Self::new(p, n, Vec::new(), 0, cyclic)
    }

    #[getter]
    fn shift(&self) -> i64 {
        self.0.shift()
    }

    #[getter]
    fn lamps(&self) -> Vec<(i64, Vec<u64>)> {
        self.0.lamps().iter().map(|(&i, v)| (i, v.clone())).collect()
    }

    fn mul(&self, other: &PyWreath) -> PyResult<Self> {
        self.op(other)
    }

    fn __mul__(&self, other: &PyWreath) -> PyResult<Self> {
        self.op(other)
    }

    fn inv(&self) -> Self {
        PyWreath(self.0.inv())
    }

    fn __pow__(&self, k: i64, _modulo: Option<i64>) -> Self {
        PyWreath(self.0.pow(k))
    }

    fn commutator(&self, other: &PyWreath) -> PyResult<Self> {
        Ok(PyWreath(self.0.commutator(&other.0).map_err(err)?))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Image in (Z/p)^n × Z (or × Z/m).
    fn abelianize(&self) -> (Vec<u64>, i64) {
        self.0.abelianize()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("WreathElement({})", self.0)
    }
}

/// Invariant factors of a matrix document, as coefficient lists.
#[pyfunction]
fn smith_diagonal(matrix_json: &str) -> PyResult<Vec<Vec<u64>>> {
    let m = json::parse::<MatrixJson>(matrix_json).map_err(err)?.to_matrix().map_err(err)?;
    let snf = poly_matrix::smith_normal_form(&m);
    if !snf.verify(&m).map_err(err)? {
        return Err(PyValueError::new_err("Smith form failed its certificate"));
    }
    Ok(snf.diag().iter().map(|d| d.coeffs().to_vec()).collect())
}

/// Decomposition report of a presentation or candidate, as JSON.
#[pyfunction]
fn decompose(presentation_json: &str) -> PyResult<String> {
    let d = rp_module::decompose(&presentation(presentation_json)?);
    Ok(json::to_string(&DecompositionReport::new(&d)))
}

/// dim over F_p of N / (x^m - 1) N.
#[pyfunction]
fn quotient_dim(presentation_json: &str, m: usize) -> PyResult<usize> {
    rp_module::decompose(&presentation(presentation_json)?).quotient_dim(m).map_err(err)
}

/// Orders of the isomorphism classes of finite quotients up to `bound`.
#[pyfunction]
#[pyo3(signature = (presentation_json, bound=8, order_cap=4096))]
fn quotient_orders(presentation_json: &str, bound: usize, order_cap: u128) -> PyResult<Vec<usize>> {
    let source = QuSource::Presentation(presentation(presentation_json)?);
    Ok(finite_quotients::truncated_qu(&source, bound, order_cap).map_err(err)?.orders())
}

/// Compares bounded quotient sets; returns the comparison as JSON.
#[pyfunction]
#[pyo3(signature = (left_json, right_json, bound=8, order_cap=4096))]
fn compare_qu(left_json: &str, right_json: &str, bound: usize, order_cap: u128) -> PyResult<String> {
    let left = QuSource::Presentation(presentation(left_json)?);
    let right = QuSource::Presentation(presentation(right_json)?);
    let cmp = finite_quotients::compare_qu(&left, &right, bound, order_cap).map_err(err)?;
    Ok(json::to_string(&cmp))
}

/// Runs the certificate pipeline on a candidate document; returns the
/// report as JSON.
#[pyfunction]
#[pyo3(signature = (candidate_json, qu_bound=8, seed=0, order_cap=4096))]
fn certify(candidate_json: &str, qu_bound: usize, seed: u64, order_cap: u128) -> PyResult<String> {
    let cand = CandidateGroup::parse(candidate_json).map_err(err)?;
    let opts = CertifyOptions { qu_bound, seed, order_cap, ..CertifyOptions::default() };
    Ok(rigidity::certify(&cand, &opts).map_err(err)?.to_json())
}

#[pymodule]
fn lamplighter_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyWreath>()?;
    m.add_function(wrap_pyfunction!(smith_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_dim, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_orders, m)?)?;
    m.add_function(wrap_pyfunction!(compare_qu, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    Ok(())
}
