//! Python bindings. Matrix entries cross the boundary as `int` or as
//! strings such as `"-3/4"`, so nothing is ever rounded.

use frobcheck_core::convolution::{self, BaseFunctor};
use frobcheck_core::dsl::{self, RunOptions, SpecModel};
use frobcheck_core::duality::{self, DualSituation, FrobeniusAlgebra};
use frobcheck_core::functor::{self, FrobFunctor, ObjectGrid};
use frobcheck_core::linalg::{self, RatMatrix, Rational};
use frobcheck_core::{frob_tensor, format_report, CategoryInstance, FiniteBase, FrobError, ReportMode};
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn err(e: FrobError) -> PyErr {
    match e {
        FrobError::ZeroDenominator => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn entry(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(n));
    }
    let text: String = obj.str()?.extract()?;
    text.trim()
        .parse()
        .map_err(|_| PyValueError::new_err(format!("`{text}` is not a rational number")))
}

fn grid(lo: usize, hi: usize) -> PyResult<ObjectGrid> {
    ObjectGrid::dims(lo, hi).map_err(err)
}

/// Exact rational matrix.
#[pyclass(name = "Matrix", module = "frobcheck", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix(RatMatrix);

#[pymethods]
impl PyMatrix {
    /// `Matrix([[1, 0], ["1/2", -1]])`. A 0-row matrix needs `cols`.
    #[new]
    #[pyo3(signature = (rows, cols=None))]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>, cols: Option<usize>) -> PyResult<Self> {
        let width = rows.first().map(Vec::len).or(cols).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * width);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(PyValueError::new_err(format!(
                    "row {i} has {} entries, expected {width}",
                    row.len()
                )));
            }
            for x in row {
                data.push(entry(x)?);
            }
        }
        RatMatrix::new(rows.len(), width, data).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(RatMatrix::identity(n))
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    /// Entries as strings, row by row.
    fn to_list(&self) -> Vec<Vec<String>> {
        self.0
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(Rational::to_compact_string).collect())
            .collect()
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.0.mat_mul(&other.0).map(Self).map_err(err)
    }

    fn kron(&self, other: &PyMatrix) -> Self {
        Self(linalg::kron(&self.0, &other.0))
    }

    fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    fn rank(&self) -> usize {
        linalg::rank(&self.0)
    }

    fn inverse(&self) -> Option<Self> {
        linalg::inverse(&self.0).map(Self)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", dsl::matrix_literal(&self.0))
    }
}

/// Outcome of a batch of checks.
#[pyclass(name = "Report", module = "frobcheck", frozen)]
struct PyReport(frobcheck_core::Report);

#[pymethods]
impl PyReport {
    fn all_pass(&self) -> bool {
        self.0.all_pass()
    }

    /// 0 if everything passed, 1 on a failed check, 2 on an error.
    fn exit_code(&self) -> i32 {
        self.0.exit_code()
    }

    fn failures(&self) -> Vec<String> {
        self.0
            .failures()
            .map(|e| format!("{}/{} at {}", e.suite, e.check, e.location))
            .collect()
    }

    fn to_json(&self) -> String {
        format_report(&self.0, ReportMode::Json)
    }

    fn to_text(&self) -> String {
        format_report(&self.0, ReportMode::Text)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let failed = self.0.failures().count();
        format!("Report({} entries, {failed} failed)", self.0.len())
    }
}

#[pyclass(name = "FrobeniusAlgebra", module = "frobcheck", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(FrobeniusAlgebra);

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(dim: usize, mu: &PyMatrix, eta: &PyMatrix, delta: &PyMatrix, eps: &PyMatrix) -> PyResult<Self> {
        FrobeniusAlgebra::new(dim, mu.0.clone(), eta.0.clone(), delta.0.clone(), eps.0.clone())
            .map(Self)
            .map_err(err)
    }

    /// The group algebra of the cyclic group of order `n`.
    #[staticmethod]
    fn group_algebra(n: usize) -> PyResult<Self> {
        let base = FiniteBase::zmod(n).map_err(err)?;
        Ok(Self(FrobeniusAlgebra::group_algebra(&base)))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn mu(&self) -> PyMatrix {
        PyMatrix(self.0.mu().clone())
    }

    #[getter]
    fn eps(&self) -> PyMatrix {
        PyMatrix(self.0.eps().clone())
    }

    fn check(&self) -> PyReport {
        PyReport(duality::check_frobenius_algebra(&self.0))
    }
}

#[pyclass(name = "Functor", module = "frobcheck", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFunctor(FrobFunctor);

#[pymethods]
impl PyFunctor {
    #[staticmethod]
    fn identity() -> Self {
        Self(FrobFunctor::identity())
    }

    #[staticmethod]
    fn tensor_left(alg: &PyAlgebra) -> PyResult<Self> {
        duality::tensor_left_functor(&alg.0, &CategoryInstance::MatQ)
            .map(Self)
            .map_err(err)
    }

    /// `outer ∘ inner`
    #[staticmethod]
    fn compose(outer: &PyFunctor, inner: &PyFunctor) -> PyResult<Self> {
        functor::compose_frobenius(&outer.0, &inner.0).map(Self).map_err(err)
    }

    #[staticmethod]
    fn pointwise_tensor(f: &PyFunctor, g: &PyFunctor) -> PyResult<Self> {
        frob_tensor::pointwise_tensor(&f.0, &g.0).map(Self).map_err(err)
    }

    /// Gives a strong monoidal functor its inverse comonoidal structure.
    #[staticmethod]
    #[pyo3(signature = (f, lo=1, hi=2))]
    fn from_strong(f: &PyFunctor, lo: usize, hi: usize) -> PyResult<Self> {
        functor::from_strong(f.0.clone(), &grid(lo, hi)?).map(Self).map_err(err)
    }

    fn dim_at(&self, n: usize) -> PyResult<usize> {
        self.0.dim_at(&frobcheck_core::MonObject::Mat(n)).map_err(err)
    }

    #[pyo3(signature = (lo=1, hi=2))]
    fn check_frobenius(&self, lo: usize, hi: usize) -> PyResult<PyReport> {
        Ok(PyReport(functor::check_frobenius(&self.0, &grid(lo, hi)?)))
    }

    #[pyo3(signature = (lo=1, hi=2))]
    fn run_all_suites(&self, lo: usize, hi: usize) -> PyResult<PyReport> {
        Ok(PyReport(functor::run_all_suites(&self.0, &grid(lo, hi)?)))
    }

    #[pyo3(signature = (lo=1, hi=2))]
    fn is_split(&self, lo: usize, hi: usize) -> PyResult<bool> {
        Ok(functor::is_split(&self.0, &grid(lo, hi)?))
    }

    fn apply_to_algebra(&self, alg: &PyAlgebra) -> PyResult<PyAlgebra> {
        duality::apply_functor_to_algebra(&self.0, &alg.0).map(PyAlgebra).map_err(err)
    }

    /// Transports `cupcap(n)` along this functor and checks the triangles.
    fn transported_triangles(&self, n: usize) -> PyResult<PyReport> {
        let moved = duality::transport_dual(&self.0, &DualSituation::cupcap(n)).map_err(err)?;
        Ok(PyReport(duality::check_triangles(&moved)))
    }
}

#[pyfunction]
#[pyo3(signature = (f, g, h, lo=1, hi=2))]
fn check_frob_category(f: &PyFunctor, g: &PyFunctor, h: &PyFunctor, lo: usize, hi: usize) -> PyResult<PyReport> {
    Ok(PyReport(frob_tensor::check_frob_category(&f.0, &g.0, &h.0, &grid(lo, hi)?)))
}

/// Dimension of `F * F` for the regular representation of `ℤ/n`.
#[pyfunction]
fn regular_convolution_dim(n: usize) -> PyResult<usize> {
    let base = FiniteBase::zmod(n).map_err(err)?;
    let f = BaseFunctor::regular(&base).map_err(err)?;
    Ok(convolution::convolution_product(&f, &f).map_err(err)?.dim())
}

/// The convolution suite for the regular representation of `ℤ/n`.
#[pyfunction]
fn regular_convolution_suite(n: usize) -> PyResult<PyReport> {
    let base = FiniteBase::zmod(n).map_err(err)?;
    let f = BaseFunctor::regular(&base).map_err(err)?;
    Ok(PyReport(convolution::convolution_suite(&f)))
}

/// A parsed spec. Parse errors raise `ValueError` with the line and column.
#[pyclass(name = "Spec", module = "frobcheck", frozen)]
struct PySpec(SpecModel);

#[pymethods]
impl PySpec {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        dsl::parse_spec(text)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[pyo3(signature = (max_dim=None, fail_fast=false))]
    fn run(&self, py: Python<'_>, max_dim: Option<usize>, fail_fast: bool) -> PyReport {
        let opts = RunOptions { max_dim, fail_fast };
        PyReport(py.detach(|| dsl::run_checks(&self.0, &opts)))
    }

    fn serialize(&self) -> String {
        dsl::serialize_spec(&self.0)
    }
}

#[pymodule]
fn frobcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyFunctor>()?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(check_frob_category, m)?)?;
    m.add_function(wrap_pyfunction!(regular_convolution_dim, m)?)?;
    m.add_function(wrap_pyfunction!(regular_convolution_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;
    use std::ffi::CString;

    fn run(script: &str) {
        Python::attach(|py| {
            let module = PyModule::new(py, "frobcheck").unwrap();
            frobcheck(&module).unwrap();
            let globals = PyDict::new(py);
            globals.set_item("fc", module).unwrap();
            let code = CString::new(script).unwrap();
            if let Err(e) = py.run(&code, Some(&globals), None) {
                e.print(py);
                panic!("python snippet failed");
            }
        });
    }

    #[test]
    fn matrices_accept_ints_and_fraction_strings() {
        run("m = fc.Matrix([[2, '-3/6']])\nassert m.to_list() == [['2', '-1/2']]\nassert m.transpose().shape == (2, 1)");
    }

    #[test]
    fn bad_entries_raise_value_error() {
        run("try:\n    fc.Matrix([[1, 'x']])\n    raise AssertionError\nexcept ValueError:\n    pass");
    }

    #[test]
    fn zero_row_matrices_take_explicit_width() {
        run("assert fc.Matrix([], cols=3).shape == (0, 3)");
    }

    #[test]
    fn spec_reports_round_trip_through_json() {
        run(concat!(
            "import json\n",
            "s = fc.Spec.parse('dual D = cupcap(2)\\ncheck triangles D')\n",
            "r = s.run()\n",
            "assert r.all_pass() and r.exit_code() == 0\n",
            "assert len(json.loads(r.to_json())) == len(r)\n",
        ));
    }

    #[test]
    fn max_dim_cap_surfaces_as_error_exit() {
        run(concat!(
            "s = fc.Spec.parse('frobalg R = zmod(2)\\nfunctor F = tensor_left(R)\\ncheck frobenius F grid 1..2')\n",
            "assert s.run(max_dim=8).exit_code() == 2\n",
        ));
    }
}
