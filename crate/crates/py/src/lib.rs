//! Python module `braket`: metrics, variance-tagged vectors, kinded
//! operators, basis changes, sl(2, C) representations and the expression
//! language.
//!
//! Matrices cross the boundary as lists of rows of Python `complex`.

use braket_cli::{dsl, json};
use braket_core::cvs::{self, MetricOperator, VarVector, Variance};
use braket_core::opalg::{self, KindedOperator, OperatorKind};
use braket_core::repsl2c::{self, BasisKind, CoupledRep, Weight};
use braket_core::{projections, transforms, Complex64, ComplexMatrix, Tolerances};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Rows = Vec<Vec<Complex64>>;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Rows) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).map_err(err)
}

fn to_rows(a: &ComplexMatrix) -> Rows {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

fn tol() -> Tolerances {
    Tolerances::default()
}

#[pyclass(name = "Metric", module = "braket", frozen)]
struct PyMetric(MetricOperator);

#[pymethods]
impl PyMetric {
    #[new]
    fn new(eta: Rows) -> PyResult<Self> {
        Ok(Self(MetricOperator::new(to_matrix(eta)?, &tol()).map_err(err)?))
    }

    #[staticmethod]
    fn diag(values: Vec<f64>) -> PyResult<Self> {
        Ok(Self(MetricOperator::from_real_diag(&values).map_err(err)?))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn eta(&self) -> Rows {
        to_rows(self.0.eta())
    }

    #[getter]
    fn eta_inv(&self) -> Rows {
        to_rows(self.0.eta_inv())
    }

    /// `(n_plus, n_minus)`.
    fn signature(&self) -> PyResult<(usize, usize)> {
        let s = self.0.signature(&tol()).map_err(err)?;
        Ok((s.n_plus, s.n_minus))
    }

    fn __repr__(&self) -> String {
        format!("Metric(dim={})", self.0.dim())
    }
}

#[pyclass(name = "Vector", module = "braket", frozen)]
struct PyVector(VarVector);

#[pymethods]
impl PyVector {
    /// `variance` is one of `KetDown`, `KetUp`, `BraDown`, `BraUp`.
    #[new]
    #[pyo3(signature = (components, variance = "KetDown"))]
    fn new(components: Vec<Complex64>, variance: &str) -> PyResult<Self> {
        let v = Variance::from_name(variance)
            .ok_or_else(|| PyValueError::new_err(format!("unknown variance {variance:?}")))?;
        Ok(Self(VarVector::new(components, v)))
    }

    #[getter]
    fn components(&self) -> Vec<Complex64> {
        self.0.components.clone()
    }

    #[getter]
    fn variance(&self) -> &'static str {
        self.0.variance.name()
    }

    fn __repr__(&self) -> String {
        format!("Vector({:?}, {:?})", self.0.components, self.0.variance.name())
    }
}

#[pyclass(name = "Operator", module = "braket", frozen)]
struct PyOperator(KindedOperator);

#[pymethods]
impl PyOperator {
    /// `kind` is one of `DownDown`, `UpUp`, `DownUp`, `UpDown`.
    #[new]
    #[pyo3(signature = (matrix, kind = "DownDown"))]
    fn new(matrix: Rows, kind: &str) -> PyResult<Self> {
        let k = OperatorKind::from_name(kind)
            .ok_or_else(|| PyValueError::new_err(format!("unknown operator kind {kind:?}")))?;
        Ok(Self(KindedOperator::new(to_matrix(matrix)?, k).map_err(err)?))
    }

    #[getter]
    fn matrix(&self) -> Rows {
        to_rows(&self.0.mat)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind.name()
    }

    fn apply(&self, v: &PyVector) -> PyResult<PyVector> {
        Ok(PyVector(self.0.apply(&v.0).map_err(err)?))
    }

    fn trace(&self) -> PyResult<Complex64> {
        opalg::trace(&self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Operator(kind={:?}, dim={})", self.0.kind.name(), self.0.dim())
    }
}

#[pyfunction]
fn relate_bra(v: &PyVector) -> PyResult<PyVector> {
    Ok(PyVector(cvs::relate_bra(&v.0).map_err(err)?))
}

#[pyfunction]
fn relate_ket(v: &PyVector) -> PyResult<PyVector> {
    Ok(PyVector(cvs::relate_ket(&v.0).map_err(err)?))
}

#[pyfunction]
fn couple(m: &PyMetric, v: &PyVector) -> PyResult<PyVector> {
    Ok(PyVector(cvs::couple(&m.0, &v.0).map_err(err)?))
}

#[pyfunction]
fn dual_form(bra: &PyVector, ket: &PyVector) -> PyResult<Complex64> {
    cvs::dual_form(&bra.0, &ket.0).map_err(err)
}

#[pyfunction]
fn scalar_product(m: &PyMetric, x: &PyVector, y: &PyVector) -> PyResult<Complex64> {
    cvs::scalar_product(&m.0, &x.0, &y.0).map_err(err)
}

#[pyfunction]
fn compose(x: &PyOperator, y: &PyOperator) -> PyResult<PyOperator> {
    Ok(PyOperator(opalg::compose(&x.0, &y.0).map_err(err)?))
}

#[pyfunction]
fn add(x: &PyOperator, y: &PyOperator) -> PyResult<PyOperator> {
    Ok(PyOperator(opalg::add(&x.0, &y.0).map_err(err)?))
}

#[pyfunction]
fn hermitian_adjoint(x: &PyOperator) -> PyOperator {
    PyOperator(opalg::hermitian_adjoint(&x.0))
}

#[pyfunction]
fn dirac_adjoint(x: &PyOperator, m: &PyMetric) -> PyResult<PyOperator> {
    Ok(PyOperator(opalg::dirac_adjoint(&x.0, &m.0).map_err(err)?))
}

#[pyfunction]
fn couple_operator(m: &PyMetric, x: &PyOperator) -> PyResult<PyOperator> {
    Ok(PyOperator(opalg::couple_operator(&m.0, &x.0).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (x, m, tol = None))]
fn is_semi_hermitian(x: &PyOperator, m: &PyMetric, tol: Option<f64>) -> PyResult<bool> {
    opalg::is_semi_hermitian(&x.0, &m.0, tol.unwrap_or(self::tol().herm_tol)).map_err(err)
}

fn projector(p: Rows) -> PyResult<projections::Projector> {
    projections::Projector::from_matrix(to_matrix(p)?, tol().eq_tol).map_err(err)
}

#[pyfunction]
fn is_perp(p: Rows, q: Rows, m: &PyMetric) -> PyResult<bool> {
    projections::is_perp(&projector(p)?, &projector(q)?, &m.0, tol().eq_tol).map_err(err)
}

#[pyfunction]
fn is_additive(p: Rows, q: Rows) -> PyResult<bool> {
    projections::is_additive(&projector(p)?, &projector(q)?, tol().eq_tol).map_err(err)
}

fn basis_change(t: Rows) -> PyResult<transforms::BasisChange> {
    transforms::BasisChange::new(to_matrix(t)?, &tol()).map_err(err)
}

/// New metric `T^+ eta T`.
#[pyfunction]
fn transform_metric(t: Rows, m: &PyMetric) -> PyResult<PyMetric> {
    Ok(PyMetric(transforms::transform_metric(&basis_change(t)?, &m.0, &tol()).map_err(err)?))
}

#[pyfunction]
fn transform_operator(t: Rows, x: &PyOperator) -> PyResult<PyOperator> {
    Ok(PyOperator(transforms::transform_operator(&basis_change(t)?, &x.0).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (u, m, tol = None))]
fn is_symmetry(u: Rows, m: &PyMetric, tol: Option<f64>) -> PyResult<bool> {
    transforms::is_symmetry(&to_matrix(u)?, &m.0, tol.unwrap_or(self::tol().sym_tol)).map_err(err)
}

fn weight(j: f64) -> PyResult<Weight> {
    Weight::from_f64(j).map_err(err)
}

/// Clebsch-Gordan coefficient as `(sign, squared)` with `squared` an exact
/// fraction string such as `"1/2"`.
#[pyfunction]
fn cg(j1: f64, l1: f64, j2: f64, l2: f64, s: f64, sigma: f64) -> PyResult<(i8, String)> {
    let c = repsl2c::clebsch_gordan_f64(j1, l1, j2, l2, s, sigma).map_err(err)?;
    Ok((c.sign(), c.squared().to_string()))
}

#[pyclass(name = "Rep", module = "braket", frozen)]
struct PyRep(CoupledRep);

#[pymethods]
impl PyRep {
    #[getter]
    fn dim(&self) -> usize {
        self.0.dim
    }

    #[getter]
    fn j1(&self) -> f64 {
        self.0.j1.value()
    }

    #[getter]
    fn j2(&self) -> f64 {
        self.0.j2.value()
    }

    #[getter]
    fn epsilon(&self) -> i8 {
        self.0.epsilon
    }

    #[getter]
    fn basis(&self) -> &'static str {
        self.0.basis.name()
    }

    #[getter]
    fn metric(&self) -> PyMetric {
        PyMetric(self.0.metric.clone())
    }

    #[getter]
    fn m(&self) -> Vec<Rows> {
        self.0.m.iter().map(to_rows).collect()
    }

    #[getter]
    fn n(&self) -> Vec<Rows> {
        self.0.n.iter().map(to_rows).collect()
    }

    /// Rotation generators `I_a`.
    #[getter]
    fn i(&self) -> Vec<Rows> {
        self.0.i.iter().map(to_rows).collect()
    }

    /// Boost generators `K_a`.
    #[getter]
    fn k(&self) -> Vec<Rows> {
        self.0.k.iter().map(to_rows).collect()
    }

    fn signature(&self) -> PyResult<(usize, usize)> {
        let s = repsl2c::rep_signature(&self.0, &tol()).map_err(err)?;
        Ok((s.n_plus, s.n_minus))
    }

    fn to_json(&self) -> PyResult<String> {
        Ok(json::to_text(&json::rep_to_json(&self.0).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(json::rep_from_str(text).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Rep(j1={}, j2={}, epsilon={}, basis={:?})",
            self.0.j1.value(),
            self.0.j2.value(),
            self.0.epsilon,
            self.0.basis.name()
        )
    }
}

/// `[j1, j2]` representation; `j1 == j2` gives the diagonal one.
/// `basis` is `canonical`, `rotation` or `orthonormal`.
#[pyfunction]
#[pyo3(signature = (j1, j2, epsilon = None, basis = "canonical"))]
fn build_rep(j1: f64, j2: f64, epsilon: Option<i8>, basis: &str) -> PyResult<PyRep> {
    let kind = BasisKind::from_name(basis)
        .ok_or_else(|| PyValueError::new_err(format!("unknown basis {basis:?}")))?;
    let rep = repsl2c::build_in_basis(weight(j1)?, weight(j2)?, epsilon, kind).map_err(err)?;
    Ok(PyRep(rep))
}

/// Evaluate an expression against an environment given as JSON text.
/// Returns a `complex`, a `Vector` or an `Operator`.
#[pyfunction]
fn eval(py: Python<'_>, expr: &str, env_json: &str) -> PyResult<Py<PyAny>> {
    let env = json::env_from_str(env_json).map_err(err)?;
    Ok(match dsl::eval_str(expr, &env).map_err(err)? {
        dsl::Value::Scalar(z) => z.into_pyobject(py)?.into_any().unbind(),
        dsl::Value::Vector(v) => Py::new(py, PyVector(v))?.into_any(),
        dsl::Value::Operator(op) => Py::new(py, PyOperator(op))?.into_any(),
    })
}

#[pymodule]
fn braket(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMetric>()?;
    m.add_class::<PyVector>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyRep>()?;
    m.add_function(wrap_pyfunction!(relate_bra, m)?)?;
    m.add_function(wrap_pyfunction!(relate_ket, m)?)?;
    m.add_function(wrap_pyfunction!(couple, m)?)?;
    m.add_function(wrap_pyfunction!(dual_form, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_product, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(add, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_adjoint, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_adjoint, m)?)?;
    m.add_function(wrap_pyfunction!(couple_operator, m)?)?;
    m.add_function(wrap_pyfunction!(is_semi_hermitian, m)?)?;
    m.add_function(wrap_pyfunction!(is_perp, m)?)?;
    m.add_function(wrap_pyfunction!(is_additive, m)?)?;
    m.add_function(wrap_pyfunction!(transform_metric, m)?)?;
    m.add_function(wrap_pyfunction!(transform_operator, m)?)?;
    m.add_function(wrap_pyfunction!(is_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(cg, m)?)?;
    m.add_function(wrap_pyfunction!(build_rep, m)?)?;
    m.add_function(wrap_pyfunction!(eval, m)?)?;
    Ok(())
}
