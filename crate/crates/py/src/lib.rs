//! Python bindings. Build with `maturin develop` or copy the cdylib to
//! `logchern.so` next to the calling script.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use logchern::arrangements::{build_lattice, parse_arrangement, poincare_affine, poincare_projective};
use logchern::chern_csm::{self, VerifyOptions};
use logchern::log_geometry::{
    defining_data, derivation_module, derivation_module_d0, freeness_test, log_forms, nonfree_locus,
    relative_log_forms, NonFreeOptions,
};
use logchern::Error;

create_exception!(logchern, HypothesisError, PyException);
create_exception!(logchern, CrossCheckError, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Hypothesis(_) | Error::NonIsolatedNonFreeLocus { .. } => HypothesisError::new_err(e.to_string()),
        Error::CrossCheckMismatch(_) => CrossCheckError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A hyperplane arrangement given by integer normal vectors.
#[pyclass(name = "Arrangement", frozen)]
struct PyArrangement {
    inner: logchern::arrangements::Arrangement,
}

#[pymethods]
impl PyArrangement {
    #[new]
    #[pyo3(signature = (normals, constants=None, labels=None))]
    fn new(normals: Vec<Vec<i64>>, constants: Option<Vec<i64>>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let dim = normals.first().map(|n| n.len()).ok_or_else(|| PyValueError::new_err("no hyperplanes"))?;
        let mut a = match constants {
            Some(c) => logchern::arrangements::Arrangement::affine(dim, normals, c),
            None => logchern::arrangements::Arrangement::central(dim, normals),
        }
        .map_err(py_err)?;
        if let Some(l) = labels {
            a = a.with_labels(l).map_err(py_err)?;
        }
        Ok(PyArrangement { inner: a })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyArrangement { inner: parse_arrangement(text).map_err(py_err)? })
    }

    /// One of the bundled examples, see `examples()`.
    #[staticmethod]
    fn example(name: &str) -> PyResult<Self> {
        match logchern::examples::bundled(name) {
            Some(a) => Ok(PyArrangement { inner: a.map_err(py_err)? }),
            None => Err(PyValueError::new_err(format!("unknown example {name:?}"))),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn normals(&self) -> Vec<Vec<i64>> {
        self.inner.normals().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Arrangement({})", self.inner.render_forms().join(", "))
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Number of flats in each codimension.
    fn lattice_counts(&self) -> Vec<usize> {
        build_lattice(&self.inner).counts()
    }

    fn poincare_affine(&self) -> Vec<i64> {
        poincare_affine(&self.inner).coeffs().to_vec()
    }

    fn poincare_projective(&self) -> PyResult<Vec<i64>> {
        Ok(poincare_projective(&self.inner).map_err(py_err)?.coeffs().to_vec())
    }

    fn csm_complement(&self) -> PyResult<Vec<i64>> {
        let pi = poincare_projective(&self.inner).map_err(py_err)?;
        Ok(chern_csm::csm_complement(&pi, self.inner.dim()).coeffs().to_vec())
    }

    fn csm_of_divisor(&self) -> PyResult<Vec<i64>> {
        let pi = poincare_projective(&self.inner).map_err(py_err)?;
        Ok(chern_csm::csm_of_divisor(&pi, self.inner.dim()).coeffs().to_vec())
    }
}

/// Summary of one logarithmic module.
#[pyclass(name = "LogModule", frozen, get_all)]
struct PyLogModule {
    kind: String,
    generator_degrees: Vec<i32>,
    pdim: i64,
    is_free: bool,
    exponents: Option<Vec<i32>>,
    /// `(degree, multiplicity)` pairs of each term in the minimal resolution.
    resolution: Vec<Vec<(i32, usize)>>,
}

#[pymethods]
impl PyLogModule {
    fn __repr__(&self) -> String {
        format!("LogModule({}, degrees={:?}, pdim={})", self.kind, self.generator_degrees, self.pdim)
    }
}

/// `kind` is one of `D`, `D0`, `Omega1`, `Omega1_0`.
#[pyfunction]
fn log_module(a: &PyArrangement, kind: &str) -> PyResult<PyLogModule> {
    let dd = defining_data(&a.inner).map_err(py_err)?;
    let m = match kind {
        "D" => derivation_module(&a.inner),
        "D0" => derivation_module_d0(&dd),
        "Omega1" => log_forms(&dd),
        "Omega1_0" => log_forms(&dd).and_then(|o| relative_log_forms(&dd, &o)),
        _ => return Err(PyValueError::new_err(format!("unknown module kind {kind:?}"))),
    }
    .map_err(py_err)?;
    let f = freeness_test(&m);
    Ok(PyLogModule {
        kind: m.kind.name().to_string(),
        generator_degrees: m.generator_degrees(),
        pdim: m.pdim(),
        is_free: f.is_free,
        exponents: f.exponents,
        resolution: m.resolution.terms.iter().map(|t| t.twist_multiset().into_iter().collect()).collect(),
    })
}

/// Length of the non-free locus of the projectivized arrangement.
#[pyfunction]
#[pyo3(signature = (a, per_flat=false, degree_cap=200))]
fn nval(a: &PyArrangement, per_flat: bool, degree_cap: i64) -> PyResult<i64> {
    let dd = defining_data(&a.inner).map_err(py_err)?;
    let omega0 = log_forms(&dd).and_then(|o| relative_log_forms(&dd, &o)).map_err(py_err)?;
    let r = nonfree_locus(&a.inner, &omega0, NonFreeOptions { per_flat, chart: None, degree_cap }).map_err(py_err)?;
    if let Some(t) = r.per_flat_total() {
        if t != r.n_projective {
            return Err(CrossCheckError::new_err(format!("N = {} but {t} summed over points", r.n_projective)));
        }
    }
    Ok(r.n_projective)
}

#[pyclass(name = "VerificationReport", frozen, get_all)]
struct PyReport {
    lhs: Vec<i64>,
    csm: Vec<i64>,
    n: i64,
    defect_coeff: i64,
    predicted_defect: Vec<i64>,
    residual: Vec<i64>,
    holds: bool,
    json: String,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!("VerificationReport(lhs={:?}, csm={:?}, N={}, holds={})", self.lhs, self.csm, self.n, self.holds)
    }
}

#[pyfunction]
#[pyo3(signature = (a, assume_locally_tame=false, per_flat=true, chart=None, degree_cap=200))]
fn verify(
    py: Python<'_>,
    a: &PyArrangement,
    assume_locally_tame: bool,
    per_flat: bool,
    chart: Option<usize>,
    degree_cap: i64,
) -> PyResult<PyReport> {
    let opts = VerifyOptions { assume_locally_tame, per_flat_check: per_flat, chart, degree_cap };
    let arr = a.inner.clone();
    let r = py.detach(move || chern_csm::verify_main_theorem(&arr, opts)).map_err(py_err)?;
    Ok(PyReport {
        lhs: r.lhs.coeffs().to_vec(),
        csm: r.rhs_csm.coeffs().to_vec(),
        n: r.n,
        defect_coeff: r.defect_coeff,
        predicted_defect: r.predicted_defect.coeffs().to_vec(),
        residual: r.residual.coeffs().to_vec(),
        holds: r.holds(),
        json: serde_json::to_string(&r).expect("serializable report"),
    })
}

#[pyfunction]
fn defect_coefficient(l: i64) -> PyResult<i64> {
    chern_csm::defect_coefficient(l).map_err(py_err)
}

#[pyfunction]
fn chern_point(d: i64) -> PyResult<Vec<i64>> {
    Ok(chern_csm::chern_point(d).map_err(py_err)?.integer_coeffs().expect("integral"))
}

/// Twist a rank `l - 1` Chern polynomial (coefficient list of length `l`) by `O(1)`.
#[pyfunction]
fn twist_chern(c: Vec<i64>) -> Vec<i64> {
    let l = c.len();
    let t = logchern::algebra::TruncatedPoly::from_integers(l, &c);
    chern_csm::twist_chern(&t, l).integer_coeffs().expect("integral")
}

#[pyfunction]
fn csm_complement(pi: Vec<i64>, l: usize) -> Vec<i64> {
    chern_csm::csm_complement(&logchern::arrangements::PoincarePoly::new(pi), l).coeffs().to_vec()
}

#[pyfunction]
fn examples() -> Vec<(&'static str, &'static str)> {
    logchern::examples::bundled_examples()
}

#[pymodule]
#[pyo3(name = "logchern")]
fn logchern_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArrangement>()?;
    m.add_class::<PyLogModule>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(log_module, m)?)?;
    m.add_function(wrap_pyfunction!(nval, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(defect_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(chern_point, m)?)?;
    m.add_function(wrap_pyfunction!(twist_chern, m)?)?;
    m.add_function(wrap_pyfunction!(csm_complement, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("CrossCheckError", m.py().get_type::<CrossCheckError>())?;
    Ok(())
}
