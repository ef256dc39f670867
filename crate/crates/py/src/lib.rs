//! Python bindings: groups, signature pairs, f_{p,q}, orbit Chern classes and
//! verification sweeps.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use invsig::chern::{chern_report, verify_chern_identity};
use invsig::closedforms::{delta_signature_closed, lambda_signature_closed};
use invsig::fpq::{format_by_weight, fpq as fpq_poly, signature_pminus1_closed, t_closed};
use invsig::group::{parse_group_spec, FiniteMatrixGroup};
use invsig::invariant::phi;
use invsig::signature::{
    coefficient_matrix, inertia_exact, inertia_numeric, signature_record, Method,
    DEFAULT_NUMERIC_PRECISION, DEFAULT_ZERO_THRESHOLD,
};
use invsig::verify::{verify as run_verify, VerifyOptions};
use invsig::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::IndexOutOfRange { .. } | Error::NotUnitary(_) | Error::CapExceeded(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn method(name: &str) -> PyResult<Method> {
    match name {
        "exact" => Ok(Method::Exact),
        "numeric" => Ok(Method::Numeric),
        _ => Err(PyValueError::new_err(format!("method must be 'exact' or 'numeric', got {name:?}"))),
    }
}

/// A finite subgroup of U(2) with exact cyclotomic entries.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: FiniteMatrixGroup,
}

#[pymethods]
impl PyGroup {
    /// Build from a spec: cyclic:p,q | dihedral:p | binary-dihedral:p | T | O | I | file:<path>.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: parse_group_spec(spec).map_err(to_py)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    /// Elements as nested [[(re, im), ...], ...] float pairs.
    fn elements(&self) -> Vec<[[(f64, f64); 2]; 2]> {
        self.inner
            .elements()
            .iter()
            .map(|m| {
                let e = |j, k| m.get(j, k).to_f64_pair();
                [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
            })
            .collect()
    }

    /// (n_plus, n_minus, n_zero) of the coefficient matrix of Phi.
    #[pyo3(signature = (method = "exact"))]
    fn inertia(&self, method: &str) -> PyResult<(usize, usize, usize)> {
        let m = coefficient_matrix(&phi(&self.inner));
        let i = match self::method(method)? {
            Method::Exact => inertia_exact(&m).map_err(to_py)?,
            Method::Numeric => inertia_numeric(&m, DEFAULT_NUMERIC_PRECISION, DEFAULT_ZERO_THRESHOLD),
        };
        Ok((i.n_plus, i.n_minus, i.n_zero))
    }

    /// The signature pair (N+, N-).
    #[pyo3(signature = (method = "exact"))]
    fn signature(&self, method: &str) -> PyResult<(usize, usize)> {
        let (p, m, _) = self.inertia(method)?;
        Ok((p, m))
    }

    /// The JSON result record.
    #[pyo3(signature = (method = "exact", precision = DEFAULT_NUMERIC_PRECISION))]
    fn record_json(&self, method: &str, precision: usize) -> PyResult<String> {
        let r = signature_record(&self.inner, self::method(method)?, precision, DEFAULT_ZERO_THRESHOLD)
            .map_err(to_py)?;
        Ok(serde_json::to_string(&r).expect("records serialize"))
    }

    /// Number of nonzero coefficients of Phi.
    fn phi_term_count(&self) -> usize {
        phi(&self.inner).term_count()
    }

    /// The alternating sum of orbit Chern classes of z1 + z2 equals Phi at w = (1, 1).
    fn verify_chern_identity(&self) -> bool {
        verify_chern_identity(&self.inner)
    }

    /// Set and multiset orbit conventions checked against Phi, as JSON.
    fn chern_report_json(&self) -> String {
        serde_json::to_string(&chern_report(&self.inner)).expect("reports serialize")
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.label(), self.inner.order())
    }
}

/// f_{p,q} as {(r, s): coefficient}.
#[pyfunction]
fn fpq(p: u32, q: i64) -> PyResult<BTreeMap<(u32, u32), num_bigint::BigInt>> {
    if p == 0 {
        return Err(PyValueError::new_err("p must be positive"));
    }
    Ok(fpq_poly(p, q).map_err(to_py)?.terms().clone())
}

/// f_{p,q} as text, ordered by weight then y degree.
#[pyfunction]
fn fpq_text(p: u32, q: i64) -> PyResult<String> {
    if p == 0 {
        return Err(PyValueError::new_err("p must be positive"));
    }
    Ok(format_by_weight(&fpq_poly(p, q).map_err(to_py)?, p, q))
}

/// T(q) as a "num/den" string.
#[pyfunction]
fn asymptotic_ratio(q: u32) -> PyResult<String> {
    if q == 0 {
        return Err(PyValueError::new_err("q must be positive"));
    }
    Ok(t_closed(q).to_string())
}

/// Closed-form signature pair for a family: "cyclic-su2", "dihedral" or "binary-dihedral".
#[pyfunction]
fn closed_signature(family: &str, p: u32) -> PyResult<(usize, usize)> {
    let s = match family {
        "cyclic-su2" => signature_pminus1_closed(p),
        "dihedral" => delta_signature_closed(p),
        "binary-dihedral" => lambda_signature_closed(p),
        _ => return Err(PyValueError::new_err(format!("unknown family {family:?}"))),
    };
    Ok((s.n_plus, s.n_minus))
}

/// Run a verification sweep and return its report as JSON.
#[pyfunction]
#[pyo3(signature = (theorem, p_max = None, include_slow = false))]
fn verify_json(theorem: &str, p_max: Option<u32>, include_slow: bool) -> PyResult<String> {
    let r = run_verify(theorem, &VerifyOptions { p_max, include_slow }).map_err(to_py)?;
    Ok(serde_json::to_string(&r).expect("reports serialize"))
}

#[pymodule]
pub fn invsig_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(fpq, m)?)?;
    m.add_function(wrap_pyfunction!(fpq_text, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(closed_signature, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    Ok(())
}
