//! Python bindings: series values, index combinatorics and relation search.
//!
//! Structured results (AT polynomial tables, hunt outcomes, reports) cross the
//! boundary as JSON and come back as plain dicts and lists.

use ffzeta_core::anderson::AtPolynomials;
use ffzeta_core::error::ErrorClass;
use ffzeta_core::indices::{self, GImage};
use ffzeta_core::relations::{self, Evaluator, Label};
use ffzeta_core::scalar::{parse_ratfunc, Field};
use ffzeta_core::zeta::{carlitz_period_power, Zeta};
use ffzeta_core::{Error, Index, LaurentApprox, SignVector};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

fn py_err(e: Error) -> PyErr {
    match e.class() {
        ErrorClass::Domain => PyValueError::new_err(e.to_string()),
        ErrorClass::Resource | ErrorClass::Internal => PyRuntimeError::new_err(e.to_string()),
    }
}

fn field(q: u32) -> PyResult<Field> {
    Field::new(q).map_err(py_err)
}

fn index(entries: Vec<u32>) -> PyResult<Index> {
    Index::new(entries).map_err(py_err)
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    PyModule::import(py, "json")?.call_method1("loads", (text,))
}

/// A truncated Laurent series in 1/θ over F_q, known through θ^{−precision}.
#[pyclass(name = "Series", module = "ffzeta", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Series(LaurentApprox);

impl Series {
    fn same_field(&self, o: &Series) -> PyResult<()> {
        if self.0.q() != o.0.q() {
            return Err(PyValueError::new_err(format!(
                "series over F_{} and F_{} do not combine",
                self.0.q(),
                o.0.q()
            )));
        }
        Ok(())
    }
}

#[pymethods]
impl Series {
    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    /// None when the value is zero to the known precision.
    #[getter]
    fn valuation(&self) -> Option<i64> {
        self.0.valuation()
    }

    #[getter]
    fn precision(&self) -> i64 {
        self.0.precision()
    }

    /// Coefficients from θ^{−valuation} through θ^{−precision}.
    #[getter]
    fn digits(&self) -> Vec<u32> {
        self.0.digits().to_vec()
    }

    /// Coefficient of θ^{−e}, or None beyond the precision.
    fn coeff(&self, e: i64) -> Option<u32> {
        self.0.coeff(e)
    }

    fn truncate(&self, prec: i64) -> Series {
        Series(self.0.truncate(prec))
    }

    /// True when both agree through their common precision.
    fn agrees_with(&self, o: &Series) -> PyResult<bool> {
        self.same_field(o)?;
        Ok(self.0.agrees_with(&o.0))
    }

    fn __add__(&self, o: &Series) -> PyResult<Series> {
        self.same_field(o)?;
        Ok(Series(self.0.add(&o.0)))
    }

    fn __sub__(&self, o: &Series) -> PyResult<Series> {
        self.same_field(o)?;
        Ok(Series(self.0.sub(&o.0)))
    }

    fn __mul__(&self, o: &Series) -> PyResult<Series> {
        self.same_field(o)?;
        Ok(Series(self.0.mul(&o.0)))
    }

    fn __truediv__(&self, o: &Series) -> PyResult<Series> {
        self.same_field(o)?;
        self.0.div(&o.0).map(Series).map_err(py_err)
    }

    fn __neg__(&self) -> Series {
        Series(self.0.neg())
    }

    fn __pow__(&self, k: u64, modulo: Option<u64>) -> PyResult<Series> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not defined"));
        }
        Ok(Series(self.0.pow(k)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Series(q={}, valuation={:?}, precision={})",
            self.0.q(),
            self.0.valuation(),
            self.0.precision()
        )
    }
}

/// ζ_A(s) through `prec`.
#[pyfunction]
fn mzv(q: u32, index: Vec<u32>, prec: i64) -> PyResult<Series> {
    let s = self::index(index)?;
    Zeta::new(&field(q)?).mzv(&s, prec).map(Series).map_err(py_err)
}

/// ζ_A(s; ε) with signs given as integers, e.g. [-1, 1].
#[pyfunction]
fn amzv(q: u32, index: Vec<u32>, signs: Vec<i64>, prec: i64) -> PyResult<Series> {
    let f = field(q)?;
    let s = self::index(index)?;
    let text: Vec<String> = signs.iter().map(|e| e.to_string()).collect();
    let eps = SignVector::parse(&f, &text.join(",")).map_err(py_err)?;
    Zeta::new(&f).amzv(&s, &eps, prec).map(Series).map_err(py_err)
}

/// Li_s(u) with points written in θ, e.g. ["1", "1/theta"].
#[pyfunction]
fn cmpl(q: u32, index: Vec<u32>, points: Vec<String>, prec: i64) -> PyResult<Series> {
    let f = field(q)?;
    let s = self::index(index)?;
    let us = points
        .iter()
        .map(|u| parse_ratfunc(&f, u))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    Zeta::new(&f).cmpl(&s, &us, prec).map(Series).map_err(py_err)
}

#[pyfunction]
fn carlitz_log(q: u32, point: &str, prec: i64) -> PyResult<Series> {
    let f = field(q)?;
    let u = parse_ratfunc(&f, point).map_err(py_err)?;
    Zeta::new(&f).carlitz_log(&u, prec).map(Series).map_err(py_err)
}

/// π̃^{(q−1)m}.
#[pyfunction]
fn period_power(q: u32, m: i64, prec: i64) -> PyResult<Series> {
    carlitz_period_power(&field(q)?, m, prec)
        .map(Series)
        .map_err(py_err)
}

/// H_n as {"table": rows by t-degree of θ-coefficients, "pretty": str}.
#[pyfunction]
fn at_polynomial(py: Python<'_>, q: u32, n: u64) -> PyResult<Bound<'_, PyAny>> {
    let h = AtPolynomials::new(&field(q)?).get(n).map_err(py_err)?;
    let doc = serde_json::json!({
        "q": q,
        "n": n,
        "table": h.to_table(),
        "pretty": h.to_string(),
    });
    to_py(py, &doc)
}

#[pyfunction]
fn g_map(index: Vec<u32>) -> PyResult<Vec<u32>> {
    let s = self::index(index)?;
    Ok(indices::g_map(&s).elements().iter().copied().collect())
}

#[pyfunction]
fn g_inverse(image: Vec<u32>, w: u32) -> PyResult<Vec<u32>> {
    let t = GImage::new(image.into_iter().collect(), w).map_err(py_err)?;
    indices::g_inverse(&t, w)
        .map(Vec::from)
        .map_err(py_err)
}

#[pyfunction]
fn is_g_independent(family: Vec<Vec<u32>>) -> PyResult<bool> {
    let fam = family.into_iter().map(index).collect::<PyResult<Vec<_>>>()?;
    Ok(indices::is_g_independent(&fam))
}

/// q-admissible partitions of {1, …, w−1}, each as a list of sorted blocks.
#[pyfunction]
#[pyo3(signature = (w, q, limit = None))]
fn q_admissible_partitions(w: u32, q: u32, limit: Option<usize>) -> PyResult<Vec<Vec<Vec<u32>>>> {
    field(q)?;
    Ok(indices::q_admissible_partitions(w, q)
        .take(limit.unwrap_or(usize::MAX))
        .map(|p| p.blocks().to_vec())
        .collect())
}

#[pyfunction]
fn independent_family(w: u32, r: u32, q: u32) -> PyResult<Vec<Vec<u32>>> {
    let fam = indices::independent_family(w, r, q).map_err(py_err)?;
    Ok(fam.into_iter().map(Vec::from).collect())
}

/// (bound_1r, bound_r).
#[pyfunction]
fn dim_lower_bound(w: u32, r: u32, q: u32) -> PyResult<(u64, u64)> {
    let b = indices::dim_lower_bound(w, r, q).map_err(py_err)?;
    Ok((b.bound_1r, b.bound_r))
}

/// Relation search among labeled values; returns the outcome with its
/// certificates as a dict.
#[pyfunction]
fn hunt(
    py: Python<'_>,
    q: u32,
    labels: Vec<String>,
    deg_bound: usize,
    prec: i64,
) -> PyResult<Bound<'_, PyAny>> {
    let f = field(q)?;
    let ev = Evaluator::new(&f);
    let ls = labels
        .iter()
        .map(|l| Label::parse(&f, l))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let out = py
        .detach(|| relations::hunt(&ev, &ls, deg_bound, prec))
        .map_err(py_err)?;
    to_py(py, &out)
}

#[pyfunction]
fn independence_report(
    py: Python<'_>,
    q: u32,
    family: Vec<Vec<u32>>,
    deg_bound: usize,
    prec: i64,
) -> PyResult<Bound<'_, PyAny>> {
    let ev = Evaluator::new(&field(q)?);
    let fam = family.into_iter().map(index).collect::<PyResult<Vec<_>>>()?;
    let r = py
        .detach(|| relations::independence_report(&ev, &fam, deg_bound, prec))
        .map_err(py_err)?;
    to_py(py, &r)
}

#[pymodule]
fn ffzeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(mzv, m)?)?;
    m.add_function(wrap_pyfunction!(amzv, m)?)?;
    m.add_function(wrap_pyfunction!(cmpl, m)?)?;
    m.add_function(wrap_pyfunction!(carlitz_log, m)?)?;
    m.add_function(wrap_pyfunction!(period_power, m)?)?;
    m.add_function(wrap_pyfunction!(at_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(g_map, m)?)?;
    m.add_function(wrap_pyfunction!(g_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(is_g_independent, m)?)?;
    m.add_function(wrap_pyfunction!(q_admissible_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(independent_family, m)?)?;
    m.add_function(wrap_pyfunction!(dim_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hunt, m)?)?;
    m.add_function(wrap_pyfunction!(independence_report, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_by_class() {
        Python::initialize();
        Python::attach(|py| {
            let e = py_err(Error::Domain("x".into()));
            assert!(e.is_instance_of::<PyValueError>(py));
            let e = py_err(Error::Margin { equations: 1, unknowns: 2, margin: 20 });
            assert!(e.is_instance_of::<PyRuntimeError>(py));
        });
    }

    #[test]
    fn index_functions_round_trip() {
        assert_eq!(g_map(vec![1, 2, 2, 1]).unwrap(), vec![1, 3, 5]);
        assert_eq!(g_inverse(vec![1, 3, 5], 6).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(dim_lower_bound(10, 3, 3).unwrap(), (3, 2));
        assert!(mzv(6, vec![1], 5).is_err());
    }
}
