//! Python bindings for `dirset`.
//!
//! Field elements cross the boundary as canonical integer indices and sets
//! as sorted lists. Structured results come back as plain dicts.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use dirset::campaign::{CampaignError, CampaignSpec, Family, Theorem};
use dirset::criteria::{
    cor1_criterion, cor2_criterion, is_permutation_oracle, main2_criterion, sziklai_classify,
};
use dirset::direction::{
    build_h_set, direction_set, inverse_set, line_intersection_count, product_set, quotient_set,
    ratio_stabilizer, shift_set, theorem1_check,
};
use dirset::{Elem, ElementSet, FieldContext, FqFunction};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn campaign_err(e: CampaignError) -> PyErr {
    match e {
        CampaignError::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

/// Round-trips through `json.loads` so results are ordinary Python objects.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_err)?;
    let json = PyModule::import(py, "json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Field", module = "pydirset", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    ctx: Arc<FieldContext>,
}

impl PyField {
    fn elem(&self, x: u64) -> PyResult<Elem> {
        self.ctx.elem(x).map_err(value_err)
    }

    fn set(&self, xs: Vec<u64>) -> PyResult<ElementSet> {
        let elems = xs
            .into_iter()
            .map(|x| self.elem(x))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(ElementSet::from_iter(self.ctx.q(), elems))
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, n = 1))]
    fn new(p: u64, n: u32) -> PyResult<Self> {
        let ctx = FieldContext::new(p, n).map_err(value_err)?;
        Ok(PyField { ctx: Arc::new(ctx) })
    }

    #[staticmethod]
    fn with_order(q: u64) -> PyResult<Self> {
        let ctx = FieldContext::with_order(q).map_err(value_err)?;
        Ok(PyField { ctx: Arc::new(ctx) })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.ctx.p()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.ctx.n()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.ctx.q()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.ctx.modulus().to_vec()
    }

    #[getter]
    fn generator(&self) -> u32 {
        self.ctx.generator().index()
    }

    /// `{p, n, q, modulus, generator}` as a dict.
    fn describe(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.ctx.describe())
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.add(self.elem(a)?, self.elem(b)?).index())
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.sub(self.elem(a)?, self.elem(b)?).index())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.mul(self.elem(a)?, self.elem(b)?).index())
    }

    fn inv(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.inv(self.elem(a)?).map_err(value_err)?.index())
    }

    fn div(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self
            .ctx
            .div(self.elem(a)?, self.elem(b)?)
            .map_err(value_err)?
            .index())
    }

    fn pow(&self, a: u64, e: u64) -> PyResult<u32> {
        Ok(self.ctx.pow(self.elem(a)?, e).index())
    }

    /// `M_d = {x^d : x != 0}` as a sorted list.
    fn mult_subgroup(&self, d: u64) -> PyResult<Vec<u32>> {
        Ok(self.ctx.mult_subgroup(d).map_err(value_err)?.indices())
    }

    fn inverse_set(&self, a: Vec<u64>) -> PyResult<Vec<u32>> {
        Ok(inverse_set(&self.ctx, &self.set(a)?).indices())
    }

    fn product_set(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u32>> {
        Ok(product_set(&self.ctx, &self.set(a)?, &self.set(b)?).indices())
    }

    /// `A - c`.
    fn shift_set(&self, a: Vec<u64>, c: u64) -> PyResult<Vec<u32>> {
        Ok(shift_set(&self.ctx, &self.set(a)?, self.elem(c)?).indices())
    }

    fn ratio_stabilizer(&self, r: Vec<u64>) -> PyResult<Vec<u32>> {
        Ok(ratio_stabilizer(&self.ctx, &self.set(r)?)
            .map_err(value_err)?
            .indices())
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, n={})", self.ctx.p(), self.ctx.n())
    }
}

#[pyclass(name = "Function", module = "pydirset", frozen)]
struct PyFunction {
    f: FqFunction,
}

impl PyFunction {
    fn elem(&self, x: u64) -> PyResult<Elem> {
        self.f.field().elem(x).map_err(value_err)
    }
}

#[pymethods]
impl PyFunction {
    /// From coefficients, constant term first; reduced mod `x^q - x`.
    #[staticmethod]
    fn from_coefficients(field: &PyField, coeffs: Vec<u64>) -> PyResult<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| field.elem(c))
            .collect::<PyResult<Vec<_>>>()?;
        let f = FqFunction::from_coefficients(field.ctx.clone(), &coeffs).map_err(value_err)?;
        Ok(PyFunction { f })
    }

    /// From the `q` values `f(0), f(1), ...`.
    #[staticmethod]
    fn from_table(field: &PyField, table: Vec<u64>) -> PyResult<Self> {
        let table = table
            .into_iter()
            .map(|c| field.elem(c))
            .collect::<PyResult<Vec<_>>>()?;
        let f = FqFunction::interpolate(field.ctx.clone(), table).map_err(value_err)?;
        Ok(PyFunction { f })
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            ctx: self.f.ctx().clone(),
        }
    }

    #[getter]
    fn table(&self) -> Vec<u32> {
        self.f.table_indices()
    }

    /// Reduced coefficients without trailing zeros.
    #[getter]
    fn coefficients(&self) -> Vec<u32> {
        self.f
            .trimmed_coefficients()
            .iter()
            .map(|c| c.index())
            .collect()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.f.reduced_degree()
    }

    fn evaluate(&self, x: u64) -> PyResult<u32> {
        Ok(self.f.evaluate(self.elem(x)?).index())
    }

    /// `(a, k, b)` with `f(x) = a x^(p^k) + b`, or `None`.
    fn monomial_form(&self) -> Option<(u32, u32, u32)> {
        self.f
            .detect_monomial_form()
            .map(|m| (m.a.index(), m.k, m.b.index()))
    }

    fn is_additive(&self) -> PyResult<bool> {
        self.f.is_additive().map_err(value_err)
    }

    fn is_affine(&self) -> PyResult<bool> {
        self.f.is_affine().map_err(value_err)
    }

    fn is_permutation(&self) -> bool {
        is_permutation_oracle(&self.f)
    }

    /// `D_f` as a sorted list.
    fn directions(&self) -> Vec<u32> {
        direction_set(&self.f).set().indices()
    }

    /// `|D_f^-1 D_f|`.
    fn quotient_size(&self) -> usize {
        quotient_set(self.f.field(), direction_set(&self.f).set()).len()
    }

    fn line_intersection_count(&self, m: u64, b: u64) -> PyResult<usize> {
        Ok(line_intersection_count(&self.f, self.elem(m)?, self.elem(b)?).k)
    }

    fn theorem1_check(&self, py: Python<'_>, m: u64, b: u64) -> PyResult<Py<PyAny>> {
        let c = theorem1_check(&self.f, self.elem(m)?, self.elem(b)?).map_err(value_err)?;
        to_py(py, &c)
    }

    fn build_h_set(&self, py: Python<'_>, m: u64, b: u64) -> PyResult<Py<PyAny>> {
        let r = build_h_set(&self.f, self.elem(m)?, self.elem(b)?).map_err(value_err)?;
        to_py(py, &r)
    }

    fn main2_criterion(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &main2_criterion(&self.f).map_err(value_err)?)
    }

    fn cor1_criterion(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &cor1_criterion(&self.f).map_err(value_err)?)
    }

    fn cor2_criterion(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &cor2_criterion(&self.f))
    }

    fn sziklai_classify(&self, py: Python<'_>, d: u64) -> PyResult<Py<PyAny>> {
        to_py(py, &sziklai_classify(&self.f, d).map_err(value_err)?)
    }

    /// The full analysis printed by `dirset directions`.
    fn analyze(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &dirset::cli::analyze(&self.f))
    }

    fn __len__(&self) -> usize {
        self.f.table().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Function(q={}, table={:?})",
            self.f.field().q(),
            self.f.table_indices()
        )
    }
}

fn spec(
    theorem: &str,
    q: u32,
    family: &str,
    d: Option<u64>,
    seed: u64,
    jobs: usize,
    force: bool,
) -> PyResult<CampaignSpec> {
    let theorem: Theorem = theorem.parse().map_err(campaign_err)?;
    let family: Family = family.parse().map_err(campaign_err)?;
    let mut s = CampaignSpec::new(q, family, theorem)
        .with_seed(seed)
        .with_jobs(jobs);
    s.d = d;
    s.force = force;
    Ok(s)
}

/// Runs a verification campaign and returns its report as a dict.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (theorem, q, family = "all", d = None, seed = 0, jobs = 0, force = false))]
fn run_campaign(
    py: Python<'_>,
    theorem: &str,
    q: u32,
    family: &str,
    d: Option<u64>,
    seed: u64,
    jobs: usize,
    force: bool,
) -> PyResult<Py<PyAny>> {
    let s = spec(theorem, q, family, d, seed, jobs, force)?;
    let report = py
        .detach(|| dirset::run_campaign(&s))
        .map_err(campaign_err)?;
    to_py(py, &report)
}

/// Lists family members whose directions lie in `M_d ∪ {0}`.
#[pyfunction]
#[pyo3(signature = (q, d, family = "all", seed = 0, jobs = 0, force = false))]
fn run_search(
    py: Python<'_>,
    q: u32,
    d: u64,
    family: &str,
    seed: u64,
    jobs: usize,
    force: bool,
) -> PyResult<Py<PyAny>> {
    let s = spec("conj", q, family, Some(d), seed, jobs, force)?;
    let report = py.detach(|| dirset::run_search(&s)).map_err(campaign_err)?;
    to_py(py, &report)
}

#[pymodule]
fn pydirset(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyFunction>()?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    m.add_function(wrap_pyfunction!(run_search, m)?)?;
    Ok(())
}
