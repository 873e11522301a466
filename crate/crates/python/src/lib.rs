//! Python bindings for `truncpoly`.
//!
//! Scalars and points cross the boundary as strings in the library's text
//! syntax (`"3"`, `"1/2"`, `"t + 1"`), so every supported field works the
//! same way from Python.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use truncpoly::cli::{run_command, Command, Options};
use truncpoly::parse::{parse_field_descriptor, parse_point, parse_truncation_descriptor};
use truncpoly::{
    CoefficientField, InversionOutcome, Ladder, LiftOptions, Scalar, TruncatedEndo,
    TruncationSpec,
};

create_exception!(truncpoly_py, TruncpolyError, PyValueError);
create_exception!(truncpoly_py, HypothesisError, TruncpolyError);

fn err(e: truncpoly::Error) -> PyErr {
    let msg = format!("{} ({})", e, e.kind());
    if e.is_hypothesis_failure() {
        HypothesisError::new_err(msg)
    } else {
        TruncpolyError::new_err(msg)
    }
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(|c| c.to_string()).collect()
}

fn point_or_origin(field: &CoefficientField, n: usize, point: Option<&str>) -> PyResult<Vec<Scalar>> {
    match point {
        Some(text) => parse_point(text, field, n).map_err(err),
        None => Ok(vec![field.zero_scalar(); n]),
    }
}

/// A coefficient field: a prime field, a small extension, or the rationals.
#[pyclass(name = "Field", module = "truncpoly_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyField(CoefficientField);

#[pymethods]
impl PyField {
    /// Parses a descriptor such as "p=7", "p=2;mod=t^2+t+1" or "rational".
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        parse_field_descriptor(descriptor).map(Self).map_err(err)
    }

    #[staticmethod]
    fn prime(p: u64) -> PyResult<Self> {
        CoefficientField::prime(p).map(Self).map_err(err)
    }

    #[staticmethod]
    fn galois(p: u64, degree: usize) -> PyResult<Self> {
        CoefficientField::galois(p, degree).map(Self).map_err(err)
    }

    #[staticmethod]
    fn rational() -> Self {
        Self(CoefficientField::rational())
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// Number of elements, or None for the rationals.
    #[getter]
    fn order(&self) -> Option<u128> {
        self.0.order()
    }

    fn descriptor(&self) -> String {
        self.0.descriptor()
    }

    fn __str__(&self) -> String {
        self.0.descriptor()
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.0.descriptor())
    }
}

/// A polynomial in `x1..xn`.
#[pyclass(name = "Polynomial", module = "truncpoly_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial(truncpoly::Polynomial);

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str, field: &PyField, nvars: usize) -> PyResult<Self> {
        truncpoly::parse_polynomial(text, &field.0, nvars).map(Self).map_err(err)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    fn total_degree(&self) -> Option<u64> {
        self.0.total_degree()
    }

    /// Derivative with respect to `x{index+1}`.
    fn partial(&self, index: usize) -> PyResult<Self> {
        self.0.partial(index).map(Self).map_err(err)
    }

    /// Value at a point given as "c1,...,cn".
    fn eval(&self, point: &str) -> PyResult<String> {
        let p = parse_point(point, self.0.field(), self.0.nvars()).map_err(err)?;
        self.0.eval(&p).map(|v| v.to_string()).map_err(err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

/// A polynomial endomorphism `x_i -> f_i`.
#[pyclass(name = "PolyMap", module = "truncpoly_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolyMap(truncpoly::PolyEndo);

#[pymethods]
impl PyPolyMap {
    /// From image expressions, e.g. `PolyMap(["x1 + x2^2", "x2"], field)`.
    #[new]
    fn new(images: Vec<String>, field: &PyField) -> PyResult<Self> {
        let n = images.len();
        let polys = images
            .iter()
            .map(|t| truncpoly::parse_polynomial(t, &field.0, n))
            .collect::<truncpoly::Result<Vec<_>>>()
            .map_err(err)?;
        truncpoly::PolyEndo::new(polys).map(Self).map_err(err)
    }

    /// Parses a map document; `field` is used when it has no header.
    #[staticmethod]
    #[pyo3(signature = (text, field=None))]
    fn parse(text: &str, field: Option<&PyField>) -> PyResult<Self> {
        let doc = truncpoly::parse_map(text, field.map(|f| &f.0)).map_err(err)?;
        Ok(Self(doc.map))
    }

    #[staticmethod]
    fn identity(field: &PyField, nvars: usize) -> Self {
        Self(truncpoly::PolyEndo::identity(&field.0, nvars))
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    #[getter]
    fn images(&self) -> Vec<String> {
        self.0.images().iter().map(|f| f.to_string()).collect()
    }

    fn degree(&self) -> u64 {
        self.0.degree()
    }

    /// `self ∘ other`: substitutes this map's images into `other`'s images.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn apply(&self, f: &PyPolynomial) -> PyResult<PyPolynomial> {
        self.0.apply(&f.0).map(PyPolynomial).map_err(err)
    }

    /// Image of a point "c1,...,cn" under the point map, over `field` when
    /// given (an extension of the coefficient field) or the map's own field.
    #[pyo3(signature = (point, field=None))]
    fn eval_point(&self, point: &str, field: Option<&PyField>) -> PyResult<Vec<String>> {
        let f = field.map_or_else(|| self.0.field().clone(), |f| f.0.clone());
        let p = parse_point(point, &f, self.0.nvars()).map_err(err)?;
        truncpoly::point_map_eval(&self.0, &p).map(|v| strings(&v)).map_err(err)
    }

    fn jacobian_det(&self) -> PyPolynomial {
        PyPolynomial(self.0.jacobian_det())
    }

    /// `(is_nonzero_constant, determinant)`.
    fn jacobian_check(&self) -> (bool, String) {
        let c = self.0.jacobian_constant_check();
        (c.is_constant_unit, c.value.to_string())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PolyMap('{}')", self.0)
    }
}

/// A truncated polynomial ring.
#[pyclass(name = "TruncationSpec", module = "truncpoly_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTruncationSpec(TruncationSpec);

#[pymethods]
impl PyTruncationSpec {
    /// Parses "frob:p=2,s=2,n=1,a=0" or "madic:N=4,n=2,a=0,0".
    #[new]
    #[pyo3(signature = (descriptor, field=None))]
    fn new(descriptor: &str, field: Option<&PyField>) -> PyResult<Self> {
        parse_truncation_descriptor(descriptor, field.map(|f| &f.0))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (field, nvars, level, point=None))]
    fn frobenius(field: &PyField, nvars: usize, level: u32, point: Option<&str>) -> PyResult<Self> {
        let a = point_or_origin(&field.0, nvars, point)?;
        TruncationSpec::frobenius(&field.0, nvars, a, level).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (field, nvars, order, point=None))]
    fn madic(field: &PyField, nvars: usize, order: u32, point: Option<&str>) -> PyResult<Self> {
        let a = point_or_origin(&field.0, nvars, point)?;
        TruncationSpec::madic(&field.0, nvars, a, order).map(Self).map_err(err)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    fn quotient_dimension(&self) -> u128 {
        self.0.quotient_dimension()
    }

    fn nilpotency_index(&self) -> u64 {
        self.0.nilpotency_index()
    }

    fn monomial_in_ideal(&self, exponents: Vec<u32>) -> PyResult<bool> {
        self.0.monomial_in_ideal(&exponents).map_err(err)
    }

    /// Normal form of a polynomial written in the shifted variables.
    fn normal_form(&self, text: &str) -> PyResult<String> {
        let f = truncpoly::parse_polynomial(text, self.0.field(), self.0.nvars()).map_err(err)?;
        self.0.normal_form(&f).map(|u| u.to_string()).map_err(err)
    }

    fn descriptor(&self) -> String {
        self.0.descriptor()
    }

    fn __str__(&self) -> String {
        self.0.descriptor()
    }

    fn __repr__(&self) -> String {
        format!("TruncationSpec('{}')", self.0.descriptor())
    }
}

/// An endomorphism of a truncated ring.
#[pyclass(name = "TruncatedEndo", module = "truncpoly_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTruncatedEndo(TruncatedEndo);

#[pymethods]
impl PyTruncatedEndo {
    /// Images written in the shifted variables (as `x1..xn`).
    #[new]
    fn new(spec: &PyTruncationSpec, images: Vec<String>) -> PyResult<Self> {
        let n = spec.0.nvars();
        let polys = images
            .iter()
            .map(|t| truncpoly::parse_polynomial(t, spec.0.field(), n))
            .collect::<truncpoly::Result<Vec<_>>>()
            .map_err(err)?;
        TruncatedEndo::from_polys(&spec.0, &polys).map(Self).map_err(err)
    }

    /// The map induced by `map` at `level` around `point` (default origin).
    #[staticmethod]
    #[pyo3(signature = (map, level, point=None, madic=None))]
    fn project(map: &PyPolyMap, level: u32, point: Option<&str>, madic: Option<u32>) -> PyResult<Self> {
        let a = point_or_origin(map.0.field(), map.0.nvars(), point)?;
        let ladder = madic.map_or_else(|| Ladder::for_field(map.0.field()), |base| Ladder::MAdic { base });
        truncpoly::project_endo(&map.0, &a, level, ladder).map(Self).map_err(err)
    }

    #[getter]
    fn spec(&self) -> PyTruncationSpec {
        PyTruncationSpec(self.0.spec().clone())
    }

    #[getter]
    fn images(&self) -> Vec<String> {
        self.0.images().iter().map(|u| u.to_string()).collect()
    }

    fn is_automorphism(&self) -> bool {
        self.0.is_automorphism()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Automorphism verdict as a dict.
    fn verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = self.0.verdict();
        let d = PyDict::new(py);
        d.set_item("is_automorphism", v.is_automorphism)?;
        d.set_item(
            "linear_part",
            v.linear_part.iter().map(|row| strings(row)).collect::<Vec<_>>(),
        )?;
        d.set_item("linear_det", v.linear_det.to_string())?;
        d.set_item("jacobian_det", v.jacobian_det.to_string())?;
        d.set_item("determinant_is_unit", v.determinant_is_unit)?;
        Ok(d)
    }

    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    /// `(inverse, correction_rounds)`.
    fn invert(&self) -> PyResult<(Self, usize)> {
        self.0
            .invert_with_rounds()
            .map(|(inv, rounds)| (Self(inv), rounds))
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TruncatedEndo('{}' in {})", self.0, self.0.spec())
    }
}

/// Lifts truncated inverses to an exact inverse of `map`.
///
/// Returns a dict with `status` ("stabilized" or "not_stabilized") and
/// either `inverse`/`level` or `candidate_degrees`/`last_candidate`/
/// `max_level`.
#[pyfunction]
#[pyo3(signature = (map, point=None, max_level=6, degree_bound=None, madic=None))]
fn lift_invert<'py>(
    py: Python<'py>,
    map: &PyPolyMap,
    point: Option<&str>,
    max_level: u32,
    degree_bound: Option<u64>,
    madic: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let a = point_or_origin(map.0.field(), map.0.nvars(), point)?;
    let options = LiftOptions {
        max_level,
        degree_bound,
        ladder: madic.map(|base| Ladder::MAdic { base }),
    };
    let outcome = truncpoly::lift_invert(&map.0, &a, &options).map_err(err)?;
    let d = PyDict::new(py);
    match outcome {
        InversionOutcome::Stabilized { inverse, level } => {
            d.set_item("status", "stabilized")?;
            d.set_item("inverse", PyPolyMap(inverse))?;
            d.set_item("level", level)?;
        }
        InversionOutcome::NotStabilized {
            max_level,
            last_candidate,
            candidate_degrees,
        } => {
            d.set_item("status", "not_stabilized")?;
            d.set_item("max_level", max_level)?;
            d.set_item("last_candidate", PyPolyMap(last_candidate))?;
            d.set_item("candidate_degrees", candidate_degrees)?;
        }
    }
    Ok(d)
}

/// Brute-force point map report over a finite field.
#[pyfunction]
#[pyo3(signature = (map, field=None, fibers=false))]
fn points_report<'py>(
    py: Python<'py>,
    map: &PyPolyMap,
    field: Option<&PyField>,
    fibers: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let f = field.map_or_else(|| map.0.field().clone(), |f| f.0.clone());
    let r = truncpoly::enumerate_report(&map.0, &f, fibers).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("field", r.field)?;
    d.set_item("domain_size", r.domain_size)?;
    d.set_item("image_size", r.image_size)?;
    d.set_item("injective", r.injective)?;
    d.set_item("surjective", r.surjective)?;
    d.set_item(
        "fixed_points",
        r.fixed_points.iter().map(|p| strings(p)).collect::<Vec<_>>(),
    )?;
    if let Some(fib) = r.fibers {
        let list: Vec<(Vec<String>, Vec<Vec<String>>)> = fib
            .iter()
            .map(|(target, pre)| (strings(target), pre.iter().map(|p| strings(p)).collect()))
            .collect();
        d.set_item("fibers", list)?;
    }
    Ok(d)
}

/// All points `c` with `map(c) = point` over `field`.
#[pyfunction]
#[pyo3(signature = (map, point, field=None))]
fn maximal_ideal_image(map: &PyPolyMap, point: &str, field: Option<&PyField>) -> PyResult<Vec<Vec<String>>> {
    let f = field.map_or_else(|| map.0.field().clone(), |f| f.0.clone());
    let a = parse_point(point, map.0.field(), map.0.nvars()).map_err(err)?;
    let found = truncpoly::maximal_ideal_image(&map.0, &a, &f).map_err(err)?;
    Ok(found.iter().map(|p| strings(p)).collect())
}

/// Runs a CLI command on map text; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (
    command, map=None, field=None, point=None, level=None, max_level=None,
    degree_bound=None, madic=None, json=false, vars=None, spec=None, fibers=false
))]
#[allow(clippy::too_many_arguments)]
fn run(
    command: &str,
    map: Option<String>,
    field: Option<String>,
    point: Option<String>,
    level: Option<u32>,
    max_level: Option<u32>,
    degree_bound: Option<u64>,
    madic: Option<u32>,
    json: bool,
    vars: Option<usize>,
    spec: Option<String>,
    fibers: bool,
) -> PyResult<(i32, String, String)> {
    let cmd: Command = command.parse().map_err(err)?;
    let options = Options {
        field,
        map,
        point,
        level,
        max_level,
        degree_bound,
        madic,
        json,
        vars,
        spec,
        fibers,
    };
    let out = run_command(cmd, &options);
    Ok((out.exit_code, out.stdout, out.stderr))
}

#[pymodule]
fn truncpoly_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TruncpolyError", m.py().get_type::<TruncpolyError>())?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_class::<PyField>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyPolyMap>()?;
    m.add_class::<PyTruncationSpec>()?;
    m.add_class::<PyTruncatedEndo>()?;
    m.add_function(wrap_pyfunction!(lift_invert, m)?)?;
    m.add_function(wrap_pyfunction!(points_report, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_ideal_image, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
