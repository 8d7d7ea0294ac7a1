//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (inputs may also be ints or `"p/q"` strings); structured reports come back
//! as plain dicts.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use unitri::poly::{self, parse_rational};
use unitri::rootcert;
use unitri::scomplex::{self, DEFAULT_MAX_FACES};
use unitri::transform;
use unitri::{Catalog, Rational};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(err)
}

fn to_rationals(items: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    items.try_iter()?.map(|x| to_rational(&x?)).collect()
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, rs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    rs.iter().map(|r| fraction(py, r)).collect()
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Exact polynomial with rational coefficients, lowest degree first.
#[pyclass(name = "Polynomial", module = "unitri_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial(unitri::Polynomial);

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(coeffs: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(unitri::Polynomial::new(to_rationals(coeffs)?)))
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.0.coeffs())
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.eval(&to_rational(x)?))
    }

    fn derivative(&self) -> Self {
        Self(self.0.derivative())
    }

    fn h_from_f(&self, n: usize) -> PyResult<Self> {
        poly::h_from_f(&self.0, n).map(Self).map_err(err)
    }

    fn f_from_h(&self, n: usize) -> PyResult<Self> {
        poly::f_from_h(&self.0, n).map(Self).map_err(err)
    }

    fn reverse(&self, n: usize) -> PyResult<Self> {
        poly::reverse(&self.0, n).map(Self).map_err(err)
    }

    fn is_symmetric(&self, n: usize) -> bool {
        self.0.is_symmetric(n)
    }

    /// `(a, b)` with `self = a + x * b`, `a` symmetric in `n`, `b` in `n - 1`.
    fn symmetric_decompose(&self, n: usize) -> PyResult<(Self, Self)> {
        let dec = poly::symmetric_decompose(&self.0, n).map_err(err)?;
        Ok((Self(dec.a), Self(dec.b)))
    }

    fn real_rootedness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &rootcert::is_real_rooted(&self.0))
    }

    fn is_real_rooted(&self) -> bool {
        rootcert::real_rooted(&self.0)
    }

    fn interlaces<'py>(&self, py: Python<'py>, other: &Self) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &rootcert::interlaces(&self.0, &other.0))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.0)
    }
}

/// Triangle of face counts `f_{n,k}` of a uniform triangulation.
#[pyclass(name = "FTriangle", module = "unitri_py", frozen)]
struct PyFTriangle(unitri::FTriangle);

#[pymethods]
impl PyFTriangle {
    /// Catalog triangle by name (`trivial`, `barycentric`, `edgewise`,
    /// `colored`, `interval`, `sdrs`) up to size `d`.
    #[staticmethod]
    #[pyo3(signature = (name, d, r=None, s=None))]
    fn catalog(name: &str, d: usize, r: Option<usize>, s: Option<usize>) -> PyResult<Self> {
        let cat = Catalog::parse(name, r, s).map_err(err)?;
        cat.build(d).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        unitri::FTriangle::from_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.0.rows().to_vec()
    }

    fn f_poly(&self, n: usize) -> PyResult<PyPolynomial> {
        self.0.check_row(n).map_err(err)?;
        Ok(PyPolynomial(self.0.f_poly(n)))
    }

    /// Dict of row polynomials: `h`, `f_interior`, `h_interior`, `local_h`.
    fn derive<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let derived = unitri::derive(&self.0);
        let out = pyo3::types::PyDict::new(py);
        for (key, rows) in [
            ("h", derived.h),
            ("f_interior", derived.f_interior),
            ("h_interior", derived.h_interior),
            ("local_h", derived.local_h),
        ] {
            let rows: Vec<PyPolynomial> = rows.into_iter().map(PyPolynomial).collect();
            out.set_item(key, rows)?;
        }
        Ok(out)
    }

    #[pyo3(signature = (strict=false))]
    fn validate<'py>(&self, py: Python<'py>, strict: bool) -> PyResult<Bound<'py, PyAny>> {
        let report = unitri::validate(&self.0, strict);
        let out = to_py(py, &report)?;
        out.set_item("passed", report.passed())?;
        Ok(out)
    }

    /// Matrix `p[k][j]` of the map `h(Delta) -> h(Delta')` in dimension `n`.
    fn coeff_table<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        let table = unitri::coeff_table(&self.0, n).map_err(err)?;
        table
            .matrix()
            .iter()
            .map(|row| fractions(py, row))
            .collect()
    }

    fn apply_h(&self, hvec: &Bound<'_, PyAny>, n: usize) -> PyResult<PyPolynomial> {
        let h = to_rationals(hvec)?;
        unitri::apply_h(&self.0, &h, n)
            .map(PyPolynomial)
            .map_err(err)
    }

    fn boundary_h(&self, n: usize) -> PyResult<PyPolynomial> {
        transform::boundary_h(&self.0, n)
            .map(PyPolynomial)
            .map_err(err)
    }

    fn check_assumptions<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &rootcert::check_assumptions(&self.0, n).map_err(err)?)
    }

    #[pyo3(signature = (n, samples=200, seed=0))]
    fn check_conclusions<'py>(
        &self,
        py: Python<'py>,
        n: usize,
        samples: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = py
            .detach(|| rootcert::check_conclusions(&self.0, n, samples, seed))
            .map_err(err)?;
        to_py(py, &report)
    }

    fn __repr__(&self) -> String {
        format!("FTriangle(name={:?}, d={})", self.0.name, self.0.d)
    }
}

/// Finite simplicial complex given by its facets.
#[pyclass(name = "SimplicialComplex", module = "unitri_py", frozen)]
struct PyComplex(unitri::SimplicialComplex);

#[pymethods]
impl PyComplex {
    #[new]
    fn new(facets: Vec<Vec<usize>>) -> PyResult<Self> {
        let n = facets.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
        let labels = (0..n).map(|v| v.to_string()).collect();
        unitri::SimplicialComplex::from_faces(labels, facets)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn simplex(n: usize) -> Self {
        Self(unitri::SimplicialComplex::simplex(n))
    }

    #[staticmethod]
    fn simplex_boundary(n: usize) -> Self {
        Self(unitri::SimplicialComplex::simplex_boundary(n))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        unitri::SimplicialComplex::from_json(text)
            .map(Self)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<usize>> {
        self.0.facets().to_vec()
    }

    fn f_vector(&self) -> Vec<u64> {
        self.0.f_vector()
    }

    fn h_vector<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.0.h_vector())
    }

    /// Explicit subdivision by a catalog construction.
    #[pyo3(signature = (name, r=None, s=None, max_faces=DEFAULT_MAX_FACES))]
    fn subdivide(
        &self,
        py: Python<'_>,
        name: &str,
        r: Option<usize>,
        s: Option<usize>,
        max_faces: u64,
    ) -> PyResult<PySubdivision> {
        let cat = Catalog::parse(name, r, s).map_err(err)?;
        let sub = py
            .detach(|| scomplex::subdivide(&self.0, cat, max_faces))
            .map_err(err)?;
        Ok(PySubdivision { sub, cat })
    }

    fn __repr__(&self) -> String {
        format!("SimplicialComplex(facets={:?})", self.0.facets())
    }
}

/// Subdivision with its carrier map, built from a catalog construction.
#[pyclass(name = "Subdivision", module = "unitri_py", frozen)]
struct PySubdivision {
    sub: unitri::Subdivision,
    cat: Catalog,
}

#[pymethods]
impl PySubdivision {
    #[getter]
    fn total(&self) -> PyComplex {
        PyComplex(self.sub.total.clone())
    }

    #[getter]
    fn base(&self) -> PyComplex {
        PyComplex(self.sub.base.clone())
    }

    fn to_json(&self) -> String {
        self.sub.to_json()
    }

    /// Compares the carrier counts with the catalog triangle.
    fn uniformity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let d = self.sub.base.max_face_size();
        let tri = self.cat.build(d).map_err(err)?;
        let report = scomplex::uniformity_check(&self.sub, &tri).map_err(err)?;
        let out = to_py(py, &report)?;
        out.set_item("passed", report.passed())?;
        Ok(out)
    }

    /// Local h-polynomial; the base must be a single simplex.
    fn local_h(&self) -> PyResult<PyPolynomial> {
        scomplex::local_h(&self.sub).map(PyPolynomial).map_err(err)
    }

    /// h-polynomial of the subdivided simplex minus the first `k` facets.
    fn gamma_h(&self, k: usize) -> PyResult<PyPolynomial> {
        scomplex::gamma_nk(&self.sub, k)
            .map(|g| PyPolynomial(g.h_poly()))
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Subdivision({}, {} facets)",
            self.cat,
            self.sub.total.facets().len()
        )
    }
}

#[pyfunction]
fn is_real_rooted(coeffs: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(rootcert::real_rooted(&unitri::Polynomial::new(
        to_rationals(coeffs)?,
    )))
}

#[pyfunction]
fn interlaces(f: &Bound<'_, PyAny>, g: &Bound<'_, PyAny>) -> PyResult<bool> {
    let f = unitri::Polynomial::new(to_rationals(f)?);
    let g = unitri::Polynomial::new(to_rationals(g)?);
    Ok(rootcert::interlaces(&f, &g).result)
}

#[pymodule]
fn unitri_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyFTriangle>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PySubdivision>()?;
    m.add_function(wrap_pyfunction!(is_real_rooted, m)?)?;
    m.add_function(wrap_pyfunction!(interlaces, m)?)?;
    Ok(())
}
