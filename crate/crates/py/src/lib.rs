//! Python module `localfield`. Rationals cross the boundary as
//! `fractions.Fraction`; certificates as dicts in the CLI's JSON format.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use localfield::algebraic::{self, AlgebraicNumberSpec};
use localfield::cert::{self, Document, OrderDoc, OrderInput, VerdictDoc, WitnessDoc};
use localfield::error::Error;
use localfield::haar::{self, Cylinder, PolyDensity};
use localfield::padic::PAdicApprox;
use localfield::parse;
use localfield::places;
use localfield::primes::Prime;
use localfield::projaut;
use localfield::rational::{self as rat, Q};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

fn to_q(x: &Bound<'_, PyAny>) -> PyResult<Q> {
    if let Ok(s) = x.extract::<String>() {
        return rat::parse_rational(&s).map_err(err);
    }
    let num: BigInt = x.getattr("numerator")?.extract()?;
    let den: BigInt = x.getattr("denominator")?.extract()?;
    Ok(Q::new(num, den))
}

fn document<'py>(py: Python<'py>, doc: &Document) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((doc.to_json(),))
}

fn prime(p: u64) -> PyResult<Prime> {
    Prime::new(p).map_err(err)
}

/// A p-adic number known to a fixed relative precision.
#[pyclass(name = "PAdic", module = "localfield", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPAdic(PAdicApprox);

#[pymethods]
impl PyPAdic {
    #[new]
    #[pyo3(signature = (value, p, precision = 20))]
    fn new(value: &Bound<'_, PyAny>, p: u64, precision: u32) -> PyResult<Self> {
        let q = to_q(value)?;
        PAdicApprox::from_rational(&q, prime(p)?, precision)
            .map(PyPAdic)
            .map_err(err)
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.0.prime().get()
    }

    fn valuation(&self) -> Option<i64> {
        self.0.valuation()
    }

    fn precision(&self) -> Option<u32> {
        self.0.precision()
    }

    fn digits(&self) -> Vec<u32> {
        self.0.digits()
    }

    /// Whether the rational agrees with this number to the tracked precision.
    fn represents(&self, value: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.represents(&to_q(value)?))
    }

    /// The truncated representative `p^v * u` as a Fraction.
    fn to_fraction<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.to_rational())
    }

    /// `|x|_p` as a Fraction, or 0.
    fn norm<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let n = self.0.norm().to_rational().expect("integer valuation");
        fraction(py, &n)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inv().map(PyPAdic).map_err(err)
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        self.0.add(&o.0).map(PyPAdic).map_err(err)
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        self.0.sub(&o.0).map(PyPAdic).map_err(err)
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.0.mul(&o.0).map(PyPAdic).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyPAdic(self.0.neg())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PAdic('{}')", self.0)
    }
}

#[pyfunction]
#[pyo3(signature = (p, depth, n = 1))]
fn cylinder_measure<'py>(
    py: Python<'py>,
    p: u64,
    depth: u32,
    n: usize,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &haar::cylinder_measure(&Cylinder::unit(prime(p)?, n).with_depth(depth)),
    )
}

/// Enclosure `(lo, hi)` of the integral of `|f|_p^(1/m)` over
/// `center + p^region_depth Z_p^n`.
#[pyfunction]
#[pyo3(signature = (p, density, depth = 10, root_index = 1, center = None, region_depth = 0))]
fn integrate<'py>(
    py: Python<'py>,
    p: u64,
    density: &str,
    depth: u32,
    root_index: u32,
    center: Option<Vec<Bound<'py, PyAny>>>,
    region_depth: u32,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let pr = prime(p)?;
    let c = match center {
        Some(v) => v.iter().map(to_q).collect::<PyResult<Vec<_>>>()?,
        None => vec![
            Q::from_integer(0.into());
            parse::parse_multipoly(density, None).map_err(err)?.nvars()
        ],
    };
    let f = parse::parse_multipoly(density, Some(c.len())).map_err(err)?;
    let d = PolyDensity::new(f, root_index).map_err(err)?;
    let region = Cylinder::new(pr, &c, region_depth).map_err(err)?;
    let iv = haar::integrate(&d, &region, depth).map_err(err)?;
    Ok((fraction(py, iv.lo())?, fraction(py, iv.hi())?))
}

/// Order `d` if every root of the polynomial is a root of unity, else None.
#[pyfunction]
fn root_of_unity_order(poly: &str) -> PyResult<Option<u64>> {
    let f = parse::parse_poly(poly).map_err(err)?;
    algebraic::root_of_unity_order(&f).map_err(err)
}

#[pyfunction]
fn is_algebraic_integer(poly: &str) -> PyResult<bool> {
    Ok(algebraic::is_algebraic_integer(
        &parse::parse_poly(poly).map_err(err)?,
    ))
}

/// Segments of the Newton polygon as `(slope, horizontal length)`; the roots
/// on a segment of slope `s` have `|root|_p = p^s`.
#[pyfunction]
fn newton_polygon<'py>(
    py: Python<'py>,
    poly: &str,
    p: u64,
) -> PyResult<Vec<(Bound<'py, PyAny>, usize)>> {
    let f = parse::parse_poly(poly).map_err(err)?;
    let np = places::newton_polygon(&f, prime(p)?).map_err(err)?;
    np.segments()
        .iter()
        .map(|s| Ok((fraction(py, &s.slope)?, s.length)))
        .collect()
}

/// Witness document: root-of-unity order, or a place with `|alpha| > 1`.
#[pyfunction]
#[pyo3(signature = (poly, max_doublings = 40))]
fn find_witness<'py>(
    py: Python<'py>,
    poly: &str,
    max_doublings: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let alpha = AlgebraicNumberSpec::new(&parse::parse_poly(poly).map_err(err)?).map_err(err)?;
    let cfg = places::WitnessConfig {
        max_doublings,
        ..Default::default()
    };
    let out = places::find_witness_with(&alpha, &cfg).map_err(err)?;
    document(py, &Document::Witness(WitnessDoc::new(&alpha, &out)))
}

/// Order document for a matrix given as `"1,1;0,1"`.
#[pyfunction]
fn projective_order<'py>(py: Python<'py>, matrix: &str) -> PyResult<Bound<'py, PyAny>> {
    let m = parse::parse_matrix(matrix).map_err(err)?;
    let v = projaut::projective_order(&m).map_err(err)?;
    document(
        py,
        &Document::Order(OrderDoc {
            input: OrderInput::Matrix {
                matrix: m.to_string(),
            },
            verdict: VerdictDoc::from_verdict(&v),
        }),
    )
}

/// Order document for `diag(1, a_1, ..., a_N)`, eigenvalues separated by ';'.
#[pyfunction]
fn certify_diagonal<'py>(py: Python<'py>, eigenvalues: &str) -> PyResult<Bound<'py, PyAny>> {
    let mut eig = vec![AlgebraicNumberSpec::rational(&Q::from_integer(1.into()))];
    eig.extend(parse::parse_eigenvalues(eigenvalues).map_err(err)?);
    let v = projaut::certify_diagonal(&eig).map_err(err)?;
    document(
        py,
        &Document::Order(OrderDoc {
            input: OrderInput::Eigenvalues {
                eigenvalues: eig.iter().map(cert::AlphaDoc::from_spec).collect(),
            },
            verdict: VerdictDoc::from_verdict(&v),
        }),
    )
}

#[pyfunction]
fn verify_shell_tiling<'py>(
    py: Python<'py>,
    p: u64,
    scale: u32,
    range: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let l = projaut::verify_shell_tiling(prime(p)?, scale, range).map_err(err)?;
    document(py, &Document::Tiling(l))
}

#[pyfunction]
fn product_formula_check(r: &Bound<'_, PyAny>) -> PyResult<bool> {
    places::product_formula_check(&to_q(r)?).map_err(err)
}

/// Rechecks a certificate document (dict or JSON string).
#[pyfunction]
fn verify(py: Python<'_>, doc: &Bound<'_, PyAny>) -> PyResult<bool> {
    let text: String = if doc.is_instance_of::<PyDict>() {
        py.import("json")?
            .getattr("dumps")?
            .call1((doc,))?
            .extract()?
    } else {
        doc.extract()?
    };
    let d = Document::from_json(&text).map_err(err)?;
    Ok(cert::verify_document(&d).is_ok())
}

#[pymodule(name = "localfield")]
fn localfield_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPAdic>()?;
    m.add_function(wrap_pyfunction!(cylinder_measure, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(root_of_unity_order, m)?)?;
    m.add_function(wrap_pyfunction!(is_algebraic_integer, m)?)?;
    m.add_function(wrap_pyfunction!(newton_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(find_witness, m)?)?;
    m.add_function(wrap_pyfunction!(projective_order, m)?)?;
    m.add_function(wrap_pyfunction!(certify_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(verify_shell_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(product_formula_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
