//! Python bindings: exact exponential polynomials, the quantum
//! cohomology ring, manifold descriptions and the gluing pipeline.
//!
//! Everything stays exact end to end; values cross the boundary as
//! canonical expression strings, exact rational strings, or structured
//! dicts mirroring the CLI report format.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use donaldson::exppoly::{parse_linform, ExpElement, GaussRat, Var};
use donaldson::fibersum::{sum_rules, GlueInput};
use donaldson::manifest::ManifoldFile;
use donaldson::quantum::{self, RingClass};
use donaldson::series::{dd_eval, dx_from_dd, validate, Alpha, StructureSeries};
use donaldson::verify::{run_checks, Section, VerifyOptions};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn var(name: &str) -> PyResult<Var> {
    if name == "exp" || name == "i" {
        return Err(err(format!("`{name}` is reserved")));
    }
    Ok(Var::new(name))
}

/// An exact exponential polynomial in formal variables.
#[pyclass(name = "Element", from_py_object)]
#[derive(Clone, PartialEq)]
struct PyElement {
    inner: ExpElement,
}

#[pymethods]
impl PyElement {
    /// Parses the canonical expression grammar, e.g.
    /// `"(1/32)*exp(2*s) - (1/8)*s"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyElement {
            inner: text.parse().map_err(err)?,
        })
    }

    #[staticmethod]
    fn zero() -> Self {
        PyElement {
            inner: ExpElement::zero(),
        }
    }

    #[staticmethod]
    fn rational(text: &str) -> PyResult<Self> {
        let c: GaussRat = text.parse().map_err(err)?;
        Ok(PyElement {
            inner: ExpElement::from_gauss(c),
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element(\"{}\")", self.inner)
    }

    fn __add__(&self, rhs: &Self) -> Self {
        PyElement {
            inner: &self.inner + &rhs.inner,
        }
    }

    fn __sub__(&self, rhs: &Self) -> Self {
        PyElement {
            inner: &self.inner - &rhs.inner,
        }
    }

    fn __mul__(&self, rhs: &Self) -> Self {
        PyElement {
            inner: &self.inner * &rhs.inner,
        }
    }

    fn __neg__(&self) -> Self {
        PyElement {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, rhs: &Self) -> bool {
        self.inner == rhs.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Multiplies by an exact rational or Gaussian-rational scalar
    /// given as a string.
    fn scale(&self, c: &str) -> PyResult<Self> {
        let c: GaussRat = c.parse().map_err(err)?;
        Ok(PyElement {
            inner: self.inner.scale(&c),
        })
    }

    /// Formal derivative with respect to one variable.
    fn derive(&self, v: &str) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.derive(&var(v)?),
        })
    }

    /// Substitutes zero for one variable.
    fn subst_zero(&self, v: &str) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.subst_zero(&var(v)?),
        })
    }

    /// Coefficient of `v^power * exp(freq * v)`; the frequency is a
    /// linear form such as `"2"`, `"0"` or `"2 + 3*t"`.
    fn extract(&self, v: &str, power: u32, freq: &str) -> PyResult<Self> {
        let freq = parse_linform(freq).map_err(err)?;
        Ok(PyElement {
            inner: self.inner.extract(&var(v)?, power, &freq).map_err(err)?,
        })
    }

    /// Exact Taylor coefficient of `v^k` at zero.
    fn taylor(&self, v: &str, k: u32) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.taylor_coefficient(&var(v)?, k),
        })
    }

    /// The exact value if the element is constant, else None.
    fn constant(&self) -> Option<String> {
        self.inner.constant_value().map(|c| c.to_string())
    }
}

/// An element of the 4-dimensional quantum cohomology ring in
/// power-basis coordinates.
#[pyclass(name = "RingElement", from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRingElement {
    inner: RingClass<ExpElement>,
}

impl PyRingElement {
    fn wrap(inner: RingClass<ExpElement>) -> Self {
        PyRingElement { inner }
    }
}

#[pymethods]
impl PyRingElement {
    /// Builds a class from four coordinate expressions `(c0..c3)` with
    /// `z = c0 + c1 h + c2 h^2 + c3 h^3`.
    #[new]
    fn new(coords: [String; 4]) -> PyResult<Self> {
        let parse = |s: &String| -> PyResult<ExpElement> { s.parse().map_err(err) };
        Ok(PyRingElement::wrap(RingClass::new([
            parse(&coords[0])?,
            parse(&coords[1])?,
            parse(&coords[2])?,
            parse(&coords[3])?,
        ])))
    }

    #[staticmethod]
    fn one() -> Self {
        PyRingElement::wrap(RingClass::one())
    }

    /// The basis class `h^k`, `k <= 3`.
    #[staticmethod]
    fn h_power(k: usize) -> PyResult<Self> {
        if k > 3 {
            return Err(err("power basis ends at h^3"));
        }
        Ok(PyRingElement::wrap(RingClass::h_power(k)))
    }

    /// Image of the surface class, `h/2`.
    #[staticmethod]
    fn mu_sigma() -> Self {
        PyRingElement::wrap(quantum::mu_sigma())
    }

    /// Image of the point class, `h^2/4 - 2`.
    #[staticmethod]
    fn mu_x() -> Self {
        PyRingElement::wrap(quantum::mu_x())
    }

    /// `mu_sigma^a * mu_x^b`.
    #[staticmethod]
    fn mu_class(a: u32, b: u32) -> Self {
        PyRingElement::wrap(quantum::mu_class(a, b))
    }

    /// `exp(s * mu_sigma)` in the named formal variable.
    #[staticmethod]
    fn exp_mu_sigma(v: &str) -> PyResult<Self> {
        Ok(PyRingElement::wrap(quantum::exp_mu_sigma(&var(v)?)))
    }

    fn coords(&self) -> Vec<PyElement> {
        self.inner
            .coords()
            .iter()
            .map(|c| PyElement { inner: c.clone() })
            .collect()
    }

    fn __mul__(&self, rhs: &Self) -> Self {
        PyRingElement::wrap(quantum::qmul(&self.inner, &rhs.inner))
    }

    fn __add__(&self, rhs: &Self) -> Self {
        PyRingElement::wrap(self.inner.add(&rhs.inner))
    }

    fn __sub__(&self, rhs: &Self) -> Self {
        PyRingElement::wrap(self.inner.sub(&rhs.inner))
    }

    fn __eq__(&self, rhs: &Self) -> bool {
        self.inner == rhs.inner
    }

    fn __str__(&self) -> String {
        let c = self.inner.coords();
        format!("({}) + ({})*h + ({})*h^2 + ({})*h^3", c[0], c[1], c[2], c[3])
    }

    fn __repr__(&self) -> String {
        self.__str__()
    }

    /// The intersection pairing against another class.
    fn pair(&self, rhs: &Self) -> PyElement {
        PyElement {
            inner: quantum::qpair(&self.inner, &rhs.inner),
        }
    }

    fn derive(&self, v: &str) -> PyResult<Self> {
        Ok(PyRingElement::wrap(self.inner.derive(&var(v)?)))
    }

    fn subst_zero(&self, v: &str) -> PyResult<Self> {
        Ok(PyRingElement::wrap(self.inner.subst_zero(&var(v)?)))
    }
}

/// A manifold description with its structure series.
#[pyclass(name = "Manifold")]
struct PyManifold {
    file: ManifoldFile,
    series: StructureSeries,
}

#[pymethods]
impl PyManifold {
    /// Parses a JSON manifold description.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        let file = ManifoldFile::from_json_str(json).map_err(err)?;
        let series = file.to_series().map_err(err)?;
        Ok(PyManifold { file, series })
    }

    #[staticmethod]
    fn from_path(path: &str) -> PyResult<Self> {
        let file = ManifoldFile::from_path(std::path::Path::new(path)).map_err(err)?;
        let series = file.to_series().map_err(err)?;
        Ok(PyManifold { file, series })
    }

    #[getter]
    fn name(&self) -> String {
        self.file.name.clone()
    }

    #[getter]
    fn genus(&self) -> i64 {
        self.file.genus
    }

    /// The degree offset `d0 = -w^2 - (3/2)(1 + b+)`.
    fn d0(&self) -> PyResult<i64> {
        self.series.owner.d0().map_err(err)
    }

    /// Violated invariants; empty means valid.
    fn violations(&self) -> Vec<String> {
        validate(&self.series.owner, Some(&self.series))
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    /// Canonical JSON form of the description.
    fn canonical_json(&self) -> String {
        self.file.canonical_json()
    }

    /// Evaluates the structure series (or, with `combined=True`, the
    /// combined series of both chamber structures) on a formal class
    /// expression such as `"s*sigma + t*dbar"`.
    #[pyo3(signature = (class_expr, combined = false))]
    fn eval(&self, class_expr: &str, combined: bool) -> PyResult<PyElement> {
        let alpha = build_alpha(&self.file, class_expr)?;
        let value = if combined {
            dx_from_dd(&self.series).map_err(err)?.eval(&alpha)
        } else {
            dd_eval(&self.series, &alpha)
        };
        Ok(PyElement { inner: value })
    }
}

/// Builds the evaluation class from `[scale*]var*class` terms.
fn build_alpha(file: &ManifoldFile, expr: &str) -> PyResult<Alpha> {
    let mut alpha = Alpha::new();
    for raw in split_terms(expr) {
        let (sign, body) = raw;
        let parts: Vec<&str> = body.split('*').map(str::trim).collect();
        let (scale, var_name, class_name) = match parts.len() {
            2 => (GaussRat::from_int(1), parts[0], parts[1]),
            3 => {
                let c: GaussRat = parts[0].parse().map_err(err)?;
                (c, parts[1], parts[2])
            }
            _ => return Err(err(format!("term `{body}` must be [scale*]var*class"))),
        };
        let vector = file
            .class(class_name)
            .ok_or_else(|| err(format!("unknown class `{class_name}`")))?;
        let scale = scale.scale_int(sign);
        alpha.push(
            var(var_name)?,
            vector.iter().map(|&n| scale.scale_int(n)).collect(),
        );
    }
    Ok(alpha)
}

fn split_terms(expr: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    for c in expr.chars() {
        match c {
            '+' | '-' if current.trim().is_empty() && out.is_empty() => {
                if c == '-' {
                    sign = -sign;
                }
            }
            '+' | '-' => {
                if !current.trim().is_empty() {
                    out.push((sign, current.trim().to_string()));
                    current.clear();
                }
                sign = if c == '-' { -1 } else { 1 };
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        out.push((sign, current.trim().to_string()));
    }
    out
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(k) = n.as_i64() {
                k.into_pyobject(py)?.into_any()
            } else {
                n.as_f64()
                    .expect("number fits in f64")
                    .into_pyobject(py)?
                    .into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

/// Glues two manifold descriptions along their surfaces; returns the
/// report (sum rules, fiber data, composed topology) as a dict, plus
/// the value of the optional probe expression over the glued manifold
/// (`sigma`, `d`, `m1.NAME`, `m2.NAME` directions).
#[pyfunction]
#[pyo3(signature = (m1, m2, probe = None, one_to_one = false))]
fn glue<'py>(
    py: Python<'py>,
    m1: &PyManifold,
    m2: &PyManifold,
    probe: Option<&str>,
    one_to_one: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let mut input = GlueInput::new(m1.series.clone(), m2.series.clone()).map_err(err)?;
    if one_to_one {
        input = input.with_one_to_one();
    }
    let report = sum_rules(&input).map_err(err)?;
    let rules: Vec<serde_json::Value> = report
        .rules
        .iter()
        .map(|rule| {
            serde_json::json!({
                "case": match rule.case {
                    donaldson::fibersum::RuleCase::PositiveSector => "positive-sector",
                    donaldson::fibersum::RuleCase::NegativeSector => "negative-sector",
                    donaldson::fibersum::RuleCase::ZeroSector => "zero-sector",
                    donaldson::fibersum::RuleCase::NotInGroup => "not-in-group",
                },
                "pi_k": rule.pi_k,
                "pi_l": rule.pi_l,
                "sum": rule.claimed_sum.to_string(),
                "kappas": rule.kappas.iter().map(|k| serde_json::json!({
                    "k": k.k,
                    "l": k.l,
                    "sector": k.sector,
                    "kappa_dot_d": k.kappa_dot_d,
                    "kappa_sq": k.kappa_sq,
                    "coefficient": k.coefficient.to_string(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut doc = serde_json::json!({
        "m1": m1.file.name,
        "m2": m2.file.name,
        "topology": {
            "euler": report.topology.euler,
            "signature": report.topology.signature,
            "b_plus": report.topology.b_plus,
            "d0_parity": report.topology.d0_parity,
        },
        "coefficient_magnitude": report.coefficient_magnitude.to_string(),
        "one_to_one": report.one_to_one,
        "no_zero_sector_basics": report.no_zero_sector_basics,
        "dbar1": report.dbar1,
        "dbar2": report.dbar2,
        "rules": rules,
    });
    if let Some(expr) = probe {
        let value = glue_probe_value(&input, &m1.file, &m2.file, expr)?;
        doc["probe"] = serde_json::json!({ "expr": expr, "value": value });
    }
    json_to_py(py, &doc)
}

fn glue_probe_value(
    input: &GlueInput,
    f1: &ManifoldFile,
    f2: &ManifoldFile,
    expr: &str,
) -> PyResult<String> {
    let mut alpha = Alpha::new();
    let mut beta = Alpha::new();
    let mut s_var: Option<Var> = None;
    let mut t_var: Option<Var> = None;
    for (sign, body) in split_terms(expr) {
        let parts: Vec<&str> = body.split('*').map(str::trim).collect();
        let (scale, var_name, class_name) = match parts.len() {
            2 => (GaussRat::from_int(1), parts[0], parts[1]),
            3 => {
                let c: GaussRat = parts[0].parse().map_err(err)?;
                (c, parts[1], parts[2])
            }
            _ => return Err(err(format!("term `{body}` must be [scale*]var*class"))),
        };
        let scale = scale.scale_int(sign);
        match class_name {
            "sigma" | "d" => {
                if !scale.is_one() {
                    return Err(err(format!("`{class_name}` cannot be rescaled")));
                }
                let slot = if class_name == "sigma" {
                    &mut s_var
                } else {
                    &mut t_var
                };
                if slot.is_some() {
                    return Err(err(format!("`{class_name}` appears twice")));
                }
                *slot = Some(var(var_name)?);
            }
            name => {
                let (vector, side) = if let Some(rest) = name.strip_prefix("m1.") {
                    (f1.class(rest), &mut alpha)
                } else if let Some(rest) = name.strip_prefix("m2.") {
                    (f2.class(rest), &mut beta)
                } else {
                    return Err(err(format!(
                        "probe class `{name}` must be sigma, d, m1.NAME or m2.NAME"
                    )));
                };
                let vector = vector.ok_or_else(|| err(format!("unknown class `{name}`")))?;
                side.push(
                    var(var_name)?,
                    vector.iter().map(|&n| scale.scale_int(n)).collect(),
                );
            }
        }
    }
    let value =
        donaldson::fibersum::glue_eval(input, &alpha, &beta, s_var.as_ref(), t_var.as_ref())
            .map_err(err)?;
    Ok(value.to_string())
}

/// `2^{7g-9}` and its proof status for genus `g >= 2`.
#[pyfunction]
fn predict_coefficient(genus: i64) -> PyResult<(String, String)> {
    let (c, status) = donaldson::fibersum::predict_coefficient(genus).map_err(err)?;
    Ok((c.to_string(), status.as_str().to_string()))
}

/// Runs the built-in conformance suite; returns
/// `(check_name, passed, error_message)` triples.
#[pyfunction]
#[pyo3(signature = (section = "all"))]
fn verify(section: &str) -> PyResult<Vec<(String, bool, Option<String>)>> {
    let section = Section::parse(section)
        .ok_or_else(|| err(format!("unknown section `{section}`")))?;
    Ok(run_checks(section, &VerifyOptions::default())
        .into_iter()
        .map(|r| {
            (
                format!("{}.{}", r.section.as_str(), r.name),
                r.passed(),
                r.error,
            )
        })
        .collect())
}

#[pymodule]
fn donaldson_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyRingElement>()?;
    m.add_class::<PyManifold>()?;
    m.add_function(wrap_pyfunction!(glue, m)?)?;
    m.add_function(wrap_pyfunction!(predict_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
