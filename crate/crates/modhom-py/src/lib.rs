//! Python bindings: modulus pairs, chains, forms, and the dimension and
//! verification entry points, exposed as the `modhom_py` module.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use modhom::forms::{basis_of, FormClass, LogForm};
use modhom::hochschild::{hkr_eps, parse_chain, ChainElement};
use modhom::homology::{
    cyclic_report, derham_report, hkr_cycle_probe, CyclicVariant, GradedComplex, ProbeOutcome,
};
use modhom::modpair::{ModulusPair, Multidegree};
use modhom::verify::{run_all, run_suite, Suite, SuiteConfig};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_variant(name: &str) -> PyResult<CyclicVariant> {
    match name.to_ascii_lowercase().as_str() {
        "hc" => Ok(CyclicVariant::HC),
        "hcminus" | "hc-" => Ok(CyclicVariant::HCMinus),
        "hp" => Ok(CyclicVariant::HP),
        _ => Err(value_err(format!("unknown variant `{name}`"))),
    }
}

/// A monomial modulus pair together with its dimension queries.
#[pyclass(name = "ModulusPair", frozen)]
struct PyModulusPair {
    inner: ModulusPair,
}

#[pymethods]
impl PyModulusPair {
    #[new]
    fn new(s: usize, t: usize, r: Vec<i64>) -> PyResult<Self> {
        Ok(PyModulusPair { inner: ModulusPair::new(s, t, r).map_err(value_err)? })
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn r(&self) -> Vec<i64> {
        self.inner.r().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("ModulusPair({})", self.inner)
    }

    fn multidegree(&self, text: &str) -> PyResult<Vec<i64>> {
        Ok(self.inner.parse_multidegree(text).map_err(value_err)?.flat())
    }

    /// Parses a chain like `x1^-1*y1 (x) x1 + 2 y1 (x) x1`.
    fn chain(&self, text: &str) -> PyResult<PyChain> {
        Ok(PyChain { inner: parse_chain(&self.inner, text).map_err(value_err)? })
    }

    /// Pole-bounded Hochschild dimensions by homological degree.
    #[pyo3(signature = (deg, n_max = 6, no_poles = false))]
    fn hh_dims(&self, deg: Vec<i64>, n_max: usize, no_poles: bool) -> PyResult<BTreeMap<i64, usize>> {
        let deg = self.split_degree(deg)?;
        let class = if no_poles { FormClass::POmega } else { FormClass::MOmega };
        let mut out = BTreeMap::new();
        for n in 0..=n_max {
            out.insert(n as i64, basis_of(&self.inner, class, n, &deg).map_err(value_err)?.len());
        }
        Ok(out)
    }

    /// de Rham cohomology dimensions of the pole-bounded complex.
    fn derham_dims(&self, deg: Vec<i64>) -> PyResult<BTreeMap<i64, usize>> {
        let deg = self.split_degree(deg)?;
        Ok(derham_report(&self.inner, &deg).map_err(value_err)?.dims)
    }

    /// Cyclic-style dimensions; `variant` is `hc`, `hcminus`, or `hp`.
    #[pyo3(signature = (deg, variant, n_min = 0, n_max = 6, bicomplex = false))]
    fn cyclic_dims(
        &self,
        deg: Vec<i64>,
        variant: &str,
        n_min: i64,
        n_max: i64,
        bicomplex: bool,
    ) -> PyResult<BTreeMap<i64, usize>> {
        let deg = self.split_degree(deg)?;
        let variant = parse_variant(variant)?;
        let report = cyclic_report(&self.inner, &deg, variant, n_min..=n_max, bicomplex)
            .map_err(value_err)?;
        Ok(report.dims)
    }

    /// Basis of the pole-bounded forms in one exterior degree, rendered.
    fn form_basis(&self, q: usize, deg: Vec<i64>) -> PyResult<Vec<String>> {
        let deg = self.split_degree(deg)?;
        Ok(basis_of(&self.inner, FormClass::MOmega, q, &deg)
            .map_err(value_err)?
            .iter()
            .map(|term| term.to_string())
            .collect())
    }
}

impl PyModulusPair {
    fn split_degree(&self, flat: Vec<i64>) -> PyResult<Multidegree> {
        let (s, t) = (self.inner.s(), self.inner.t());
        if flat.len() != s + t {
            return Err(value_err(format!("need {} components, got {}", s + t, flat.len())));
        }
        Ok(Multidegree::new(flat[..s].to_vec(), flat[s..].to_vec()))
    }
}

/// A rational combination of monomial tensors of one homological degree.
#[pyclass(name = "ChainElement", frozen)]
struct PyChain {
    inner: ChainElement,
}

#[pymethods]
impl PyChain {
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn classify(&self) -> String {
        self.inner.classify().to_string()
    }

    fn multidegree(&self) -> Option<Vec<i64>> {
        self.inner.multidegree().map(|d| d.flat())
    }

    fn b(&self) -> PyChain {
        PyChain { inner: self.inner.hochschild_b() }
    }

    fn connes_b(&self) -> PyChain {
        PyChain { inner: self.inner.connes_b() }
    }

    fn t(&self) -> PyChain {
        PyChain { inner: self.inner.cyclic_t() }
    }

    fn add(&self, other: &PyChain) -> PyChain {
        PyChain { inner: self.inner.add(&other.inner) }
    }

    fn shuffle(&self, other: &PyChain) -> PyChain {
        PyChain { inner: self.inner.shuffle(&other.inner) }
    }

    /// The comparison map into forms.
    fn e(&self) -> PyForm {
        PyForm { inner: self.inner.hkr_e() }
    }

    /// Probes whether this cycle is homologous to the antisymmetrization
    /// of its form image; returns `confirmed` or `inconclusive`.
    #[pyo3(signature = (pole_bound = 4))]
    fn probe(&self, pole_bound: i64) -> PyResult<String> {
        for bound in 0..=pole_bound {
            match hkr_cycle_probe(&self.inner, bound).map_err(value_err)? {
                ProbeOutcome::Confirmed => return Ok("confirmed".to_string()),
                ProbeOutcome::Inconclusive => continue,
            }
        }
        Ok("inconclusive".to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ChainElement({})", self.inner)
    }

    fn __eq__(&self, other: &PyChain) -> bool {
        self.inner == other.inner
    }
}

/// A logarithmic differential form with exact rational coefficients.
#[pyclass(name = "LogForm", frozen)]
struct PyForm {
    inner: LogForm,
}

#[pymethods]
impl PyForm {
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn classify(&self) -> String {
        self.inner.classify().to_string()
    }

    fn d(&self) -> PyForm {
        PyForm { inner: self.inner.de_rham_d() }
    }

    fn wedge(&self, other: &PyForm) -> PyForm {
        PyForm { inner: self.inner.wedge(&other.inner) }
    }

    /// The antisymmetrized tensor representative of this form.
    fn eps(&self) -> PyResult<PyChain> {
        Ok(PyChain { inner: hkr_eps(&self.inner).map_err(value_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LogForm({})", self.inner)
    }

    fn __eq__(&self, other: &PyForm) -> bool {
        self.inner == other.inner
    }
}

/// Runs one verification suite (or `all`) and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (suite = "all", samples = 200, seed = 17))]
fn verify(suite: &str, samples: u64, seed: u64) -> PyResult<String> {
    let cfg = SuiteConfig { seed, samples, ..SuiteConfig::default() };
    let reports = if suite == "all" {
        run_all(&cfg)
    } else {
        let suite: Suite = suite.parse().map_err(value_err)?;
        vec![run_suite(suite, &cfg)]
    };
    serde_json::to_string(&reports).map_err(value_err)
}

/// Dimensions of the cohomology of the pole-bounded forms complex compared
/// against the truncated-column total complex, as a consistency probe.
#[pyfunction]
fn cyclic_cross_check(s: usize, t: usize, r: Vec<i64>, deg: Vec<i64>, n_max: i64) -> PyResult<bool> {
    let pair = ModulusPair::new(s, t, r).map_err(value_err)?;
    if deg.len() != s + t {
        return Err(value_err(format!("need {} components, got {}", s + t, deg.len())));
    }
    let deg = Multidegree::new(deg[..s].to_vec(), deg[s..].to_vec());
    let complex = GradedComplex::build(&pair, FormClass::MOmega, &deg).map_err(value_err)?;
    for variant in CyclicVariant::ALL {
        for n in 0..=n_max {
            let a = modhom::homology::cyclic_dims_formula(&complex, variant, n);
            let b = modhom::homology::cyclic_dims_bicomplex(&complex, variant, n);
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[pymodule]
fn modhom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModulusPair>()?;
    m.add_class::<PyChain>()?;
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_cross_check, m)?)?;
    Ok(())
}
