//! Python bindings over the float backend.

use coeffbound::bounds;
use coeffbound::caratheodory::{self, Atom};
use coeffbound::harness::{self, Format, GridSpec, SuiteConfig};
use coeffbound::{doc, Error};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Truncated power series with complex coefficients.
#[pyclass(name = "Series", module = "coeffbound_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(coeffbound::TruncatedSeries<f64>);

#[pymethods]
impl PySeries {
    /// `Series(coeffs, order)`: pads with zeros or truncates to `order + 1` terms.
    #[new]
    fn new(coeffs: Vec<Complex64>, order: usize) -> Self {
        PySeries(coeffbound::TruncatedSeries::new(coeffs, order))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    fn coeff(&self, k: usize) -> Complex64 {
        self.0.coeff(k)
    }

    fn __add__(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.add(&other.0).map(PySeries).map_err(py_err)
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.sub(&other.0).map(PySeries).map_err(py_err)
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.mul(&other.0).map(PySeries).map_err(py_err)
    }

    fn scale(&self, c: Complex64) -> PySeries {
        PySeries(self.0.scale(&c))
    }

    fn integer_power(&self, m: u32) -> PySeries {
        PySeries(self.0.integer_power(m))
    }

    fn real_power(&self, c: f64) -> PyResult<PySeries> {
        self.0.real_power(&c).map(PySeries).map_err(py_err)
    }

    fn salagean(&self, n: u32) -> PySeries {
        PySeries(self.0.salagean(n))
    }

    fn evaluate(&self, z: Complex64) -> Complex64 {
        self.0.evaluate(&z)
    }

    fn __len__(&self) -> usize {
        self.0.order() + 1
    }

    fn __repr__(&self) -> String {
        format!("Series(order={}, coeffs={:?})", self.0.order(), self.0.coeffs())
    }
}

/// Finite convex combination of point masses on the unit circle.
#[pyclass(name = "HerglotzAtoms", module = "coeffbound_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAtoms(caratheodory::HerglotzAtoms<f64>);

#[pymethods]
impl PyAtoms {
    /// `HerglotzAtoms([(weight, angle_radians), ...])`.
    #[new]
    fn new(atoms: Vec<(f64, f64)>) -> PyResult<Self> {
        let atoms = atoms
            .into_iter()
            .map(|(weight, theta)| Atom { weight, point: Complex64::from_polar(1.0, theta) })
            .collect();
        caratheodory::HerglotzAtoms::new(atoms).map(PyAtoms).map_err(py_err)
    }

    #[staticmethod]
    fn random(seed: u64, max_atoms: usize) -> PyResult<Self> {
        caratheodory::random_herglotz(seed, max_atoms).map(PyAtoms).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        doc::parse_atoms(text).map(PyAtoms).map_err(py_err)
    }

    fn to_json(&self) -> String {
        doc::atoms_to_string(&self.0)
    }

    fn series(&self, order: usize) -> PySeries {
        PySeries(self.0.series(order))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("HerglotzAtoms({})", self.to_json())
    }
}

/// The triple `(n, alpha, beta)`.
#[pyclass(name = "ClassParams", module = "coeffbound_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams(bounds::ClassParams<f64>);

#[pymethods]
impl PyParams {
    #[new]
    fn new(n: u32, alpha: f64, beta: f64) -> PyResult<Self> {
        bounds::ClassParams::new(n, alpha, beta).map(PyParams).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta
    }

    fn __repr__(&self) -> String {
        format!("ClassParams(n={}, alpha={}, beta={})", self.0.n, self.0.alpha, self.0.beta)
    }
}

#[pyfunction]
fn kernel_series(angle_radians: f64, order: usize) -> PyResult<PySeries> {
    caratheodory::kernel_series(&Complex64::from_polar(1.0, angle_radians), order)
        .map(PySeries)
        .map_err(py_err)
}

#[pyfunction]
fn half_hadamard(p: &PySeries, q: &PySeries) -> PyResult<PySeries> {
    caratheodory::half_hadamard(&p.0, &q.0).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn iterated_transform(p: &PySeries, n: u32, alpha: f64) -> PyResult<PySeries> {
    let t = caratheodory::TransformParams::new(n, alpha).map_err(py_err)?;
    caratheodory::iterated_transform(&p.0, &t).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn min_real_part(p: &PySeries, radius: f64, samples: usize) -> PyResult<f64> {
    caratheodory::min_real_part(&p.0, radius, samples).map_err(py_err)
}

/// `f = z (beta + (1 - beta) p_n)^{1/alpha}` from a generator series.
#[pyfunction]
fn f_from_p(p: &PySeries, params: &PyParams) -> PyResult<PySeries> {
    bounds::f_from_p(&p.0, &params.0).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn f_from_atoms(p: &PyAtoms, params: &PyParams, order: usize) -> PyResult<PySeries> {
    bounds::f_from_atoms(&p.0, &params.0, order).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn a_k_direct(p: &PySeries, params: &PyParams, k: usize) -> PyResult<Complex64> {
    bounds::a_k_direct(&p.0, &params.0, k).map_err(py_err)
}

#[pyfunction]
fn verify_membership(f: &PySeries, params: &PyParams, radius: f64, samples: usize) -> PyResult<f64> {
    bounds::verify_membership(&f.0, &params.0, radius, samples).map_err(py_err)
}

#[pyfunction]
fn sharp_bound(params: &PyParams, k: usize) -> f64 {
    bounds::sharp_bound(&params.0, k)
}

/// `(region, value)`; `value` is `None` outside the small-alpha regions.
#[pyfunction]
fn theorem1_bound(params: &PyParams, k: usize) -> PyResult<(String, Option<f64>)> {
    let b = bounds::theorem1_bound(&params.0, k).map_err(py_err)?;
    Ok((b.region.to_string(), b.value))
}

#[pyfunction]
fn theorem2_estimate(alpha: f64, k: usize) -> f64 {
    bounds::theorem2_estimate(alpha, k)
}

#[pyfunction]
fn extremal_series(k: usize, order: usize) -> PyResult<PySeries> {
    bounds::extremal_series(k, order).map(PySeries).map_err(py_err)
}

/// `(h_k, d, identity_holds)` where `d[mu - 1]` is the z^mu coefficient used by
/// the scheme.
#[pyfunction]
fn build_hk(k: usize, alpha: f64, order: usize) -> PyResult<(PySeries, Vec<f64>, bool)> {
    let (h, scheme) = bounds::build_hk(k, &alpha, order).map_err(py_err)?;
    let ok = bounds::check_eq24(&scheme, &alpha);
    Ok((PySeries(h), scheme.d, ok))
}

#[pyfunction]
fn nehari_series(h: &PySeries, g: &PySeries, params: &PyParams, order: usize) -> PyResult<PySeries> {
    bounds::nehari_series(&h.0, &g.0, &params.0, order).map(PySeries).map_err(py_err)
}

/// Runs a verification suite on the float backend and returns
/// `(all_passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, n_values, alpha_values, beta_values, k_max=12, order=64, trials=1000, seed=harness::DEFAULT_SEED))]
#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    n_values: Vec<u32>,
    alpha_values: Vec<f64>,
    beta_values: Vec<f64>,
    k_max: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> PyResult<(bool, String)> {
    let grid = GridSpec { n_values, alpha_values, beta_values, k_max, order, trials, seed };
    let cfg = SuiteConfig::default();
    let reports = match suite {
        "extremal" => harness::run_extremal_suite(&grid, &cfg),
        "random" => harness::run_random_suite(&grid, &cfg),
        "nehari" => harness::run_nehari_suite(&grid, &cfg),
        "hk" => harness::run_hk_audit(grid.k_max, &grid.alpha_values, grid.order, &cfg),
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    }
    .map_err(py_err)?;
    let passed = reports.iter().all(|r| r.passed);
    Ok((passed, harness::render_reports(&reports, Format::Json)))
}

#[pymodule]
pub fn coeffbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_class::<PyAtoms>()?;
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(kernel_series, m)?)?;
    m.add_function(wrap_pyfunction!(half_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(iterated_transform, m)?)?;
    m.add_function(wrap_pyfunction!(min_real_part, m)?)?;
    m.add_function(wrap_pyfunction!(f_from_p, m)?)?;
    m.add_function(wrap_pyfunction!(f_from_atoms, m)?)?;
    m.add_function(wrap_pyfunction!(a_k_direct, m)?)?;
    m.add_function(wrap_pyfunction!(verify_membership, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_series, m)?)?;
    m.add_function(wrap_pyfunction!(build_hk, m)?)?;
    m.add_function(wrap_pyfunction!(nehari_series, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
