//! Python bindings for `geophase`. States are `StateVector` objects; paths are plain
//! Python lists of them.

use std::f64::consts::PI;

use geophase::optics::{self, GaussianBeamParams, ModeGrid, PolarizationSweep};
use geophase::pancharatnam as pan;
use geophase::supercon::{self, Junction, JunctionOffset, RingCircuit};
use geophase::{hilbert, DiscretizedPath, GaugePhases, JumpThresholds};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: geophase::Error) -> PyErr {
    if e.is_config_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

/// Unit-norm state in a finite-dimensional Hilbert space.
#[pyclass(name = "StateVector", module = "geophase_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyStateVector(geophase::StateVector);

#[pymethods]
impl PyStateVector {
    /// Normalizes `components` (a sequence of complex numbers).
    #[new]
    fn new(components: Vec<Complex64>) -> PyResult<Self> {
        geophase::StateVector::new(components).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn basis(dim: usize, index: usize) -> PyResult<Self> {
        geophase::StateVector::basis(dim, index).map(Self).map_err(to_py)
    }

    #[getter]
    fn components(&self) -> Vec<Complex64> {
        self.0.components().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// ⟨self|other⟩
    fn overlap(&self, other: &PyStateVector) -> PyResult<Complex64> {
        self.0.overlap(&other.0).map_err(to_py)
    }

    fn with_phase(&self, angle: f64) -> Self {
        Self(self.0.with_phase(angle))
    }

    fn __len__(&self) -> usize {
        self.0.dim()
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self
            .0
            .components()
            .iter()
            .map(|c| format!("({}{:+}j)", c.re, c.im))
            .collect();
        format!("StateVector([{}])", parts.join(", "))
    }
}

fn path_of(states: Vec<PyStateVector>) -> PyResult<DiscretizedPath> {
    DiscretizedPath::new(states.into_iter().map(|s| s.0).collect()).map_err(to_py)
}

fn states_of(path: DiscretizedPath) -> Vec<PyStateVector> {
    path.states().iter().cloned().map(PyStateVector).collect()
}

/// Phase accumulated along a path, one entry per state.
#[pyclass(name = "PhaseTrace", module = "geophase_py", frozen)]
struct PyPhaseTrace(geophase::PhaseTrace);

#[pymethods]
impl PyPhaseTrace {
    #[getter]
    fn cumulative_phase(&self) -> Vec<f64> {
        self.0.cumulative_phase.clone()
    }

    #[getter]
    fn step_overlap_magnitude(&self) -> Vec<f64> {
        self.0.step_overlap_magnitude.clone()
    }

    #[getter]
    fn closed(&self) -> bool {
        self.0.closed
    }

    #[getter]
    fn final_phase(&self) -> f64 {
        self.0.final_phase()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// The trace in CSV form (`index,cumulative_phase_rad,step_overlap_magnitude`).
    fn to_csv(&self) -> String {
        let mut bytes = Vec::new();
        self.0.write_csv(&mut bytes).expect("writing to memory");
        String::from_utf8(bytes).expect("CSV is ASCII")
    }
}

#[pyclass(name = "JumpReport", module = "geophase_py", frozen, get_all)]
struct PyJumpReport {
    index: usize,
    magnitude: f64,
    sign: i8,
    min_overlap: f64,
    window: (usize, usize),
}

#[pymethods]
impl PyJumpReport {
    fn __repr__(&self) -> String {
        format!(
            "JumpReport(index={}, magnitude={}, sign={}, min_overlap={})",
            self.index, self.magnitude, self.sign, self.min_overlap
        )
    }
}

#[pyfunction]
fn overlap(a: &PyStateVector, b: &PyStateVector) -> PyResult<Complex64> {
    hilbert::overlap(&a.0, &b.0).map_err(to_py)
}

#[pyfunction]
fn fubini_study_distance(a: &PyStateVector, b: &PyStateVector) -> PyResult<f64> {
    hilbert::fubini_study_distance(&a.0, &b.0).map_err(to_py)
}

#[pyfunction]
fn geodesic_interpolate(a: &PyStateVector, b: &PyStateVector, t: f64) -> PyResult<PyStateVector> {
    hilbert::geodesic_interpolate(&a.0, &b.0, t)
        .map(PyStateVector)
        .map_err(to_py)
}

#[pyfunction]
fn apply_gauge(states: Vec<PyStateVector>, phases: Vec<f64>) -> PyResult<Vec<PyStateVector>> {
    let gauge = GaugePhases::new(phases).map_err(to_py)?;
    hilbert::apply_gauge(&path_of(states)?, &gauge)
        .map(states_of)
        .map_err(to_py)
}

#[pyfunction]
fn pairwise_phase(a: &PyStateVector, b: &PyStateVector) -> PyResult<f64> {
    pan::pairwise_phase(&a.0, &b.0).map_err(to_py)
}

#[pyfunction]
fn cumulative_pancharatnam(states: Vec<PyStateVector>) -> PyResult<PyPhaseTrace> {
    pan::cumulative_pancharatnam(&path_of(states)?)
        .map(PyPhaseTrace)
        .map_err(to_py)
}

#[pyfunction]
fn projection_phase_trace(states: Vec<PyStateVector>) -> PyResult<PyPhaseTrace> {
    pan::projection_phase_trace(&path_of(states)?)
        .map(PyPhaseTrace)
        .map_err(to_py)
}

#[pyfunction]
fn closed_loop_phase(states: Vec<PyStateVector>) -> PyResult<f64> {
    pan::closed_loop_phase(&path_of(states)?).map_err(to_py)
}

#[pyfunction]
fn bargmann_invariant(a: &PyStateVector, b: &PyStateVector, c: &PyStateVector) -> PyResult<Complex64> {
    pan::bargmann_invariant(&a.0, &b.0, &c.0).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (trace, jump = None, dip = None, window = None))]
fn detect_pi_jump(
    trace: &PyPhaseTrace,
    jump: Option<f64>,
    dip: Option<f64>,
    window: Option<f64>,
) -> Vec<PyJumpReport> {
    let defaults = JumpThresholds::default();
    let thresholds = JumpThresholds {
        jump: jump.unwrap_or(defaults.jump),
        dip: dip.unwrap_or(defaults.dip),
        window: window.unwrap_or(defaults.window),
    };
    pan::detect_pi_jump(&trace.0, &thresholds)
        .into_iter()
        .map(|r| PyJumpReport {
            index: r.index,
            magnitude: r.magnitude,
            sign: r.sign,
            min_overlap: r.min_overlap,
            window: r.window,
        })
        .collect()
}

/// Jones vectors for a linear polarization rotated from `theta_start` to `theta_end`.
#[pyfunction]
#[pyo3(signature = (epsilon, steps = 2001, theta_start = 0.0, theta_end = PI))]
fn polarization_sweep(
    epsilon: f64,
    steps: usize,
    theta_start: f64,
    theta_end: f64,
) -> PyResult<Vec<PyStateVector>> {
    let sweep = PolarizationSweep {
        ellipticity: epsilon,
        theta_start,
        theta_end,
        steps,
    };
    optics::polarization_sweep_path(&sweep)
        .map(states_of)
        .map_err(to_py)
}

/// Pair states mixing s-wave into d-wave and on to −s.
#[pyfunction]
#[pyo3(signature = (epsilon, steps = 2001))]
fn junction_crossing(epsilon: f64, steps: usize) -> PyResult<Vec<PyStateVector>> {
    supercon::junction_crossing_path(epsilon, steps)
        .map(states_of)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (z, rayleigh_ranges, wavelength = 1.0))]
fn gouy_phase(z: f64, rayleigh_ranges: Vec<f64>, wavelength: f64) -> PyResult<f64> {
    let beam = GaussianBeamParams::new(rayleigh_ranges, wavelength).map_err(to_py)?;
    Ok(optics::gouy_phase(z, &beam))
}

#[pyfunction]
#[pyo3(signature = (rayleigh_ranges, z_max, wavelength = 1.0))]
fn gouy_asymptotic_total(rayleigh_ranges: Vec<f64>, z_max: f64, wavelength: f64) -> PyResult<f64> {
    let beam = GaussianBeamParams::new(rayleigh_ranges, wavelength).map_err(to_py)?;
    optics::gouy_asymptotic_total(&beam, z_max).map_err(to_py)
}

/// Gouy phase recovered from sampled 1-D mode profiles at the positions `z`, relative to
/// the first sample. The grid half-width defaults to six times the widest beam radius.
#[pyfunction]
#[pyo3(signature = (z, rayleigh_range = 1.0, wavelength = PI, grid_points = 1024, half_width = None))]
fn mode_gouy_trace(
    z: Vec<f64>,
    rayleigh_range: f64,
    wavelength: f64,
    grid_points: usize,
    half_width: Option<f64>,
) -> PyResult<Vec<f64>> {
    let w0 = (wavelength * rayleigh_range / PI).sqrt();
    let z_max = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let widest = w0 * (1.0 + (z_max / rayleigh_range).powi(2)).sqrt();
    let grid = ModeGrid {
        half_width: half_width.unwrap_or(6.0 * widest),
        points: grid_points,
    };
    optics::gaussian_mode_path(grid, &z, rayleigh_range, wavelength)
        .and_then(|modes| modes.gouy_trace())
        .map_err(to_py)
}

fn ring(pi_junctions: usize, zero_junctions: usize, beta_l: f64, external_flux: f64) -> PyResult<RingCircuit> {
    let mut junctions = vec![Junction::pi(); pi_junctions];
    junctions.extend(vec![Junction::conventional(); zero_junctions]);
    RingCircuit::new(junctions, beta_l, external_flux).map_err(to_py)
}

/// Allowed (n, flux) pairs in units of the flux quantum.
#[pyfunction]
#[pyo3(signature = (pi_junctions, n_min, n_max, zero_junctions = 0, beta_l = 1.0))]
fn fluxoid_states(
    pi_junctions: usize,
    n_min: i64,
    n_max: i64,
    zero_junctions: usize,
    beta_l: f64,
) -> PyResult<Vec<(i64, f64)>> {
    let ring = ring(pi_junctions, zero_junctions, beta_l, 0.0)?;
    Ok(supercon::fluxoid_states(&ring, n_min, n_max).states)
}

/// Local minima (phi, energy, flux) of a single-junction ring.
#[pyfunction]
#[pyo3(signature = (beta_l, pi = true, external_flux = 0.0))]
fn ring_minima(beta_l: f64, pi: bool, external_flux: f64) -> PyResult<Vec<(f64, f64, f64)>> {
    let offset = if pi { JunctionOffset::Pi } else { JunctionOffset::Zero };
    let ring = RingCircuit::single(offset, beta_l, external_flux).map_err(to_py)?;
    supercon::minimize_ring_energy(&ring)
        .map(|minima| minima.into_iter().map(|m| (m.phi, m.energy, m.flux)).collect())
        .map_err(to_py)
}

#[pyfunction]
fn half_flux_limit(beta_values: Vec<f64>) -> PyResult<Vec<f64>> {
    supercon::half_flux_limit(&beta_values).map_err(to_py)
}

#[pymodule]
fn geophase_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStateVector>()?;
    m.add_class::<PyPhaseTrace>()?;
    m.add_class::<PyJumpReport>()?;
    m.add_function(wrap_pyfunction!(overlap, m)?)?;
    m.add_function(wrap_pyfunction!(fubini_study_distance, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(apply_gauge, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_phase, m)?)?;
    m.add_function(wrap_pyfunction!(cumulative_pancharatnam, m)?)?;
    m.add_function(wrap_pyfunction!(projection_phase_trace, m)?)?;
    m.add_function(wrap_pyfunction!(closed_loop_phase, m)?)?;
    m.add_function(wrap_pyfunction!(bargmann_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(detect_pi_jump, m)?)?;
    m.add_function(wrap_pyfunction!(polarization_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(junction_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(gouy_phase, m)?)?;
    m.add_function(wrap_pyfunction!(gouy_asymptotic_total, m)?)?;
    m.add_function(wrap_pyfunction!(mode_gouy_trace, m)?)?;
    m.add_function(wrap_pyfunction!(fluxoid_states, m)?)?;
    m.add_function(wrap_pyfunction!(ring_minima, m)?)?;
    m.add_function(wrap_pyfunction!(half_flux_limit, m)?)?;
    Ok(())
}
