//! s-wave/d-wave pair states, the geometric π shift across an s→d hetero-junction, fluxoid
//! quantization and the energy landscape of a single-junction ring.
//!
//! Pair wavefunctions live on the circle, expanded in the orthonormal basis
//! { 1/√(2π), cos(mφ)/√π, sin(mφ)/√π : m = 1..M } ordered as
//! `[const, cos 1φ, sin 1φ, cos 2φ, sin 2φ, …]`. Fluxes are in units of Φ₀ = h/2e and energies in
//! units where the inductive term of the ring is (φ − 2π·Φ_ext)²/(2·β_L).

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::StateVector;
use crate::pancharatnam::{detect_pi_jump, projection_phase_trace, DiscretizedPath, JumpThresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    SWave,
    DWave,
    Custom,
}

/// Angular pair wavefunction, unit norm under ∫₀^{2π} conj(f)·g dφ.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    kind: PairKind,
    order: usize,
    coefficients: Vec<Complex64>,
}

fn basis_len(order: usize) -> usize {
    2 * order + 1
}

impl PairState {
    /// Isotropic 1/√(2π).
    pub fn s_wave(order: usize) -> Result<Self> {
        Self::single(PairKind::SWave, order, 0)
    }

    /// cos(2φ)/√π, the d_{x²−y²} symmetry; needs `order ≥ 2`.
    pub fn d_wave(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::config("order", "d-wave needs harmonics up to order 2"));
        }
        Self::single(PairKind::DWave, order, 3)
    }

    /// The `index`-th basis function.
    pub fn harmonic(order: usize, index: usize) -> Result<Self> {
        if index >= basis_len(order) {
            return Err(Error::config("index", format!("{index} outside basis of order {order}")));
        }
        Self::single(PairKind::Custom, order, index)
    }

    fn single(kind: PairKind, order: usize, index: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::config("order", "must be at least 1"));
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); basis_len(order)];
        coefficients[index] = Complex64::new(1.0, 0.0);
        Ok(Self { kind, order, coefficients })
    }

    /// Arbitrary superposition, normalized.
    pub fn custom(coefficients: Vec<Complex64>) -> Result<Self> {
        let n = coefficients.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::config("coefficients", format!("length {n} is not 2M+1 with M ≥ 1")));
        }
        let state = StateVector::new(coefficients)?;
        Ok(Self {
            kind: PairKind::Custom,
            order: (n - 1) / 2,
            coefficients: state.into_components(),
        })
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// f(φ).
    pub fn value(&self, phi: f64) -> Complex64 {
        let inv_sqrt_pi = 1.0 / PI.sqrt();
        let mut sum = self.coefficients[0] * (FRAC_1_SQRT_2 * inv_sqrt_pi);
        for m in 1..=self.order {
            let (s, c) = (m as f64 * phi).sin_cos();
            sum += self.coefficients[2 * m - 1] * (c * inv_sqrt_pi);
            sum += self.coefficients[2 * m] * (s * inv_sqrt_pi);
        }
        sum
    }

    /// Coefficient vector as a state in the harmonic basis.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        StateVector::new(self.coefficients.clone())
    }
}

/// ∫₀^{2π} conj(a)·b dφ by the trapezoid rule on 4M+1 points, exact for the harmonic basis.
pub fn angular_overlap(a: &PairState, b: &PairState) -> Result<Complex64> {
    if a.order != b.order {
        return Err(Error::BasisMismatch(a.order, b.order));
    }
    let n = 4 * a.order + 1;
    let h = 2.0 * PI / n as f64;
    let sum: Complex64 = (0..n)
        .map(|j| {
            let phi = h * j as f64;
            a.value(phi).conj() * b.value(phi)
        })
        .sum();
    Ok(sum * h)
}

/// Path from |s⟩ through |d⟩ (orthogonal to the start) to −|s⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionCrossing {
    /// Signed regularization ε of the crossing; its sign fixes the sign of the π shift.
    pub epsilon: f64,
    pub steps: usize,
    /// Final mixing angle; π crosses the d state at π/2.
    pub alpha_end: f64,
    /// Harmonic order of the embedding basis.
    pub order: usize,
}

impl JunctionCrossing {
    pub fn new(epsilon: f64, steps: usize) -> Self {
        Self {
            epsilon,
            steps,
            alpha_end: PI,
            order: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.abs() > 0.0 && self.epsilon.abs() < 0.5) {
            return Err(Error::config("epsilon", format!("need 0 < |{}| < 0.5", self.epsilon)));
        }
        if self.steps < 3 {
            return Err(Error::config("steps", format!("{} < 3", self.steps)));
        }
        if !(self.alpha_end.is_finite() && self.alpha_end > 0.0) {
            return Err(Error::config("alpha_end", "must be positive and finite"));
        }
        if self.order < 2 {
            return Err(Error::config("order", "d-wave needs harmonics up to order 2"));
        }
        Ok(())
    }

    /// ψ(α) ∝ cos α·|s⟩ + sin α·|d⟩ + i·ε·(−sin α·|s⟩ + cos α·|d⟩), timestamped by α.
    pub fn path(&self) -> Result<DiscretizedPath> {
        self.validate()?;
        let s = PairState::s_wave(self.order)?;
        let d = PairState::d_wave(self.order)?;
        let last = (self.steps - 1) as f64;
        let alphas: Vec<f64> = (0..self.steps)
            .map(|k| self.alpha_end * k as f64 / last)
            .collect();
        let states = alphas
            .iter()
            .map(|&alpha| {
                let (sin, cos) = alpha.sin_cos();
                let cs = Complex64::new(cos, -self.epsilon * sin);
                let cd = Complex64::new(sin, self.epsilon * cos);
                let coefficients = s
                    .coefficients()
                    .iter()
                    .zip(d.coefficients())
                    .map(|(a, b)| a * cs + b * cd)
                    .collect();
                StateVector::new(coefficients)
            })
            .collect::<Result<Vec<_>>>()?;
        DiscretizedPath::with_timestamps(states, alphas)
    }

    /// Net phase flip picked up crossing the d state, or `None` when the path never gets near
    /// a state orthogonal to |s⟩.
    pub fn phase_shift(&self) -> Result<Option<f64>> {
        let trace = projection_phase_trace(&self.path()?)?;
        Ok(detect_pi_jump(&trace, &JumpThresholds::default())
            .first()
            .map(|jump| jump.magnitude))
    }
}

/// Convenience for [`JunctionCrossing::new`]`(epsilon, steps).path()`.
pub fn junction_crossing_path(epsilon: f64, steps: usize) -> Result<DiscretizedPath> {
    JunctionCrossing::new(epsilon, steps).path()
}

/// Intrinsic phase offset of a junction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JunctionOffset {
    #[serde(rename = "0", alias = "zero")]
    Zero,
    #[serde(rename = "pi")]
    Pi,
}

impl JunctionOffset {
    pub fn radians(self) -> f64 {
        match self {
            JunctionOffset::Zero => 0.0,
            JunctionOffset::Pi => PI,
        }
    }

    /// Nearest of {0, π} modulo 2π.
    pub fn from_phase_shift(shift: f64) -> Self {
        let reduced = shift.rem_euclid(2.0 * PI);
        if (reduced - PI).abs() < PI / 2.0 {
            JunctionOffset::Pi
        } else {
            JunctionOffset::Zero
        }
    }
}

fn default_josephson_energy() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Junction {
    pub offset: JunctionOffset,
    #[serde(rename = "ej", default = "default_josephson_energy")]
    pub josephson_energy: f64,
}

impl Junction {
    pub fn conventional() -> Self {
        Self {
            offset: JunctionOffset::Zero,
            josephson_energy: 1.0,
        }
    }

    pub fn pi() -> Self {
        Self {
            offset: JunctionOffset::Pi,
            josephson_energy: 1.0,
        }
    }
}

/// Superconducting loop: junctions in series, screening parameter and applied flux (Φ₀ units).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingCircuit {
    #[serde(default)]
    pub junctions: Vec<Junction>,
    #[serde(rename = "beta_l")]
    pub beta_l: f64,
    #[serde(default)]
    pub external_flux: f64,
}

impl RingCircuit {
    pub fn new(junctions: Vec<Junction>, beta_l: f64, external_flux: f64) -> Result<Self> {
        let ring = Self {
            junctions,
            beta_l,
            external_flux,
        };
        ring.validate()?;
        Ok(ring)
    }

    /// Ring with one junction of the given kind and unit Josephson energy.
    pub fn single(offset: JunctionOffset, beta_l: f64, external_flux: f64) -> Result<Self> {
        Self::new(
            vec![Junction {
                offset,
                josephson_energy: 1.0,
            }],
            beta_l,
            external_flux,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta_l.is_finite() && self.beta_l > 0.0) {
            return Err(Error::config("beta_l", format!("{} must be positive", self.beta_l)));
        }
        if !self.external_flux.is_finite() {
            return Err(Error::config("external_flux", "must be finite"));
        }
        if self
            .junctions
            .iter()
            .any(|j| !(j.josephson_energy.is_finite() && j.josephson_energy > 0.0))
        {
            return Err(Error::config("ej", "Josephson energy must be positive"));
        }
        Ok(())
    }

    pub fn pi_junction_count(&self) -> usize {
        self.junctions
            .iter()
            .filter(|j| j.offset == JunctionOffset::Pi)
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Allowed fluxoid values, one flux quantum apart.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxStateSet {
    /// (n, Φₙ/Φ₀) in increasing order.
    pub states: Vec<(i64, f64)>,
    pub parity: Parity,
}

impl FluxStateSet {
    pub fn flux_values(&self) -> Vec<f64> {
        self.states.iter().map(|&(_, flux)| flux).collect()
    }
}

/// Φₙ = n + (P mod 2)/2 for n in `n_min..=n_max`, P the number of π-junctions: single-valuedness
/// of the pair wavefunction demands Σ offsets + 2π·Φ/Φ₀ = 2π·n.
pub fn fluxoid_states(ring: &RingCircuit, n_min: i64, n_max: i64) -> FluxStateSet {
    let parity = if ring.pi_junction_count() % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    };
    let shift = match parity {
        Parity::Even => 0.0,
        Parity::Odd => 0.5,
    };
    FluxStateSet {
        states: (n_min..=n_max).map(|n| (n, n as f64 + shift)).collect(),
        parity,
    }
}

/// Inductive energy 2π²·(Φ − Φ_ext)²/β_L of a fluxoid state with flux Φ.
pub fn screening_energy(ring: &RingCircuit, flux: f64) -> f64 {
    2.0 * PI * PI * (flux - ring.external_flux).powi(2) / ring.beta_l
}

fn single_junction(ring: &RingCircuit) -> Result<Junction> {
    match ring.junctions.as_slice() {
        [junction] => Ok(*junction),
        other => Err(Error::UnsupportedTopology(other.len())),
    }
}

/// u(φ) = (φ − 2π·Φ_ext)²/(2β_L) − E_J·cos(φ + offset).
pub fn ring_energy(ring: &RingCircuit, phi: f64) -> Result<f64> {
    let junction = single_junction(ring)?;
    Ok(energy(ring, &junction, phi))
}

fn energy(ring: &RingCircuit, junction: &Junction, phi: f64) -> f64 {
    let x = phi - 2.0 * PI * ring.external_flux;
    x * x / (2.0 * ring.beta_l) - junction.josephson_energy * (phi + junction.offset.radians()).cos()
}

fn energy_slope(ring: &RingCircuit, junction: &Junction, phi: f64) -> f64 {
    (phi - 2.0 * PI * ring.external_flux) / ring.beta_l
        + junction.josephson_energy * (phi + junction.offset.radians()).sin()
}

/// Local minimum of the ring energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingMinimum {
    pub phi: f64,
    pub energy: f64,
    /// Spontaneous flux φ/2π − Φ_ext, in Φ₀.
    pub flux: f64,
}

/// Grid for the minimum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyScan {
    pub half_range: f64,
    pub points: usize,
}

impl Default for EnergyScan {
    fn default() -> Self {
        Self {
            half_range: 3.0 * PI,
            points: 20_001,
        }
    }
}

/// All local minima of u(φ) on [−3π, 3π], in increasing φ.
pub fn minimize_ring_energy(ring: &RingCircuit) -> Result<Vec<RingMinimum>> {
    minimize_ring_energy_with(ring, &EnergyScan::default())
}

/// Dense scan of u′(φ) for −→+ sign changes, each bracket refined by bisection down to
/// floating-point resolution (|u′| well below 1e-10).
pub fn minimize_ring_energy_with(ring: &RingCircuit, scan: &EnergyScan) -> Result<Vec<RingMinimum>> {
    ring.validate()?;
    let junction = single_junction(ring)?;
    if scan.points < 3 || scan.half_range.is_nan() || scan.half_range <= 0.0 {
        return Err(Error::config("scan", "needs at least 3 points and a positive range"));
    }
    let slope = |phi: f64| energy_slope(ring, &junction, phi);
    let step = 2.0 * scan.half_range / (scan.points - 1) as f64;
    let grid: Vec<f64> = (0..scan.points)
        .map(|i| -scan.half_range + step * i as f64)
        .collect();

    let mut minima = Vec::new();
    for w in grid.windows(2) {
        let (d0, d1) = (slope(w[0]), slope(w[1]));
        if !(d0 < 0.0 && d1 >= 0.0) {
            continue;
        }
        let phi = bisect_root(&slope, w[0], w[1]);
        minima.push(RingMinimum {
            phi,
            energy: energy(ring, &junction, phi),
            flux: phi / (2.0 * PI) - ring.external_flux,
        });
    }
    Ok(minima)
}

fn bisect_root(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // invariant: f(lo) < 0 <= f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() < f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Ground-state minimum with φ > 0, if any.
fn positive_ground_state(minima: &[RingMinimum]) -> Option<RingMinimum> {
    minima
        .iter()
        .filter(|m| m.phi > 0.0)
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .copied()
}

/// Spontaneous flux of the unbiased π-ring ground state for each β_L > 1.
pub fn half_flux_limit(beta_values: &[f64]) -> Result<Vec<f64>> {
    beta_values
        .iter()
        .map(|&beta| {
            if !(beta.is_finite() && beta > 1.0) {
                return Err(Error::InvalidBeta(beta));
            }
            let ring = RingCircuit::single(JunctionOffset::Pi, beta, 0.0)?;
            let minima = minimize_ring_energy(&ring)?;
            positive_ground_state(&minima)
                .map(|m| m.flux.abs())
                .ok_or(Error::InvalidBeta(beta))
        })
        .collect()
}
