//! Optical analogs: polarization rotated through an orthogonal state, and the Gouy phase of a
//! focused Gaussian beam.
//!
//! Lengths along the beam are in the same (arbitrary) units as the Rayleigh ranges.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::hilbert::StateVector;
use crate::pancharatnam::{cumulative_pancharatnam, DiscretizedPath, PhaseTrace};

/// Linear polarization rotated from `theta_start` to `theta_end` with a small circular admixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationSweep {
    /// Signed ellipticity ε; selects the side of the origin the projection passes.
    pub ellipticity: f64,
    pub theta_start: f64,
    pub theta_end: f64,
    pub steps: usize,
}

impl PolarizationSweep {
    /// θ from 0 to π: through the orthogonal polarization at π/2 and back to the initial ray.
    pub fn half_turn(ellipticity: f64, steps: usize) -> Self {
        Self {
            ellipticity,
            theta_start: 0.0,
            theta_end: PI,
            steps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::config("steps", format!("{} < 2", self.steps)));
        }
        if !self.theta_start.is_finite() || !self.theta_end.is_finite() {
            return Err(Error::config("theta", "must be finite"));
        }
        if self.theta_start >= self.theta_end {
            return Err(Error::config("theta", "theta_start must be below theta_end"));
        }
        if self.ellipticity.is_nan() || self.ellipticity.abs() >= 0.5 {
            return Err(Error::config(
                "epsilon",
                format!("|{}| must be below 0.5", self.ellipticity),
            ));
        }
        Ok(())
    }

    /// Uniformly spaced rotation angles.
    pub fn angles(&self) -> Vec<f64> {
        let span = self.theta_end - self.theta_start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| self.theta_start + span * k as f64 / last)
            .collect()
    }
}

/// Jones vector (cos θ, sin θ) + i·ε·(−sin θ, cos θ), normalized.
pub fn jones_vector(theta: f64, ellipticity: f64) -> Result<StateVector> {
    let (s, c) = theta.sin_cos();
    StateVector::new(vec![
        Complex64::new(c, -ellipticity * s),
        Complex64::new(s, ellipticity * c),
    ])
}

/// Jones vectors along the sweep, timestamped by rotation angle.
pub fn polarization_sweep_path(cfg: &PolarizationSweep) -> Result<DiscretizedPath> {
    cfg.validate()?;
    let angles = cfg.angles();
    let states = angles
        .iter()
        .map(|&theta| jones_vector(theta, cfg.ellipticity))
        .collect::<Result<Vec<_>>>()?;
    DiscretizedPath::with_timestamps(states, angles)
}

/// Per-axis Rayleigh ranges of a (possibly astigmatic) Gaussian beam.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBeamParams {
    rayleigh_ranges: Vec<f64>,
    wavelength: f64,
}

impl GaussianBeamParams {
    pub fn new(rayleigh_ranges: Vec<f64>, wavelength: f64) -> Result<Self> {
        if rayleigh_ranges.is_empty() || rayleigh_ranges.len() > 2 {
            return Err(Error::config(
                "dims",
                format!("{} transverse dimensions, expected 1 or 2", rayleigh_ranges.len()),
            ));
        }
        if rayleigh_ranges.iter().any(|z| !(z.is_finite() && *z > 0.0)) {
            return Err(Error::config("rayleigh_range", "must be positive and finite"));
        }
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::config("wavelength", "must be positive and finite"));
        }
        Ok(Self {
            rayleigh_ranges,
            wavelength,
        })
    }

    /// Round beam with `dims` equal Rayleigh ranges.
    pub fn symmetric(dims: usize, rayleigh_range: f64, wavelength: f64) -> Result<Self> {
        Self::new(vec![rayleigh_range; dims], wavelength)
    }

    pub fn rayleigh_ranges(&self) -> &[f64] {
        &self.rayleigh_ranges
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Waist radius w₀ = √(λ·z_R/π) along each axis.
    pub fn waists(&self) -> Vec<f64> {
        self.rayleigh_ranges
            .iter()
            .map(|z_r| (self.wavelength * z_r / PI).sqrt())
            .collect()
    }
}

/// Σ_d ½·arctan(z / z_R[d]).
pub fn gouy_phase(z: f64, beam: &GaussianBeamParams) -> f64 {
    beam.rayleigh_ranges
        .iter()
        .map(|z_r| 0.5 * (z / z_r).atan())
        .sum()
}

/// Gouy phase accumulated from −∞ to +∞, estimated from evaluations at |z| = `z_max` and
/// 2·`z_max` by Richardson extrapolation in 1/z. The leading tail ∝ z_R/z cancels, leaving an
/// error of about z_R³/(4·z_max³) per axis.
pub fn gouy_asymptotic_total(beam: &GaussianBeamParams, z_max: f64) -> Result<f64> {
    if !(z_max.is_finite() && z_max > 0.0) {
        return Err(Error::config("z_max", "must be positive and finite"));
    }
    let span = |z: f64| gouy_phase(z, beam) - gouy_phase(-z, beam);
    Ok(2.0 * span(2.0 * z_max) - span(z_max))
}

/// Wavefront radius of curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curvature {
    /// Plane wavefront at the focus.
    Flat,
    Radius(f64),
}

impl Curvature {
    /// 1/R, zero for a flat wavefront.
    pub fn inverse(self) -> f64 {
        match self {
            Curvature::Flat => 0.0,
            Curvature::Radius(r) => 1.0 / r,
        }
    }
}

/// R(z) = z·(1 + (z_R/z)²); negative before the focus, positive after.
pub fn radius_of_curvature(z: f64, rayleigh_range: f64) -> Result<Curvature> {
    if !(rayleigh_range.is_finite() && rayleigh_range > 0.0) {
        return Err(Error::config("rayleigh_range", "must be positive and finite"));
    }
    if z == 0.0 {
        return Ok(Curvature::Flat);
    }
    Ok(Curvature::Radius(z * (1.0 + (rayleigh_range / z).powi(2))))
}

/// Uniform transverse grid on [−half_width, half_width), `points` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGrid {
    pub half_width: f64,
    pub points: usize,
}

impl ModeGrid {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn coordinates(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points)
            .map(|i| -self.half_width + h * i as f64)
            .collect()
    }
}

/// Fundamental 1-D Gaussian modes sampled along the beam axis.
#[derive(Debug, Clone)]
pub struct ModeSequence {
    path: DiscretizedPath,
    z: Vec<f64>,
    grid: ModeGrid,
    wavenumber: f64,
}

/// Samples the normalized transverse profile
/// u(x; z) ∝ w(z)^{−½}·exp(−x²/w(z)² − i·k·x²/(2R(z)))
/// of a 1-D Gaussian beam at each `z_samples` position, with rectangle-rule weights so that
/// Euclidean inner products approximate ∫ conj(u)·v dx. The on-axis amplitude is real and
/// positive, i.e. the profile carries no Gouy factor of its own.
pub fn gaussian_mode_path(
    grid: ModeGrid,
    z_samples: &[f64],
    rayleigh_range: f64,
    wavelength: f64,
) -> Result<ModeSequence> {
    let beam = GaussianBeamParams::new(vec![rayleigh_range], wavelength)?;
    if grid.points < 64 {
        return Err(Error::config("grid_points", format!("{} < 64", grid.points)));
    }
    if z_samples.len() < 2 {
        return Err(Error::PathTooShort(z_samples.len()));
    }
    if z_samples.iter().any(|z| !z.is_finite()) {
        return Err(Error::NonFinite("z_samples"));
    }
    if let Some(k) = z_samples.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonMonotoneTimestamps(k + 1));
    }

    let waist = beam.waists()[0];
    let wavenumber = 2.0 * PI / wavelength;
    let beam_radius = |z: f64| waist * (1.0 + (z / rayleigh_range).powi(2)).sqrt();
    let widest = z_samples
        .iter()
        .map(|&z| beam_radius(z))
        .fold(0.0, f64::max);
    if grid.half_width.is_nan() || grid.half_width < 6.0 * widest {
        return Err(Error::config(
            "grid_half_width",
            format!("{} is below 6 beam radii ({})", grid.half_width, 6.0 * widest),
        ));
    }

    let xs = grid.coordinates();
    let weight = grid.spacing().sqrt();
    let mut states = Vec::with_capacity(z_samples.len());
    for &z in z_samples {
        let w = beam_radius(z);
        let inv_r = radius_of_curvature(z, rayleigh_range)?.inverse();
        let amplitude = (2.0 / PI).powf(0.25) / w.sqrt() * weight;
        let profile: Vec<Complex64> = xs
            .iter()
            .map(|&x| {
                let exponent = Complex64::new(-x * x / (w * w), -0.5 * wavenumber * x * x * inv_r);
                amplitude * exponent.exp()
            })
            .collect();
        let norm = profile.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::GridTooCoarse((norm - 1.0).abs()));
        }
        states.push(StateVector::new(profile)?);
    }

    Ok(ModeSequence {
        path: DiscretizedPath::with_timestamps(states, z_samples.to_vec())?,
        z: z_samples.to_vec(),
        grid,
        wavenumber,
    })
}

impl ModeSequence {
    pub fn path(&self) -> &DiscretizedPath {
        &self.path
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn grid(&self) -> ModeGrid {
        self.grid
    }

    /// Pancharatnam phase of the profile sequence itself.
    pub fn pancharatnam_trace(&self) -> Result<PhaseTrace> {
        cumulative_pancharatnam(&self.path)
    }

    /// Gouy phase relative to the first sample, in radians.
    ///
    /// Each step adds the Pancharatnam phase −arg⟨u_j|u_{j+1}⟩ and removes the free-propagation
    /// phase −arg⟨u_j|P(Δz)|u_j⟩, where P(Δz) = exp(i·p²·Δz/2k) is the paraxial propagator
    /// applied in the spatial-frequency domain. What is left is the phase the propagated field
    /// carries relative to the profile with a real on-axis amplitude.
    pub fn gouy_trace(&self) -> Result<Vec<f64>> {
        let n = self.grid.points;
        let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(n);
        let h = self.grid.spacing();
        let frequencies: Vec<f64> = (0..n)
            .map(|i| {
                let signed = if i < n.div_ceil(2) { i as f64 } else { i as f64 - n as f64 };
                2.0 * PI * signed / (n as f64 * h)
            })
            .collect();

        let trace = self.pancharatnam_trace()?;
        let increments = trace.increments();
        let mut gouy = Vec::with_capacity(self.z.len());
        gouy.push(0.0);
        let mut running = 0.0;
        for (j, state) in self.path.states().iter().enumerate().take(self.z.len() - 1) {
            let dz = self.z[j + 1] - self.z[j];
            let mut spectrum = state.components().to_vec();
            fft.process(&mut spectrum);
            let propagated: Complex64 = spectrum
                .iter()
                .zip(&frequencies)
                .map(|(a, &p)| a.norm_sqr() * Complex64::from_polar(1.0, p * p * dz / (2.0 * self.wavenumber)))
                .sum();
            running += increments[j] + propagated.arg();
            gouy.push(running);
        }
        Ok(gouy)
    }
}
