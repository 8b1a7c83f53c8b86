//! Finite-dimensional complex state vectors and the geometry of their rays.
//!
//! A [`StateVector`] is a unit vector in ℂⁿ (n ≥ 2) standing for its ray. Overlaps follow the
//! physics convention ⟨a|b⟩ = Σ conj(aₖ)·bₖ. The Fubini–Study distance arccos|⟨a|b⟩| is the
//! natural metric on rays and geodesics are taken between phase-aligned representatives
//! (⟨a|b⟩ real positive), i.e. along the Pancharatnam horizontal lift.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pancharatnam::DiscretizedPath;
use crate::{NORM_TOLERANCE, ORTHOGONALITY_CUTOFF};

/// Unit vector representing a ray in projective Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    components: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `components` into a state. Near-unit inputs are rescaled, not rejected.
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        normalize(components)
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        normalize(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis vector `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if index >= dim {
            return Err(Error::config("index", format!("{index} out of range for dim {dim}")));
        }
        let mut components = vec![Complex64::new(0.0, 0.0); dim];
        components[index] = Complex64::new(1.0, 0.0);
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Complex64> {
        self.components
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.components)
    }

    /// Multiplies by the unit phase factor `exp(i·angle)`; the ray is unchanged.
    pub fn with_phase(&self, angle: f64) -> Self {
        let factor = Complex64::from_polar(1.0, angle);
        Self {
            components: self.components.iter().map(|c| c * factor).collect(),
        }
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        overlap(self, other)
    }

    pub(crate) fn overlap_unchecked(&self, other: &StateVector) -> Complex64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Builds a state from components already known to be normalized.
    pub(crate) fn from_unit_components(components: Vec<Complex64>) -> Self {
        debug_assert!((norm_of(&components) - 1.0).abs() < 1e-9);
        Self { components }
    }
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.components.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        let components = pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        StateVector::new(components).map_err(serde::de::Error::custom)
    }
}

/// One phase per path point, applied as `exp(i·phase)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePhases {
    phases: Vec<f64>,
}

impl GaugePhases {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("gauge phases"));
        }
        Ok(Self { phases })
    }

    pub fn identity(len: usize) -> Self {
        Self { phases: vec![0.0; len] }
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }
}

fn norm_of(components: &[Complex64]) -> f64 {
    components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Rescales `v` by a positive real so that it has unit norm.
pub fn normalize(v: Vec<Complex64>) -> Result<StateVector> {
    if v.len() < 2 {
        return Err(Error::DimensionTooSmall(v.len()));
    }
    if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("state components"));
    }
    let norm = norm_of(&v);
    if norm <= NORM_TOLERANCE {
        return Err(Error::ZeroVector(norm));
    }
    let components = v.into_iter().map(|c| c / norm).collect();
    Ok(StateVector { components })
}

fn check_dims(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// ⟨a|b⟩ = Σₖ conj(aₖ)·bₖ.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    check_dims(a, b)?;
    Ok(a.overlap_unchecked(b))
}

/// Fubini–Study distance arccos|⟨a|b⟩|, in [0, π/2].
///
/// Close rays use the chord between phase-aligned representatives, 2·asin(‖a − b̃‖/2),
/// which keeps full precision where arccos is ill-conditioned.
pub fn fubini_study_distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    let ov = overlap(a, b)?;
    let magnitude = ov.norm();
    if magnitude < 0.5 {
        return Ok(fs_distance_from_overlap(ov));
    }
    let align = (ov / magnitude).conj();
    let chord = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(x, y)| (y * align - x).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(2.0 * (0.5 * chord).min(1.0).asin())
}

pub(crate) fn fs_distance_from_overlap(ov: Complex64) -> f64 {
    ov.norm().clamp(0.0, 1.0).acos()
}

/// Point at fraction `t` of the Fubini–Study geodesic from `a` to the representative of `b`
/// whose overlap with `a` is real and positive.
pub fn geodesic_interpolate(a: &StateVector, b: &StateVector, t: f64) -> Result<StateVector> {
    let ov = overlap(a, b)?;
    let magnitude = ov.norm();
    if magnitude <= ORTHOGONALITY_CUTOFF {
        return Err(Error::OrthogonalEndpoints(magnitude));
    }
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::config("t", format!("{t} is outside [0, 1]")));
    }
    let align = (ov / magnitude).conj();
    let aligned: Vec<Complex64> = b.components.iter().map(|c| c * align).collect();

    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(StateVector::from_unit_components(aligned));
    }

    let theta = fubini_study_distance(a, b)?;
    if theta < 1e-15 {
        return Ok(a.clone());
    }
    let sin_theta = theta.sin();
    let wa = ((1.0 - t) * theta).sin() / sin_theta;
    let wb = (t * theta).sin() / sin_theta;
    let components = a
        .components
        .iter()
        .zip(&aligned)
        .map(|(x, y)| x * wa + y * wb)
        .collect();
    // renormalize to absorb rounding from the slerp weights
    normalize(components)
}

/// Multiplies point `k` of `path` by `exp(i·gauge[k])`.
pub fn apply_gauge(path: &DiscretizedPath, gauge: &GaugePhases) -> Result<DiscretizedPath> {
    if gauge.len() != path.len() {
        return Err(Error::LengthMismatch {
            expected: path.len(),
            found: gauge.len(),
        });
    }
    let states = path
        .states()
        .iter()
        .zip(gauge.phases())
        .map(|(s, &phase)| s.with_phase(phase))
        .collect();
    DiscretizedPath::from_parts(states, path.timestamps().map(<[f64]>::to_vec))
}
