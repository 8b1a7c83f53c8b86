//! Pancharatnam phases along discretized paths in projective Hilbert space.
//!
//! Sign convention throughout: the geometric phase of an overlap product P is φ = −arg P, so a
//! counter-clockwise spin-½ loop enclosing solid angle Ω on the Bloch sphere gives −Ω/2.
//!
//! Two traces are available for an open path ψ₀ … ψ_{N−1}:
//!
//! - [`cumulative_pancharatnam`] accumulates the step phases −arg⟨ψⱼ|ψⱼ₊₁⟩ (parallel transport
//!   by the Pancharatnam connection).
//! - [`projection_phase_trace`] follows −arg⟨ψ₀|ψₖ⟩, the phase of each state measured against
//!   the initial one. When the path passes through a state orthogonal to ψ₀ this projection
//!   passes near the origin of the complex plane and the phase flips by ±π; the sign is set by
//!   which side of the origin the projection passes. [`detect_pi_jump`] finds those flips.
//!
//! Both traces are unwrapped by summing principal-value increments without re-wrapping.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{fubini_study_distance, geodesic_interpolate, overlap, StateVector};
use crate::ORTHOGONALITY_CUTOFF;

/// Ordered samples of a trajectory of rays, optionally parameterized by timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedPath {
    states: Vec<StateVector>,
    timestamps: Option<Vec<f64>>,
}

impl DiscretizedPath {
    pub fn new(states: Vec<StateVector>) -> Result<Self> {
        Self::from_parts(states, None)
    }

    pub fn with_timestamps(states: Vec<StateVector>, timestamps: Vec<f64>) -> Result<Self> {
        Self::from_parts(states, Some(timestamps))
    }

    pub fn from_parts(states: Vec<StateVector>, timestamps: Option<Vec<f64>>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::PathTooShort(states.len()));
        }
        let dim = states[0].dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        if let Some(ts) = &timestamps {
            if ts.len() != states.len() {
                return Err(Error::LengthMismatch {
                    expected: states.len(),
                    found: ts.len(),
                });
            }
            if ts.iter().any(|t| !t.is_finite()) {
                return Err(Error::NonFinite("timestamps"));
            }
            if let Some(k) = ts.windows(2).position(|w| w[1] <= w[0]) {
                return Err(Error::NonMonotoneTimestamps(k + 1));
            }
        }
        Ok(Self { states, timestamps })
    }

    /// Closed geodesic polygon through `vertices`, each edge sampled with `points_per_edge`
    /// points (the edge's start vertex included, its end vertex left to the next edge).
    pub fn geodesic_polygon(vertices: &[StateVector], points_per_edge: usize) -> Result<Self> {
        if points_per_edge == 0 {
            return Err(Error::config("points_per_edge", "must be at least 1"));
        }
        let n = vertices.len();
        let mut states = Vec::with_capacity(n * points_per_edge);
        for (i, a) in vertices.iter().enumerate() {
            let b = &vertices[(i + 1) % n];
            states.push(a.clone());
            for k in 1..points_per_edge {
                states.push(geodesic_interpolate(a, b, k as f64 / points_per_edge as f64)?);
            }
        }
        Self::new(states)
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    /// Same loop started at point `shift`. Timestamps are dropped.
    pub fn rotated(&self, shift: usize) -> Self {
        let mut states = self.states.clone();
        states.rotate_left(shift % self.states.len());
        Self {
            states,
            timestamps: None,
        }
    }
}

/// Unwrapped phase along a path together with the overlap magnitude governing each step.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrace {
    /// N values, radians, first entry 0.
    pub cumulative_phase: Vec<f64>,
    /// N−1 values in [0, 1].
    pub step_overlap_magnitude: Vec<f64>,
    /// Whether the last state lies on the same ray as the first.
    pub closed: bool,
}

impl PhaseTrace {
    pub fn len(&self) -> usize {
        self.cumulative_phase.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative_phase.is_empty()
    }

    pub fn final_phase(&self) -> f64 {
        *self.cumulative_phase.last().unwrap_or(&0.0)
    }

    /// Single-step phase increments (N−1 values).
    pub fn increments(&self) -> Vec<f64> {
        self.cumulative_phase.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Writes `index,cumulative_phase_rad,step_overlap_magnitude`. Row 0 has no step and
    /// leaves the magnitude empty; row k carries the magnitude of step k−1 → k.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "index,cumulative_phase_rad,step_overlap_magnitude")?;
        for (k, phase) in self.cumulative_phase.iter().enumerate() {
            let magnitude = match k {
                0 => String::new(),
                _ => format_g12(self.step_overlap_magnitude[k - 1]),
            };
            writeln!(out, "{k},{},{magnitude}", format_g12(*phase))?;
        }
        Ok(())
    }
}

/// Formats with 12 significant digits, `%.12g` style.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("exponent");
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exponent)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A detected ±π flip of the phase at a near-orthogonal crossing.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpReport {
    /// Step with the smallest overlap magnitude in the crossing.
    pub index: usize,
    /// Net phase change across the crossing, radians.
    pub magnitude: f64,
    pub sign: i8,
    pub min_overlap: f64,
    /// First and last step (inclusive) summed into `magnitude`.
    pub window: (usize, usize),
}

/// Thresholds for [`detect_pi_jump`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpThresholds {
    /// Minimum |net phase change| of a crossing, radians.
    pub jump: f64,
    /// The overlap magnitude must dip below this somewhere in the crossing.
    pub dip: f64,
    /// A crossing extends over the contiguous steps whose overlap magnitude stays below this.
    pub window: f64,
}

impl Default for JumpThresholds {
    fn default() -> Self {
        Self {
            jump: 0.75 * PI,
            dip: 0.1,
            window: FRAC_1_SQRT_2,
        }
    }
}

/// Maps an angle in [−π, π] onto (−π, π].
fn principal(angle: f64) -> f64 {
    if angle <= -PI {
        angle + 2.0 * PI
    } else {
        angle
    }
}

/// arg⟨a|b⟩ in (−π, π].
pub fn pairwise_phase(a: &StateVector, b: &StateVector) -> Result<f64> {
    let ov = overlap(a, b)?;
    let magnitude = ov.norm();
    if magnitude <= ORTHOGONALITY_CUTOFF {
        return Err(Error::OrthogonalStates(magnitude));
    }
    Ok(ov.arg())
}

fn checked_step(a: &StateVector, b: &StateVector, index: usize) -> Result<Complex64> {
    let ov = a.overlap_unchecked(b);
    let magnitude = ov.norm();
    if magnitude <= ORTHOGONALITY_CUTOFF {
        return Err(Error::OrthogonalStep { index, magnitude });
    }
    Ok(ov)
}

fn same_ray(a: &StateVector, b: &StateVector) -> bool {
    a.overlap_unchecked(b).norm() >= 1.0 - ORTHOGONALITY_CUTOFF
}

/// cumulative_phase[k] = −Σ_{j<k} arg⟨ψⱼ|ψⱼ₊₁⟩.
pub fn cumulative_pancharatnam(path: &DiscretizedPath) -> Result<PhaseTrace> {
    let states = path.states();
    let mut cumulative_phase = Vec::with_capacity(states.len());
    let mut step_overlap_magnitude = Vec::with_capacity(states.len() - 1);
    cumulative_phase.push(0.0);
    let mut running = 0.0;
    for (j, pair) in states.windows(2).enumerate() {
        let ov = checked_step(&pair[0], &pair[1], j)?;
        running -= ov.arg();
        cumulative_phase.push(running);
        step_overlap_magnitude.push(ov.norm().min(1.0));
    }
    Ok(PhaseTrace {
        cumulative_phase,
        step_overlap_magnitude,
        closed: same_ray(&states[0], &states[states.len() - 1]),
    })
}

/// cumulative_phase[k] = −arg⟨ψ₀|ψₖ⟩, unwrapped along the path.
///
/// Step k−1 → k is weighted by min(|⟨ψ₀|ψₖ₋₁⟩|, |⟨ψ₀|ψₖ⟩|), the closest approach to the
/// orthogonal complement of ψ₀ across that step. An `OrthogonalStep` error names the step
/// arriving at a state orthogonal to ψ₀.
pub fn projection_phase_trace(path: &DiscretizedPath) -> Result<PhaseTrace> {
    let states = path.states();
    let reference = &states[0];
    let mut cumulative_phase = Vec::with_capacity(states.len());
    let mut step_overlap_magnitude = Vec::with_capacity(states.len() - 1);
    cumulative_phase.push(0.0);

    let mut previous = Complex64::new(1.0, 0.0);
    let mut running = 0.0;
    for (k, state) in states.iter().enumerate().skip(1) {
        let projection = checked_step(reference, state, k - 1)?;
        running -= (projection * previous.conj()).arg();
        cumulative_phase.push(running);
        step_overlap_magnitude.push(projection.norm().min(previous.norm()).min(1.0));
        previous = projection;
    }
    Ok(PhaseTrace {
        cumulative_phase,
        step_overlap_magnitude,
        closed: same_ray(reference, &states[states.len() - 1]),
    })
}

/// −arg[⟨ψ₀|ψ₁⟩⋯⟨ψ_{N−2}|ψ_{N−1}⟩⟨ψ_{N−1}|ψ₀⟩], the gauge-invariant phase of the closed loop.
pub fn closed_loop_phase(path: &DiscretizedPath) -> Result<f64> {
    let states = path.states();
    let n = states.len();
    let mut product = Complex64::new(1.0, 0.0);
    for j in 0..n {
        product *= checked_step(&states[j], &states[(j + 1) % n], j)?;
        // only magnitude is lost; the argument is untouched
        let magnitude = product.norm();
        if magnitude < 1e-200 {
            product /= magnitude;
        }
    }
    Ok(principal(-product.arg()))
}

/// Δ₃ = ⟨a|b⟩⟨b|c⟩⟨c|a⟩.
pub fn bargmann_invariant(a: &StateVector, b: &StateVector, c: &StateVector) -> Result<Complex64> {
    Ok(overlap(a, b)? * overlap(b, c)? * overlap(c, a)?)
}

/// Fubini–Study distance per unit parameter between consecutive samples.
pub fn fs_speed(path: &DiscretizedPath) -> Result<Vec<f64>> {
    let ts = path.timestamps().ok_or(Error::MissingTimestamps)?;
    path.states()
        .windows(2)
        .zip(ts.windows(2))
        .enumerate()
        .map(|(j, (s, t))| {
            let dt = t[1] - t[0];
            if dt <= 0.0 {
                return Err(Error::NonMonotoneTimestamps(j + 1));
            }
            Ok(fubini_study_distance(&s[0], &s[1])? / dt)
        })
        .collect()
}

/// Reports every crossing whose overlap magnitude dips below `thresholds.dip` and whose net
/// phase change, summed over the surrounding run of steps below `thresholds.window`, exceeds
/// `thresholds.jump` in magnitude.
pub fn detect_pi_jump(trace: &PhaseTrace, thresholds: &JumpThresholds) -> Vec<JumpReport> {
    let increments = trace.increments();
    let magnitudes = &trace.step_overlap_magnitude;
    let window_level = thresholds.window.max(thresholds.dip);
    let mut reports = Vec::new();

    let mut j = 0;
    while j < magnitudes.len() {
        if magnitudes[j] >= thresholds.dip {
            j += 1;
            continue;
        }
        let mut lo = j;
        while lo > 0 && magnitudes[lo - 1] < window_level {
            lo -= 1;
        }
        let mut hi = j;
        while hi + 1 < magnitudes.len() && magnitudes[hi + 1] < window_level {
            hi += 1;
        }

        let magnitude: f64 = increments[lo..=hi].iter().sum();
        let (index, min_overlap) = magnitudes[lo..=hi]
            .iter()
            .enumerate()
            .fold((lo, f64::INFINITY), |best, (i, &m)| {
                if m < best.1 {
                    (lo + i, m)
                } else {
                    best
                }
            });
        if magnitude.abs() > thresholds.jump {
            reports.push(JumpReport {
                index,
                magnitude,
                sign: if magnitude > 0.0 { 1 } else { -1 },
                min_overlap,
                window: (lo, hi),
            });
        }
        j = hi + 1;
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{apply_gauge, GaugePhases};
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spin(theta: f64, phi: f64) -> StateVector {
        StateVector::new(vec![
            c((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ])
        .unwrap()
    }

    fn octant() -> [StateVector; 3] {
        [
            StateVector::basis(2, 0).unwrap(),
            StateVector::from_real(&[1.0, 1.0]).unwrap(),
            StateVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap(),
        ]
    }

    #[test]
    fn pairwise_phase_examples() {
        let a = StateVector::new(vec![c(0.3, 0.1), c(-0.2, 0.5)]).unwrap();
        assert_eq!(pairwise_phase(&a, &a).unwrap(), 0.0);
        assert!((pairwise_phase(&a, &a.with_phase(FRAC_PI_3)).unwrap() - FRAC_PI_3).abs() < 1e-15);
        let up = StateVector::basis(2, 0).unwrap();
        let right = StateVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(pairwise_phase(&up, &right).unwrap(), 0.0);
        let down = StateVector::basis(2, 1).unwrap();
        assert!(matches!(pairwise_phase(&up, &down), Err(Error::OrthogonalStates(_))));
    }

    #[test]
    fn cumulative_examples() {
        let a = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let path = DiscretizedPath::new(vec![a.clone(); 5]).unwrap();
        let trace = cumulative_pancharatnam(&path).unwrap();
        assert!(trace.cumulative_phase.iter().all(|&p| p == 0.0));
        assert!(trace.closed);

        let thetas = [0.4, 1.1, 2.9, 4.0, 2.2];
        let path =
            DiscretizedPath::new(thetas.iter().map(|&t| a.with_phase(t)).collect()).unwrap();
        let trace = cumulative_pancharatnam(&path).unwrap();
        for (k, &t) in thetas.iter().enumerate() {
            assert!((trace.cumulative_phase[k] + (t - thetas[0])).abs() < 1e-14);
        }

        // <psi0|psi1> = (1+i)/2
        let psi0 = StateVector::basis(2, 0).unwrap();
        let psi1 = StateVector::new(vec![c(0.5, 0.5), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        assert!((psi0.overlap(&psi1).unwrap() - c(0.5, 0.5)).norm() < 1e-15);
        let trace = cumulative_pancharatnam(&DiscretizedPath::new(vec![psi0, psi1]).unwrap()).unwrap();
        assert!((trace.final_phase() + FRAC_PI_4).abs() < 1e-15);
        assert!(!trace.closed);
    }

    #[test]
    fn unwrapping_does_not_rewrap() {
        // pure gauge winding by 0.9π per step walks past π without folding back
        let a = StateVector::basis(3, 1).unwrap();
        let states = (0..6).map(|k| a.with_phase(-0.9 * PI * k as f64)).collect();
        let trace = cumulative_pancharatnam(&DiscretizedPath::new(states).unwrap()).unwrap();
        assert!((trace.final_phase() - 4.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn cumulative_reports_first_orthogonal_step() {
        let up = StateVector::basis(2, 0).unwrap();
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let down = StateVector::basis(2, 1).unwrap();
        let path = DiscretizedPath::new(vec![plus, up.clone(), down, up]).unwrap();
        assert!(matches!(
            cumulative_pancharatnam(&path),
            Err(Error::OrthogonalStep { index: 1, .. })
        ));
    }

    #[test]
    fn projection_trace_matches_cumulative_examples() {
        let a = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let thetas = [0.4, 1.1, 2.9, 4.0, 2.2];
        let path =
            DiscretizedPath::new(thetas.iter().map(|&t| a.with_phase(t)).collect()).unwrap();
        let trace = projection_phase_trace(&path).unwrap();
        for (k, &t) in thetas.iter().enumerate() {
            assert!((trace.cumulative_phase[k] + (t - thetas[0])).abs() < 1e-14);
        }
        assert!(trace.step_overlap_magnitude.iter().all(|&m| (m - 1.0).abs() < 1e-15));
    }

    #[test]
    fn projection_trace_flips_through_orthogonal_state() {
        // real path through the orthogonal state, regularized by a small imaginary admixture
        for (eps, sign) in [(1e-3, 1.0), (-1e-3, -1.0)] {
            let states = (0..=400)
                .map(|k| {
                    let a = PI * k as f64 / 400.0;
                    StateVector::new(vec![
                        c(a.cos(), -eps * a.sin()),
                        c(a.sin(), eps * a.cos()),
                    ])
                    .unwrap()
                })
                .collect();
            let trace = projection_phase_trace(&DiscretizedPath::new(states).unwrap()).unwrap();
            // final state is -psi0 up to O(eps²): the unwrapped phase lands on ±π
            assert!((trace.final_phase() - sign * PI).abs() < 1e-12);
            let min = trace.step_overlap_magnitude.iter().cloned().fold(1.0, f64::min);
            assert!((min - 2.0 * eps.abs() / (1.0 + eps * eps)).abs() < 1e-12);
        }
    }

    #[test]
    fn octant_loop_and_bargmann() {
        let [z, x, y] = octant();
        let loop_phase =
            closed_loop_phase(&DiscretizedPath::new(vec![z.clone(), x.clone(), y.clone()]).unwrap())
                .unwrap();
        assert!((loop_phase + FRAC_PI_4).abs() < 1e-15);

        let delta = bargmann_invariant(&z, &x, &y).unwrap();
        assert!((delta - c(0.25, 0.25)).norm() < 1e-15);
        assert_eq!(-delta.arg(), loop_phase);
    }

    #[test]
    fn bargmann_examples() {
        let a = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let b = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let d = bargmann_invariant(&a, &a, &b).unwrap();
        assert!((d.re - a.overlap(&b).unwrap().norm_sqr()).abs() < 1e-15);
        assert!(d.im.abs() < 1e-15);

        let e = |i| StateVector::basis(3, i).unwrap();
        assert_eq!(bargmann_invariant(&e(0), &e(1), &e(2)).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            bargmann_invariant(&a, &a, &e(0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn two_point_loop_is_zero() {
        let a = StateVector::new(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.1, -0.1)]).unwrap();
        let b = StateVector::new(vec![c(0.1, 0.7), c(0.2, 0.0), c(-0.4, 0.3)]).unwrap();
        let phase = closed_loop_phase(&DiscretizedPath::new(vec![a, b]).unwrap()).unwrap();
        assert_eq!(phase, 0.0);
    }

    #[test]
    fn closed_loop_phase_gauge_and_cyclic_invariance() {
        let [z, x, y] = octant();
        let path = DiscretizedPath::geodesic_polygon(&[z, x, y], 7).unwrap();
        let reference = closed_loop_phase(&path).unwrap();
        let phases = (0..path.len()).map(|k| (k as f64 * 1.7).sin() * 5.0).collect();
        let gauged = apply_gauge(&path, &GaugePhases::new(phases).unwrap()).unwrap();
        assert!((closed_loop_phase(&gauged).unwrap() - reference).abs() < 1e-12);
        for shift in 0..path.len() {
            assert!((closed_loop_phase(&path.rotated(shift)).unwrap() - reference).abs() < 1e-12);
        }
    }

    #[test]
    fn latitude_loop_converges_quadratically() {
        // cap at polar angle π/3 encloses Ω = π; sampled loop is a geodesic polygon inside it
        let theta = FRAC_PI_3;
        let expected = -PI * (1.0 - theta.cos());
        let mut errors = Vec::new();
        for n in [16, 32, 64, 128, 256] {
            let states = (0..n)
                .map(|k| spin(theta, 2.0 * PI * k as f64 / n as f64))
                .collect();
            let phase = closed_loop_phase(&DiscretizedPath::new(states).unwrap()).unwrap();
            errors.push((phase - expected).abs());
        }
        for w in errors.windows(2) {
            assert!(w[1] <= 0.5 * w[0], "{errors:?}");
        }
        assert!(errors[4] < 1e-4);
    }

    #[test]
    fn fs_speed_examples() {
        let a = StateVector::basis(2, 0).unwrap();
        let constant =
            DiscretizedPath::with_timestamps(vec![a.clone(); 4], vec![0.0, 1.0, 2.0, 4.0]).unwrap();
        assert_eq!(fs_speed(&constant).unwrap(), vec![0.0; 3]);

        let b = StateVector::new(vec![c(0.2, 0.3), c(0.5, -0.6)]).unwrap();
        let states: Vec<_> =
            (0..=10).map(|k| geodesic_interpolate(&a, &b, k as f64 / 10.0).unwrap()).collect();
        let ts: Vec<f64> = (0..=10).map(|k| k as f64 * 0.5).collect();
        let speeds = fs_speed(&DiscretizedPath::with_timestamps(states.clone(), ts.clone()).unwrap()).unwrap();
        let expected = fubini_study_distance(&a, &b).unwrap() / 5.0;
        assert!(speeds.iter().all(|s| (s - expected).abs() < 1e-10));

        let doubled: Vec<f64> = ts.iter().map(|t| 2.0 * t).collect();
        let slow = fs_speed(&DiscretizedPath::with_timestamps(states.clone(), doubled).unwrap()).unwrap();
        for (s, h) in speeds.iter().zip(&slow) {
            assert!((h - 0.5 * s).abs() < 1e-15);
        }

        assert_eq!(
            fs_speed(&DiscretizedPath::new(states).unwrap()),
            Err(Error::MissingTimestamps)
        );
    }

    #[test]
    fn path_validation() {
        let a = StateVector::basis(2, 0).unwrap();
        assert_eq!(DiscretizedPath::new(vec![a.clone()]), Err(Error::PathTooShort(1)));
        assert_eq!(
            DiscretizedPath::with_timestamps(vec![a.clone(), a.clone()], vec![1.0, 1.0]),
            Err(Error::NonMonotoneTimestamps(1))
        );
        assert!(matches!(
            DiscretizedPath::new(vec![a.clone(), StateVector::basis(3, 0).unwrap()]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            DiscretizedPath::with_timestamps(vec![a.clone(), a], vec![0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn no_jump_along_short_geodesic() {
        let a = StateVector::basis(2, 0).unwrap();
        let b = StateVector::new(vec![c(0.9, 0.1), c(0.3, 0.3)]).unwrap();
        let states = (0..=50).map(|k| geodesic_interpolate(&a, &b, k as f64 / 50.0).unwrap()).collect();
        let path = DiscretizedPath::new(states).unwrap();
        let t = JumpThresholds::default();
        assert!(detect_pi_jump(&cumulative_pancharatnam(&path).unwrap(), &t).is_empty());
        assert!(detect_pi_jump(&projection_phase_trace(&path).unwrap(), &t).is_empty());
    }

    #[test]
    fn detects_synthetic_flip() {
        let trace = PhaseTrace {
            cumulative_phase: vec![0.0, 0.01, 0.02, 3.1, 3.11, 3.12],
            step_overlap_magnitude: vec![0.99, 0.9, 0.02, 0.9, 0.99],
            closed: false,
        };
        let reports = detect_pi_jump(&trace, &JumpThresholds::default());
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].index, 2);
        assert_eq!(reports[0].sign, 1);
        assert_eq!(reports[0].window, (2, 2));
        assert!((reports[0].magnitude - 3.08).abs() < 1e-12);

        // large increment without an overlap dip is a sampling artifact, not a crossing
        let coarse = PhaseTrace {
            step_overlap_magnitude: vec![0.99, 0.9, 0.5, 0.9, 0.99],
            ..trace.clone()
        };
        assert!(detect_pi_jump(&coarse, &JumpThresholds::default()).is_empty());
        // a dip without a large phase change is not a flip either
        let flat = PhaseTrace {
            cumulative_phase: vec![0.0; 6],
            ..trace
        };
        assert!(detect_pi_jump(&flat, &JumpThresholds::default()).is_empty());
    }

    #[test]
    fn g12_format() {
        assert_eq!(format_g12(0.0), "0");
        assert_eq!(format_g12(PI), "3.14159265359");
        assert_eq!(format_g12(-0.5), "-0.5");
        assert_eq!(format_g12(1.5e-7), "1.5e-7");
        assert_eq!(format_g12(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_g12(1e-5), "0.00001");
        for x in [PI, -1.0 / 3.0, 2.5e-9, 7.0e13, 0.4539643118898] {
            let back: f64 = format_g12(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11);
        }
    }
}
