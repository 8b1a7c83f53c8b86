use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use geophase::hilbert::apply_gauge;
use geophase::optics::{
    gaussian_mode_path, gouy_asymptotic_total, gouy_phase, polarization_sweep_path,
    GaussianBeamParams, ModeGrid, PolarizationSweep,
};
use geophase::pancharatnam::{
    closed_loop_phase, cumulative_pancharatnam, detect_pi_jump, format_g12,
    projection_phase_trace,
};
use geophase::supercon::{
    fluxoid_states, half_flux_limit, minimize_ring_energy, screening_energy, RingCircuit,
};
use geophase::{DiscretizedPath, GaugePhases, JumpReport, JumpThresholds, PhaseTrace, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::Artifact;
use crate::params::*;

/// On-disk form of a run: what `run --config` reads and what every run echoes as
/// `config.json` (with all defaults filled in).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(default = "empty_object")]
    pub parameters: Value,
    pub output_path: PathBuf,
    #[serde(default)]
    pub seed: u64,
}

fn empty_object() -> Value {
    json!({})
}

#[derive(Debug, Clone)]
pub enum Params {
    Trace(TraceParams),
    Polarization(PolarizationParams),
    Gouy(GouyParams),
    ModeGouy(ModeGouyParams),
    RingFlux(RingFluxParams),
    RingEnergy(RingEnergyParams),
    BetaSweep(BetaSweepParams),
}

/// Validated inputs, ready to compute.
enum Job {
    Trace {
        path: DiscretizedPath,
        kind: TraceKind,
        random_gauge: bool,
    },
    Polarization(PolarizationSweep),
    Gouy {
        beam: GaussianBeamParams,
        z: Vec<f64>,
    },
    ModeGouy {
        grid: ModeGrid,
        z: Vec<f64>,
    },
    RingFlux {
        ring: RingCircuit,
        n_min: i64,
        n_max: i64,
    },
    RingEnergy(RingCircuit),
    BetaSweep(Vec<f64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PathFile {
    Object {
        states: Vec<StateVector>,
        #[serde(default)]
        timestamps: Option<Vec<f64>>,
    },
    Bare(Vec<StateVector>),
}

impl Params {
    pub fn subcommand(&self) -> &'static str {
        match self {
            Params::Trace(_) => "trace",
            Params::Polarization(_) => "polarization",
            Params::Gouy(_) => "gouy",
            Params::ModeGouy(_) => "mode-gouy",
            Params::RingFlux(_) => "ring-flux",
            Params::RingEnergy(_) => "ring-energy",
            Params::BetaSweep(_) => "beta-sweep",
        }
    }

    pub fn from_json(subcommand: &str, parameters: Value) -> Result<Self, CliError> {
        fn parse<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
            serde_json::from_value(v).map_err(|e| CliError::config("parameters", e.to_string()))
        }
        Ok(match subcommand {
            "trace" => Params::Trace(parse(parameters)?),
            "polarization" => Params::Polarization(parse(parameters)?),
            "gouy" => Params::Gouy(parse(parameters)?),
            "mode-gouy" => Params::ModeGouy(parse(parameters)?),
            "ring-flux" => Params::RingFlux(parse(parameters)?),
            "ring-energy" => Params::RingEnergy(parse(parameters)?),
            "beta-sweep" => Params::BetaSweep(parse(parameters)?),
            other => return Err(CliError::config("subcommand", format!("unknown subcommand `{other}`"))),
        })
    }

    fn to_json(&self) -> Value {
        let value = match self {
            Params::Trace(p) => serde_json::to_value(p),
            Params::Polarization(p) => serde_json::to_value(p),
            Params::Gouy(p) => serde_json::to_value(p),
            Params::ModeGouy(p) => serde_json::to_value(p),
            Params::RingFlux(p) => serde_json::to_value(p),
            Params::RingEnergy(p) => serde_json::to_value(p),
            Params::BetaSweep(p) => serde_json::to_value(p),
        };
        value.expect("parameters serialize to JSON")
    }

    /// Checks every parameter and fills in derived defaults. Nothing expensive runs here.
    fn resolve(&mut self) -> Result<Job, CliError> {
        match self {
            Params::Trace(p) => {
                let text = std::fs::read_to_string(&p.input)
                    .map_err(|e| CliError::config("input", format!("{}: {e}", p.input.display())))?;
                let parsed: PathFile = serde_json::from_str(&text).map_err(|e| {
                    CliError::config("input", format!("not a list of states or a path object: {e}"))
                })?;
                let (states, timestamps) = match parsed {
                    PathFile::Object { states, timestamps } => (states, timestamps),
                    PathFile::Bare(states) => (states, None),
                };
                let path = DiscretizedPath::from_parts(states, timestamps)
                    .map_err(|e| CliError::config("input", e.to_string()))?;
                Ok(Job::Trace {
                    path,
                    kind: p.kind,
                    random_gauge: p.random_gauge,
                })
            }
            Params::Polarization(p) => {
                let sweep = PolarizationSweep {
                    ellipticity: p.epsilon,
                    theta_start: p.theta_start,
                    theta_end: p.theta_end,
                    steps: p.steps,
                };
                sweep.validate()?;
                Ok(Job::Polarization(sweep))
            }
            Params::Gouy(p) => {
                if !(1..=2).contains(&p.dims) {
                    return Err(CliError::config("dims", format!("{} is not 1 or 2", p.dims)));
                }
                let (start, end) = z_range(&p.z_over_zr)?;
                let samples = check_samples(p.samples)?;
                let beam = GaussianBeamParams::symmetric(p.dims, 1.0, 1.0)?;
                Ok(Job::Gouy {
                    beam,
                    z: linspace(start, end, samples),
                })
            }
            Params::ModeGouy(p) => {
                let (start, end) = z_range(&p.z_over_zr)?;
                let samples = check_samples(p.samples)?;
                if p.grid_points < 64 {
                    return Err(CliError::config("grid_points", format!("{} < 64", p.grid_points)));
                }
                let widest = (1.0 + start.abs().max(end.abs()).powi(2)).sqrt();
                let half_width = *p.grid_half_width_w0.get_or_insert(6.0 * widest);
                if !(half_width.is_finite() && half_width >= 6.0 * widest) {
                    return Err(CliError::config(
                        "grid_half_width_w0",
                        format!("{half_width} is below six beam radii ({})", 6.0 * widest),
                    ));
                }
                Ok(Job::ModeGouy {
                    grid: ModeGrid {
                        half_width,
                        points: p.grid_points,
                    },
                    z: linspace(start, end, samples),
                })
            }
            Params::RingFlux(p) => {
                let ring = p.resolve_ring(1.0)?;
                if p.n_min > p.n_max {
                    return Err(CliError::config(
                        "n_min",
                        format!("{} exceeds n_max = {}", p.n_min, p.n_max),
                    ));
                }
                Ok(Job::RingFlux {
                    ring,
                    n_min: p.n_min,
                    n_max: p.n_max,
                })
            }
            Params::RingEnergy(p) => {
                let ring = p.resolve_ring(10.0)?;
                if ring.junctions.len() != 1 {
                    return Err(CliError::config(
                        "ring",
                        format!(
                            "the energy model needs exactly one junction (got {})",
                            ring.junctions.len()
                        ),
                    ));
                }
                Ok(Job::RingEnergy(ring))
            }
            Params::BetaSweep(p) => {
                if p.beta_l.is_empty() {
                    return Err(CliError::config("beta_l", "needs at least one value"));
                }
                if let Some(bad) = p.beta_l.iter().find(|b| !(b.is_finite() && **b > 1.0)) {
                    return Err(CliError::config("beta_l", format!("{bad} must exceed 1")));
                }
                Ok(Job::BetaSweep(p.beta_l.clone()))
            }
        }
    }
}

fn z_range(z: &[f64]) -> Result<(f64, f64), CliError> {
    match z {
        [start, end] if start.is_finite() && end.is_finite() && start < end => Ok((*start, *end)),
        _ => Err(CliError::config(
            "z_over_zr",
            format!("expected two finite increasing values, got {z:?}"),
        )),
    }
}

fn check_samples(samples: usize) -> Result<usize, CliError> {
    if samples < 2 {
        return Err(CliError::config("samples", format!("{samples} < 2")));
    }
    Ok(samples)
}

fn linspace(start: f64, end: f64, samples: usize) -> Vec<f64> {
    let last = (samples - 1) as f64;
    (0..samples)
        .map(|k| match k {
            0 => start,
            k if k == samples - 1 => end,
            k => start + (end - start) * k as f64 / last,
        })
        .collect()
}

/// Validates, computes every artifact in memory, and only then returns them together with
/// the sidecar, so a failure never leaves partial output behind.
pub fn execute(mut params: Params, output_path: &Path, seed: u64) -> Result<Vec<Artifact>, CliError> {
    let job = params.resolve()?;
    let mut artifacts = compute(job, seed)?;

    let echo = RunConfig {
        subcommand: params.subcommand().to_string(),
        parameters: params.to_json(),
        output_path: output_path.to_path_buf(),
        seed,
    };
    // serde_json's default map is ordered, so keys come out sorted
    let value = serde_json::to_value(&echo).expect("run config serializes");
    let mut sidecar = serde_json::to_string_pretty(&value).expect("JSON value serializes");
    sidecar.push('\n');
    artifacts.push(Artifact::new("config.json", sidecar));
    Ok(artifacts)
}

fn compute(job: Job, seed: u64) -> Result<Vec<Artifact>, CliError> {
    let thresholds = JumpThresholds::default();
    Ok(match job {
        Job::Trace {
            path,
            kind,
            random_gauge,
        } => {
            let path = if random_gauge {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let phases = (0..path.len()).map(|_| rng.gen_range(-PI..PI)).collect();
                apply_gauge(&path, &GaugePhases::new(phases)?)?
            } else {
                path
            };
            let trace = match kind {
                TraceKind::Connection => cumulative_pancharatnam(&path)?,
                TraceKind::Projection => projection_phase_trace(&path)?,
            };
            let jumps = detect_pi_jump(&trace, &thresholds);
            let summary = json!({
                "closed": trace.closed,
                "closed_loop_phase_rad": closed_loop_phase(&path).ok(),
                "final_phase_rad": trace.final_phase(),
                "jump_count": jumps.len(),
            });
            vec![
                trace_artifact(&trace),
                jumps_artifact(&jumps),
                json_artifact("summary.json", &summary),
            ]
        }
        Job::Polarization(sweep) => {
            let trace = projection_phase_trace(&polarization_sweep_path(&sweep)?)?;
            let jumps = detect_pi_jump(&trace, &thresholds);
            vec![trace_artifact(&trace), jumps_artifact(&jumps)]
        }
        Job::Gouy { beam, z } => {
            let phases: Vec<f64> = z.iter().map(|&z| gouy_phase(z, &beam)).collect();
            let z_max = z[0].abs().max(z[z.len() - 1].abs());
            let summary = json!({
                "asymptotic_total_rad": gouy_asymptotic_total(&beam, z_max)?,
                "endpoint_difference_rad": phases[phases.len() - 1] - phases[0],
                "z_max_over_zr": z_max,
            });
            let mut csv = String::from("index,z_over_zr,gouy_phase_rad\n");
            for (k, (z, phase)) in z.iter().zip(&phases).enumerate() {
                let _ = writeln!(csv, "{k},{},{}", format_g12(*z), format_g12(*phase));
            }
            vec![
                Artifact::new("gouy.csv", csv),
                json_artifact("summary.json", &summary),
            ]
        }
        Job::ModeGouy { grid, z } => {
            // normalized units: z_R = 1 and w0 = 1 force λ = π
            let modes = gaussian_mode_path(grid, &z, 1.0, PI)?;
            let raw = modes.pancharatnam_trace()?;
            let gouy = modes.gouy_trace()?;
            let mut csv = String::from("index,z_over_zr,gouy_phase_rad,reference_rad\n");
            for (k, (z_k, phase)) in z.iter().zip(&gouy).enumerate() {
                let reference = 0.5 * (z_k.atan() - z[0].atan());
                let _ = writeln!(
                    csv,
                    "{k},{},{},{}",
                    format_g12(*z_k),
                    format_g12(*phase),
                    format_g12(reference)
                );
            }
            vec![trace_artifact(&raw), Artifact::new("gouy.csv", csv)]
        }
        Job::RingFlux { ring, n_min, n_max } => {
            let set = fluxoid_states(&ring, n_min, n_max);
            let mut csv = String::from("n_or_branch,flux_phi0,energy\n");
            for (n, flux) in &set.states {
                let energy = screening_energy(&ring, *flux);
                let _ = writeln!(csv, "{n},{},{}", format_g12(*flux), format_g12(energy));
            }
            vec![Artifact::new("flux.csv", csv)]
        }
        Job::RingEnergy(ring) => {
            let minima = minimize_ring_energy(&ring)?;
            let mut csv = String::from("n_or_branch,flux_phi0,energy\n");
            for (branch, m) in minima.iter().enumerate() {
                let _ = writeln!(csv, "{branch},{},{}", format_g12(m.flux), format_g12(m.energy));
            }
            vec![Artifact::new("minima.csv", csv)]
        }
        Job::BetaSweep(betas) => {
            let fluxes = half_flux_limit(&betas)?;
            let mut csv = String::from("beta_l,flux_phi0\n");
            for (beta, flux) in betas.iter().zip(&fluxes) {
                let _ = writeln!(csv, "{},{}", format_g12(*beta), format_g12(*flux));
            }
            vec![Artifact::new("sweep.csv", csv)]
        }
    })
}

fn trace_artifact(trace: &PhaseTrace) -> Artifact {
    let mut bytes = Vec::new();
    trace.write_csv(&mut bytes).expect("writing to memory");
    Artifact::new("trace.csv", bytes)
}

fn jumps_artifact(jumps: &[JumpReport]) -> Artifact {
    let mut csv = String::from("index,magnitude_rad,sign,min_overlap,window_start,window_end\n");
    for j in jumps {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            j.index,
            format_g12(j.magnitude),
            j.sign,
            format_g12(j.min_overlap),
            j.window.0,
            j.window.1
        );
    }
    Artifact::new("jumps.csv", csv)
}

fn json_artifact(name: &'static str, value: &Value) -> Artifact {
    let mut text = serde_json::to_string_pretty(value).expect("JSON value serializes");
    text.push('\n');
    Artifact::new(name, text)
}
