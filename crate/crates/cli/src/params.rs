//! Subcommand parameters. Each struct doubles as a clap argument group and as the
//! `parameters` object of a JSON run config, so flags and config files share one schema.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use geophase::supercon::{Junction, RingCircuit};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    /// −arg of consecutive overlaps
    Connection,
    /// −arg of the overlap with the first state
    Projection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct TraceParams {
    /// JSON path file: `{"states": [...], "timestamps": [...]}` or a bare array of states
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = TraceKind::Connection)]
    #[serde(default = "default_kind")]
    pub kind: TraceKind,
    /// Multiply each state by a seeded random phase before tracing
    #[arg(long)]
    #[serde(default)]
    pub random_gauge: bool,
}

fn default_kind() -> TraceKind {
    TraceKind::Connection
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct PolarizationParams {
    #[arg(long, default_value_t = 1e-3, allow_hyphen_values = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 2001)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta_start: f64,
    #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
    pub theta_end: f64,
}

impl Default for PolarizationParams {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            steps: 2001,
            theta_start: 0.0,
            theta_end: PI,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct GouyParams {
    /// Number of transverse dimensions (1 or 2)
    #[arg(long, default_value_t = 2)]
    pub dims: usize,
    #[arg(long, num_args = 2, value_names = ["START", "END"], allow_hyphen_values = true,
          default_values_t = [-1000.0, 1000.0])]
    pub z_over_zr: Vec<f64>,
    #[arg(long, default_value_t = 2001)]
    pub samples: usize,
}

impl Default for GouyParams {
    fn default() -> Self {
        Self {
            dims: 2,
            z_over_zr: vec![-1000.0, 1000.0],
            samples: 2001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct ModeGouyParams {
    #[arg(long, num_args = 2, value_names = ["START", "END"], allow_hyphen_values = true,
          default_values_t = [-10.0, 10.0])]
    pub z_over_zr: Vec<f64>,
    #[arg(long, default_value_t = 401)]
    pub samples: usize,
    #[arg(long, default_value_t = 1024)]
    pub grid_points: usize,
    /// Grid half-width in waist units; defaults to six times the widest beam radius
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_half_width_w0: Option<f64>,
}

impl Default for ModeGouyParams {
    fn default() -> Self {
        Self {
            z_over_zr: vec![-10.0, 10.0],
            samples: 401,
            grid_points: 1024,
            grid_half_width_w0: None,
        }
    }
}

/// A ring given by file path on the command line, or inline in a run config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSource {
    Inline(RingCircuit),
    Path(PathBuf),
}

impl FromStr for RingSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(RingSource::Path(PathBuf::from(s)))
    }
}

/// Declares a parameter struct holding a ring description: either `--ring FILE` or
/// junction counts plus loop parameters. The fields are spelled out per struct (rather
/// than flattened) so unknown keys in a run config are still rejected.
macro_rules! ring_params {
    ($(#[$meta:meta])* $name:ident { $($(#[$fmeta:meta])* $field:ident : $ty:ty = $default:expr),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
        #[serde(deny_unknown_fields, default)]
        pub struct $name {
            /// Ring description JSON file (exclusive with the junction/loop flags)
            #[arg(long)]
            #[serde(skip_serializing_if = "Option::is_none")]
            pub ring: Option<RingSource>,
            #[arg(long)]
            #[serde(skip_serializing_if = "Option::is_none")]
            pub pi_junctions: Option<usize>,
            #[arg(long)]
            #[serde(skip_serializing_if = "Option::is_none")]
            pub zero_junctions: Option<usize>,
            #[arg(long, allow_hyphen_values = true)]
            #[serde(skip_serializing_if = "Option::is_none")]
            pub beta_l: Option<f64>,
            #[arg(long, allow_hyphen_values = true)]
            #[serde(skip_serializing_if = "Option::is_none")]
            pub flux_phi0: Option<f64>,
            $($(#[$fmeta])* pub $field: $ty,)*
        }

        impl Default for $name {
            fn default() -> Self {
                Self {
                    ring: None,
                    pi_junctions: None,
                    zero_junctions: None,
                    beta_l: None,
                    flux_phi0: None,
                    $($field: $default,)*
                }
            }
        }

        impl $name {
            /// Reads or assembles the ring; afterwards only the inline form remains.
            pub fn resolve_ring(&mut self, default_beta: f64) -> Result<RingCircuit, CliError> {
                let ring = match self.ring.take() {
                    Some(source) => {
                        let conflicts = [
                            ("pi_junctions", self.pi_junctions.is_some()),
                            ("zero_junctions", self.zero_junctions.is_some()),
                            ("beta_l", self.beta_l.is_some()),
                            ("flux_phi0", self.flux_phi0.is_some()),
                        ];
                        if let Some((key, _)) = conflicts.iter().find(|(_, set)| *set) {
                            return Err(CliError::config(*key, "cannot be combined with `ring`"));
                        }
                        load_ring(source)?
                    }
                    None => {
                        let mut junctions = vec![Junction::pi(); self.pi_junctions.take().unwrap_or(1)];
                        junctions.extend(vec![
                            Junction::conventional();
                            self.zero_junctions.take().unwrap_or(0)
                        ]);
                        RingCircuit {
                            junctions,
                            beta_l: self.beta_l.take().unwrap_or(default_beta),
                            external_flux: self.flux_phi0.take().unwrap_or(0.0),
                        }
                    }
                };
                ring.validate()?;
                self.ring = Some(RingSource::Inline(ring.clone()));
                Ok(ring)
            }
        }
    };
}

fn load_ring(source: RingSource) -> Result<RingCircuit, CliError> {
    match source {
        RingSource::Inline(ring) => Ok(ring),
        RingSource::Path(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::config("ring", format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::config("ring", e.to_string()))
        }
    }
}

ring_params!(RingFluxParams {
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    n_min: i64 = -1,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    n_max: i64 = 1,
});

ring_params!(RingEnergyParams {});

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct BetaSweepParams {
    /// Screening parameters of the π-ring, each above 1
    #[arg(long, num_args = 1.., default_values_t = [2.0, 5.0, 10.0, 50.0, 100.0],
          allow_negative_numbers = true)]
    pub beta_l: Vec<f64>,
}

impl Default for BetaSweepParams {
    fn default() -> Self {
        Self {
            beta_l: vec![2.0, 5.0, 10.0, 50.0, 100.0],
        }
    }
}
