//! Experiment configuration for `simulate`.

use std::path::PathBuf;

use fjqn::scalability::Thresholds;
use fjqn::sim::SimulationConfig;
use fjqn::{Error, FamilyKind, FamilySpec, Result, ServiceDistribution};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// A single JSON document describing one throughput-curve run.
///
/// ```json
/// {
///   "schema_version": 1,
///   "family": {"kind": "lattice", "d": 2},
///   "indices": [4, 8, 16, 32],
///   "buffer_size": 2,
///   "distribution": {"kind": "pareto", "alpha": 2.0},
///   "simulation": {"m_max": 40000, "warmup": 10000, "replications": 16, "seed": 2024},
///   "output": {"csv": "lattice.csv", "summary": "lattice.json"},
///   "thresholds": {"plateau_ratio": 0.75}
/// }
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub family: FamilyKind,
    pub indices: Vec<u32>,
    #[serde(default = "one")]
    pub buffer_size: u32,
    pub distribution: ServiceDistribution,
    /// Defaults to `SimulationConfig::for_buffer(buffer_size, 0)`.
    #[serde(default)]
    pub simulation: Option<SimulationConfig>,
    #[serde(default)]
    pub output: OutputPaths,
    #[serde(default)]
    pub thresholds: Thresholds,
    /// Samples for the percolation upper bound; 0 skips it.
    #[serde(default)]
    pub bound_samples: u32,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn one() -> u32 {
    1
}

impl ExperimentConfig {
    pub fn simulation(&self) -> SimulationConfig {
        self.simulation.unwrap_or_else(|| SimulationConfig::for_buffer(self.buffer_size, 0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.indices.is_empty() {
            return Err(Error::InvalidParameter("indices must not be empty".into()));
        }
        for &i in &self.indices {
            FamilySpec::new(self.family, i).with_buffer(self.buffer_size).validate()?;
        }
        self.distribution.validate()?;
        self.simulation().validate()?;
        if self.bound_samples != 0 && self.bound_samples < 100 {
            return Err(Error::InvalidParameter("bound_samples must be 0 or at least 100".into()));
        }
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}
