//! Experiment configuration files.
//!
//! A config is a flat TOML file with four sections; every key is optional
//! except `experiment.kind`. Unknown keys are rejected.
//!
//! ```toml
//! [experiment]
//! kind = "coverage"        # range-gain | coverage | min-density | discovery | cells
//! seed = 1
//! trials = 100000
//!
//! [radio]
//! frequency_ghz = 28.0
//! pathloss_exponent = 3.0
//!
//! [sweep]
//! densities = [2e-6, 1.6e-5]
//! modes = ["omni", "semi", "fully"]
//! beamwidths_deg = [20.0]
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use mmw_core::cells::{UtilityKind, DEFAULT_SIDELOBE_GAIN};
use mmw_core::model::{Mode, RadioParams};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    RangeGain,
    Coverage,
    MinDensity,
    Discovery,
    Cells,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::RangeGain => "range-gain",
            Kind::Coverage => "coverage",
            Kind::MinDensity => "min-density",
            Kind::Discovery => "discovery",
            Kind::Cells => "cells",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub kind: Kind,
    /// Output file stem; defaults to the kind.
    pub name: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u64,
    pub out_dir: Option<String>,
}

fn default_trials() -> u64 {
    10_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadioSection {
    pub frequency_ghz: f64,
    pub tx_power_dbm: f64,
    pub noise_power_dbm: f64,
    pub snr_threshold_db: f64,
    pub pathloss_exponent: f64,
    /// Defaults to 0 for the analytic kinds and to 0.01 for `cells`.
    pub sidelobe_gain: Option<f64>,
}

impl Default for RadioSection {
    fn default() -> Self {
        Self {
            frequency_ghz: 28.0,
            tx_power_dbm: 30.0,
            noise_power_dbm: -127.0,
            snr_threshold_db: 0.0,
            pathloss_exponent: 3.0,
            sidelobe_gain: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    /// LoS BS densities per m².
    pub densities: Vec<f64>,
    pub modes: Vec<String>,
    pub beamwidths_deg: Vec<f64>,
    /// Path-loss exponents; defaults to the radio one.
    pub alphas: Option<Vec<f64>>,
    /// Antenna gains for `range-gain`.
    pub gains_db: Vec<f64>,
    /// Coverage levels for `min-density`.
    pub levels: Vec<f64>,
    /// Target discovery probability for `discovery`.
    pub probability: f64,
    /// RF chains per BS for `cells`.
    pub rf_chains: Vec<usize>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            densities: vec![1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5, 1e-4],
            modes: vec!["omni".into(), "semi".into(), "fully".into()],
            beamwidths_deg: vec![20.0],
            alphas: None,
            gains_db: vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
            levels: vec![0.9, 0.99, 0.999],
            probability: 0.99,
            rf_chains: vec![3, 6, 12],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CellsSection {
    pub base_stations: usize,
    pub ues: usize,
    /// Number of random topologies; topology `k` uses seed `seed + k`.
    pub topologies: u64,
    pub area_side_m: f64,
    pub bs_min_beamwidth_deg: f64,
    pub ue_min_beamwidth_deg: f64,
    pub utility: String,
    pub min_rate: f64,
    pub restarts: usize,
    pub kicks: usize,
    pub max_iterations: usize,
}

impl Default for CellsSection {
    fn default() -> Self {
        Self {
            base_stations: 2,
            ues: 30,
            topologies: 10,
            area_side_m: 1000.0,
            bs_min_beamwidth_deg: 5.0,
            ue_min_beamwidth_deg: 10.0,
            utility: "logsum".into(),
            min_rate: 0.0,
            restarts: 4,
            kicks: 8,
            max_iterations: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub radio: RadioSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub cells: CellsSection,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub out_dir: Option<String>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Apply overrides, fill in defaults that depend on the kind, and check
    /// everything that can be checked without running.
    pub fn resolve(mut self, overrides: &Overrides) -> CliResult<Self> {
        if let Some(s) = overrides.seed {
            self.experiment.seed = s;
        }
        if let Some(t) = overrides.trials {
            self.experiment.trials = t;
        }
        if let Some(o) = &overrides.out_dir {
            self.experiment.out_dir = Some(o.clone());
        }
        let kind = self.experiment.kind;
        self.experiment.name.get_or_insert_with(|| kind.as_str().to_string());
        self.experiment.out_dir.get_or_insert_with(|| ".".to_string());
        let eps = if kind == Kind::Cells { DEFAULT_SIDELOBE_GAIN } else { 0.0 };
        self.radio.sidelobe_gain.get_or_insert(eps);
        let alpha = self.radio.pathloss_exponent;
        self.sweep.alphas.get_or_insert_with(|| vec![alpha]);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> CliResult<()> {
        let bad = |key: &str, why: &str| Err(CliError::Config(format!("{key}: {why}")));
        let name = self.experiment.name.as_deref().unwrap_or_default();
        if name.is_empty() || name.contains(['/', '\\']) {
            return bad("experiment.name", "must be a plain file stem");
        }
        if self.experiment.trials == 0 && matches!(self.experiment.kind, Kind::Coverage | Kind::Discovery) {
            return bad("experiment.trials", "must be positive");
        }
        self.modes()?;
        let s = &self.sweep;
        let needs = |key: &str, empty: bool| if empty { bad(key, "must not be empty") } else { Ok(()) };
        match self.experiment.kind {
            Kind::RangeGain => needs("sweep.gains_db", s.gains_db.is_empty())?,
            Kind::Coverage | Kind::Discovery => {
                needs("sweep.densities", s.densities.is_empty())?;
                needs("sweep.modes", s.modes.is_empty())?;
                needs("sweep.beamwidths_deg", s.beamwidths_deg.is_empty())?;
            }
            Kind::MinDensity => {
                needs("sweep.levels", s.levels.is_empty())?;
                needs("sweep.modes", s.modes.is_empty())?;
                needs("sweep.beamwidths_deg", s.beamwidths_deg.is_empty())?;
            }
            Kind::Cells => {
                needs("sweep.rf_chains", s.rf_chains.is_empty())?;
                self.utility()?;
                if s.rf_chains.contains(&0) {
                    return bad("sweep.rf_chains", "every entry must be at least 1");
                }
                let c = &self.cells;
                if c.base_stations == 0 || c.ues == 0 || c.topologies == 0 {
                    return bad("cells", "base_stations, ues and topologies must be positive");
                }
            }
        }
        needs("sweep.alphas", s.alphas.as_ref().is_none_or(|a| a.is_empty()))?;
        Ok(())
    }

    pub fn modes(&self) -> CliResult<Vec<Mode>> {
        self.sweep
            .modes
            .iter()
            .map(|m| Mode::from_str(m).map_err(|_| CliError::Config(format!("sweep.modes: unknown mode `{m}`"))))
            .collect()
    }

    pub fn utility(&self) -> CliResult<UtilityKind> {
        UtilityKind::from_str(&self.cells.utility)
            .map_err(|_| CliError::Config(format!("cells.utility: unknown utility `{}`", self.cells.utility)))
    }

    pub fn name(&self) -> &str {
        self.experiment.name.as_deref().unwrap_or(self.experiment.kind.as_str())
    }

    pub fn out_dir(&self) -> &str {
        self.experiment.out_dir.as_deref().unwrap_or(".")
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.sweep.alphas.clone().unwrap_or_else(|| vec![self.radio.pathloss_exponent])
    }

    /// Radio parameters with the path-loss exponent replaced by `alpha`.
    pub fn radio(&self, alpha: f64) -> mmw_core::Result<RadioParams<f64>> {
        let r = &self.radio;
        RadioParams::new(
            r.frequency_ghz * 1e9,
            r.tx_power_dbm,
            r.noise_power_dbm,
            r.snr_threshold_db,
            alpha,
            r.sidelobe_gain.unwrap_or(0.0),
        )
    }
}
