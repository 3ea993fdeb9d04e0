//! Experiment drivers. Each kind turns a resolved config into a table whose
//! rows follow the nesting order of the sweep loops, so output never
//! depends on scheduling.

use std::fs;
use std::path::{Path, PathBuf};

use mmw_core::cells::{mode_sweep, SolverParams, Topology};
use mmw_core::discovery::DiscoveryModel;
use mmw_core::model::{max_range, range_gain, Mode};
use mmw_core::sim::{closed_form_coverage, mc_coverage, mc_discovery, min_density_for_coverage, SimConfig};
use mmw_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, Kind};
use crate::error::{CliError, CliResult};
use crate::format::fmt_g;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

/// Result of one experiment: the table plus per-row failures that did not
/// stop the sweep.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: Table,
    pub failures: Vec<String>,
}

/// (mode, beamwidth in degrees) pairs; omni appears once at 360°.
fn mode_beams(config: &ExperimentConfig) -> CliResult<Vec<(Mode, f64)>> {
    let mut out = Vec::new();
    for mode in config.modes()? {
        if mode == Mode::Omni {
            out.push((mode, 360.0));
        } else {
            out.extend(config.sweep.beamwidths_deg.iter().map(|&b| (mode, b)));
        }
    }
    Ok(out)
}

fn range_gain_table(config: &ExperimentConfig) -> CliResult<Report> {
    let mut t = Table::new(&["gain_db", "alpha", "range_gain"]);
    for alpha in config.alphas() {
        for &g in &config.sweep.gains_db {
            t.rows.push(vec![fmt_g(g), fmt_g(alpha), fmt_g(range_gain(g, alpha)?)]);
        }
    }
    Ok(Report { table: t, failures: Vec::new() })
}

fn coverage_table(config: &ExperimentConfig) -> CliResult<Report> {
    let mut t = Table::new(&[
        "density",
        "mode",
        "theta_deg",
        "alpha",
        "freq_ghz",
        "coverage_cf",
        "coverage_mc",
        "stderr",
        "trials",
    ]);
    let e = &config.experiment;
    for alpha in config.alphas() {
        let radio = config.radio(alpha)?;
        for (mode, theta_deg) in mode_beams(config)? {
            let d_max = max_range(&radio, mode, theta_deg.to_radians(), true)?;
            for &rho in &config.sweep.densities {
                let cf = closed_form_coverage(rho, d_max)?;
                let sim = SimConfig::new(radio.clone(), mode, theta_deg.to_radians(), rho)?
                    .with_trials(e.trials)
                    .with_seed(e.seed);
                let mc = mc_coverage(&sim)?;
                t.rows.push(vec![
                    fmt_g(rho),
                    mode.to_string(),
                    fmt_g(theta_deg),
                    fmt_g(alpha),
                    fmt_g(config.radio.frequency_ghz),
                    fmt_g(cf),
                    fmt_g(mc.probability),
                    fmt_g(mc.std_err),
                    mc.trials.to_string(),
                ]);
            }
        }
    }
    Ok(Report { table: t, failures: Vec::new() })
}

fn min_density_table(config: &ExperimentConfig) -> CliResult<Report> {
    let mut t = Table::new(&["level", "mode", "theta_deg", "alpha", "freq_ghz", "d_max_m", "min_density"]);
    for alpha in config.alphas() {
        let radio = config.radio(alpha)?;
        for (mode, theta_deg) in mode_beams(config)? {
            let d_max = max_range(&radio, mode, theta_deg.to_radians(), true)?;
            for &level in &config.sweep.levels {
                t.rows.push(vec![
                    fmt_g(level),
                    mode.to_string(),
                    fmt_g(theta_deg),
                    fmt_g(alpha),
                    fmt_g(config.radio.frequency_ghz),
                    fmt_g(d_max),
                    fmt_g(min_density_for_coverage(level, d_max)?),
                ]);
            }
        }
    }
    Ok(Report { table: t, failures: Vec::new() })
}

fn discovery_table(config: &ExperimentConfig) -> CliResult<Report> {
    let mu = config.sweep.probability;
    let mu_col = format!("min_epochs_p{}", fmt_g(mu));
    let mut t = Table::new(&[
        "density",
        "mode",
        "theta_deg",
        "alpha",
        "rho_eff",
        "mean_epochs_cf",
        "mean_epochs_mc",
        "stderr",
        &mu_col,
    ]);
    let e = &config.experiment;
    for alpha in config.alphas() {
        let radio = config.radio(alpha)?;
        for (mode, theta_deg) in mode_beams(config)? {
            for &rho in &config.sweep.densities {
                let model = DiscoveryModel::new(rho, &radio, mode, theta_deg.to_radians())?;
                let sim = SimConfig::new(radio.clone(), mode, theta_deg.to_radians(), rho)?
                    .with_trials(e.trials)
                    .with_seed(e.seed);
                let mc = mc_discovery(&sim)?;
                t.rows.push(vec![
                    fmt_g(rho),
                    mode.to_string(),
                    fmt_g(theta_deg),
                    fmt_g(alpha),
                    fmt_g(model.effective_density),
                    fmt_g(model.mean_epochs()?),
                    fmt_g(mc.mean),
                    fmt_g(mc.std_err),
                    model.min_epochs(mu)?.to_string(),
                ]);
            }
        }
    }
    Ok(Report { table: t, failures: Vec::new() })
}

fn cells_table(config: &ExperimentConfig) -> CliResult<Report> {
    let c = &config.cells;
    let radio = config.radio(config.radio.pathloss_exponent)?;
    let utility = config.utility()?;
    let base_seed = config.experiment.seed;

    let per_topology: Vec<CliResult<(Vec<Vec<String>>, Vec<String>)>> = (0..c.topologies)
        .into_par_iter()
        .map(|k| {
            let seed = base_seed.wrapping_add(k);
            let topo = Topology::random(seed, c.base_stations, c.ues, c.area_side_m)?;
            let problem = topo
                .to_problem(radio.clone(), Mode::Fully, 1)?
                .with_utility(utility)
                .with_min_beamwidths(c.bs_min_beamwidth_deg.to_radians(), c.ue_min_beamwidth_deg.to_radians())?
                .with_min_rates(vec![c.min_rate; c.ues])?;
            let params = SolverParams {
                restarts: c.restarts,
                kicks: c.kicks,
                seed,
                max_iterations: c.max_iterations,
            };
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            for cell in mode_sweep(&problem, &config.sweep.rf_chains, &params)? {
                let head = vec![seed.to_string(), cell.mode.to_string(), cell.rf_chains.to_string()];
                match cell.result {
                    Ok(s) => {
                        let m = s.metrics;
                        rows.push([head, vec![fmt_g(m.sum_rate), fmt_g(m.min_rate), fmt_g(m.jain_index)]].concat());
                    }
                    Err(err @ (Error::Infeasible { .. } | Error::InfeasibleRate { .. })) => {
                        failures.push(format!("seed {seed}, {} x{}: {err}", cell.mode, cell.rf_chains));
                        rows.push([head, vec!["nan".into(); 3]].concat());
                    }
                    Err(err) => return Err(err.into()),
                }
            }
            Ok((rows, failures))
        })
        .collect();

    let mut t = Table::new(&["seed", "mode", "rf_per_bs", "sum_rate", "min_rate", "jain"]);
    let mut failures = Vec::new();
    for r in per_topology {
        let (rows, f) = r?;
        t.rows.extend(rows);
        failures.extend(f);
    }
    Ok(Report { table: t, failures })
}

/// Compute the experiment's table without touching the filesystem.
pub fn compute(config: &ExperimentConfig) -> CliResult<Report> {
    match config.experiment.kind {
        Kind::RangeGain => range_gain_table(config),
        Kind::Coverage => coverage_table(config),
        Kind::MinDensity => min_density_table(config),
        Kind::Discovery => discovery_table(config),
        Kind::Cells => cells_table(config),
    }
}

#[derive(Serialize)]
struct Meta<'a> {
    toolkit: &'a str,
    version: &'a str,
    seed: u64,
    config: &'a ExperimentConfig,
}

/// Metadata sidecar: the resolved config plus toolkit version and seed.
pub fn metadata(config: &ExperimentConfig) -> String {
    let meta = Meta {
        toolkit: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        seed: config.experiment.seed,
        config,
    };
    toml::to_string(&meta).expect("config serializes")
}

#[derive(Debug, Clone)]
pub struct Outputs {
    pub csv: PathBuf,
    pub meta: PathBuf,
    pub rows: usize,
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Run a resolved config and write `<name>.csv` and `<name>.meta` into the
/// output directory. Rows for infeasible cells are still written; the
/// error is returned afterwards.
pub fn run(config: &ExperimentConfig) -> CliResult<Outputs> {
    let report = compute(config)?;
    let dir = Path::new(config.out_dir());
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let csv = dir.join(format!("{}.csv", config.name()));
    let meta = dir.join(format!("{}.meta", config.name()));
    write(&csv, &report.table.to_csv())?;
    write(&meta, &metadata(config))?;
    if !report.failures.is_empty() {
        return Err(CliError::InfeasibleCells(report.failures.join("\n")));
    }
    Ok(Outputs {
        csv,
        meta,
        rows: report.table.rows.len(),
    })
}
