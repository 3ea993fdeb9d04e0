use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mmw_cli::{run, CliError, ExperimentConfig, Overrides};

/// Worker thread count; unset means one per core.
const THREADS_ENV: &str = "MMW_THREADS";

#[derive(Parser)]
#[command(name = "mmw", version, about = "Run mmWave access experiments from a config file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its CSV and metadata.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("{THREADS_ENV}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run { config, seed, trials, out } = cli.command;
    let result = init_threads().and_then(|()| {
        let overrides = Overrides {
            seed,
            trials,
            out_dir: out.map(|p| p.to_string_lossy().into_owned()),
        };
        let cfg = ExperimentConfig::load(&config)?.resolve(&overrides)?;
        run::run(&cfg)
    });
    match result {
        Ok(out) => {
            eprintln!("wrote {} rows to {}", out.rows, out.csv.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mmw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
