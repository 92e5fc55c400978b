use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use eigenbound::experiments::{list_experiments, run, ExperimentConfig};

/// Run an eigenvalue-bound experiment suite and write CSV plus a JSON summary.
#[derive(Parser, Debug)]
#[command(name = "eigenbound", version)]
struct Cli {
    /// Experiment name, or `list` to print the available suites.
    experiment: String,
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated ε values, sorted descending.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.experiment == "list" {
        print!("{}", list_experiments());
        return ExitCode::SUCCESS;
    }
    let mut config = match &cli.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("eigenbound: {e}");
                return ExitCode::from(1);
            }
        },
        None => ExperimentConfig::default(),
    };
    config.experiment = cli.experiment.clone();
    if cli.eps.is_some() {
        config.eps_list = cli.eps.clone();
    }
    if cli.q.is_some() {
        config.q = cli.q;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    match run(&config, cli.out.as_deref()) {
        Ok(outcome) => {
            println!("{}", outcome.csv_path.display());
            println!("{}", outcome.summary_path.display());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("eigenbound: {e}");
            ExitCode::from(1)
        }
    }
}
