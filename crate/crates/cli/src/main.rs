use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

use sampsmooth::{listing, load_config, run_config, ExitCode, Overrides};

#[derive(Parser)]
#[command(
    name = "sampsmooth",
    version,
    about = "Convergence-rate experiments for sampling operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suite described by a JSON config.
    Run {
        config: PathBuf,
        /// Output directory (overrides `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the random zoo member and Kadec grids.
        #[arg(long)]
        seed: Option<u64>,
        /// Dyadic ladder `lo:hi`, e.g. `8:256`.
        #[arg(long)]
        ladder: Option<String>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Describe the available suites and their parameters.
    ListSuites,
}

fn main() {
    let cli = Cli::parse();
    let Some(Command::Run {
        config,
        out,
        seed,
        ladder,
        jobs,
    }) = cli.command
    else {
        print!("{}", listing());
        return;
    };
    if let Some(n) = jobs {
        if n == 0 || rayon_pool(n).is_err() {
            eprintln!("config error in `--jobs`: need a positive thread count");
            process::exit(ExitCode::ConfigError as i32);
        }
    }
    let overrides = Overrides { out, seed, ladder };
    let result = load_config(&config, &overrides).and_then(|cfg| run_config(&cfg));
    match result {
        Ok(report) => {
            print!("{}", report.summary);
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            process::exit(report.exit_code() as i32);
        }
        Err(err) => {
            eprintln!("{err}");
            if matches!(&err, sampsmooth::RunError::Config(c) if c.field == "suite") {
                eprintln!("\n{}", listing());
            }
            process::exit(err.exit_code() as i32);
        }
    }
}

fn rayon_pool(n: usize) -> Result<(), rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()
}
