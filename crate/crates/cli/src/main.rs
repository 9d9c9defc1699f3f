use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qent::{run_experiment, write_tables, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "qent", about = "Entanglement-temperature and information experiments on free-fermion chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = one per core).
        #[arg(long, env = "QENT_THREADS")]
        threads: Option<usize>,
        /// Also write SVG line plots next to the CSV files.
        #[arg(long)]
        plots: bool,
    },
    /// Check a config file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the tool version.
    Version,
}

fn run(config_path: &Path, out: Option<PathBuf>, threads: Option<usize>, plots: bool) -> Result<(), CliError> {
    let config = ExperimentConfig::from_file(config_path)?;
    let base_dir = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let out_dir = out
        .or_else(|| config.output_dir.as_ref().map(|d| base_dir.join(d)))
        .unwrap_or_else(|| PathBuf::from("qent-out"));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;

    let start = Instant::now();
    let tables = pool.install(|| run_experiment(&config, &base_dir))?;
    let elapsed = start.elapsed().as_secs_f64();
    let written = write_tables(&tables, &out_dir, plots)?;

    let timing = out_dir.join(format!("{}.timing.json", config.experiment.name()));
    let record = serde_json::json!({
        "experiment": config.experiment.name(),
        "config_hash": config.hash(),
        "wall_time_s": elapsed,
        "threads": pool.current_num_threads(),
    });
    std::fs::write(&timing, format!("{record:#}\n")).map_err(|source| CliError::Io {
        path: timing.clone(),
        source,
    })?;
    for path in &written {
        println!("{}", path.display());
    }
    eprintln!("{} finished in {elapsed:.2} s", config.experiment.name());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            out,
            threads,
            plots,
        } => run(&config, out, threads, plots),
        Command::Validate { config } => ExperimentConfig::from_file(&config).map(|c| {
            println!("ok: {} (config hash {})", c.experiment.name(), c.hash());
        }),
        Command::Version => {
            println!("qent {}", qent::table::VERSION);
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
