//! `coarse-cover`: runs one computation from a JSON config and writes a
//! deterministic JSON report plus CSV side files.

mod commands;
mod config;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Loaded, Overrides};
use error::CliError;
use report::Output;

#[derive(Debug, Parser)]
#[command(
    name = "coarse-cover",
    version,
    about = "Coarse geometry of covered spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every sampled estimate.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for the report and CSV side files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Element budget for ball enumeration.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Numerical tolerance for refinement checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Ball growth of a group or a nerve, with a classification.
    Growth,
    /// Four-point hyperbolicity constant over growing balls.
    Delta,
    /// Word or chain distances between given points.
    Dist,
    /// Nerve summary, edges, growth and ends.
    Nerve,
    /// Decomposition, Besov, modulation or Iwasawa norms.
    Norm,
    /// Quasi-isometry obstructions between spaces.
    Obstruct,
    /// Fit quasi-isometry constants to a sampled map.
    QiFit,
    /// Check an embedding construction on sample functions.
    EmbedCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Growth => "growth",
            Command::Delta => "delta",
            Command::Dist => "dist",
            Command::Nerve => "nerve",
            Command::Norm => "norm",
            Command::Obstruct => "obstruct",
            Command::QiFit => "qi-fit",
            Command::EmbedCheck => "embed-check",
        }
    }

    fn run(self, l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
        match self {
            Command::Growth => commands::growth(l, o),
            Command::Delta => commands::delta(l, o),
            Command::Dist => commands::dist(l, o),
            Command::Nerve => commands::nerve(l, o),
            Command::Norm => commands::norm(l, o),
            Command::Obstruct => commands::obstruct(l, o),
            Command::QiFit => commands::qi_fit(l, o),
            Command::EmbedCheck => commands::embed_check(l, o),
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("--config is required"))?;
    let loaded = config::load(path)?;
    let overrides = Overrides {
        seed: cli.seed,
        budget: cli.budget,
        tol: cli.tol,
    };
    let digest = report::inputs_digest(&loaded.digest_inputs, &overrides);
    let out = cli.out.clone().or_else(|| loaded.config.out.clone());
    let name = cli.command.name();
    match cli.command.run(&loaded, &overrides) {
        Ok(output) => report::emit(name, digest, "ok", output, out.as_deref()),
        Err(CliError::Resource { message, partial }) => {
            let output = Output {
                results: serde_json::json!({ "partial": partial }),
                warnings: vec![message.clone()],
                tables: Vec::new(),
            };
            let text = report::emit(name, digest, "resource_limit", output, out.as_deref())?;
            print_report(&text);
            Err(CliError::Resource {
                message,
                partial: None,
            })
        }
        Err(e) => Err(e),
    }
}

/// A closed pipe downstream is not an error of the run.
fn print_report(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print_report(&text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
