use clap::{Parser, Subcommand};
use kac_cli::commands::{self, Outcome};
use kac_cli::config::{parse_dim, Format, Job, JobConfig};
use kac_cli::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact counting polynomials for quiver representations with nilpotent
/// cyclic relations.
#[derive(Parser)]
#[command(name = "kacq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print A, I and M for every dimension vector up to the bound.
    Compute {
        #[arg(long)]
        config: PathBuf,
        /// Per-vertex bound, e.g. `3,3`; overrides the config.
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the internal consistency checks and print a JSON report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        bound: Option<String>,
    },
    /// Compare against brute-force counts over small finite fields.
    Oracle {
        #[arg(long)]
        config: PathBuf,
        /// Field sizes, e.g. `2,3,4`; overrides the config.
        #[arg(long)]
        fields: Option<String>,
        #[arg(long)]
        bound: Option<String>,
    },
}

fn load(config: &PathBuf, bound: &Option<String>) -> Result<(JobConfig, Job), CliError> {
    let cfg = JobConfig::load(config)?;
    let bound = bound.as_deref().map(parse_dim).transpose()?;
    let job = Job::resolve(&cfg, bound.as_ref())?;
    Ok((cfg, job))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Compute { config, bound, format, cache } => {
            let (_, mut job) = load(&config, &bound)?;
            if let Some(f) = format {
                job.format = f;
            }
            if cache.is_some() {
                job.cache = cache;
            }
            commands::compute(&job)
        }
        Command::Verify { config, bound } => commands::verify(&load(&config, &bound)?.1),
        Command::Oracle { config, fields, bound } => {
            let (_, mut job) = load(&config, &bound)?;
            if let Some(f) = fields {
                job.fields = parse_dim(&f)?.components().to_vec();
            }
            commands::oracle(&job)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            for m in &outcome.messages {
                eprintln!("{m}");
            }
            print!("{}", outcome.output);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: one or more checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
