//! `motivic`: run zeta, cycle, gluing and localization jobs from JSON files.

mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use motivic_core::job::JobFile;
use motivic_core::{fixtures, MotiveError};

#[derive(Parser)]
#[command(name = "motivic", version, about = "Exact computations with monodromic motives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    machine_readable: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta function of a resolution, optionally expanded as a series.
    Zeta(JobArgs),
    /// Nearby cycle of a resolution.
    Nearby(JobArgs),
    /// Vanishing cycle, plus the Milnor fibre at `params.point` if given.
    Vanishing(JobArgs),
    /// Compare a resolution's zeta series with direct arc counts.
    ArcCheck(JobArgs),
    /// Thom–Sebastiani product of several vanishing cycles.
    Ts(JobArgs),
    /// Glue chart values over an oriented atlas.
    Glue(JobArgs),
    /// Sum a torus localization and compare with a direct value.
    Localize(JobArgs),
    /// Run the built-in invariant checks and fixture regressions.
    Selftest,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "input")]
struct Input {
    /// Job file.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Name of a bundled fixture.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args)]
struct JobArgs {
    #[command(flatten)]
    input: Input,
    /// Number of series coefficients; overrides `params.series_order`.
    #[arg(long)]
    series_order: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Motive(MotiveError),
    /// The job parsed but carries the wrong payload or lacks parameters.
    Usage(String),
    /// A comparison ran to completion and found a mismatch; output already printed.
    CheckFailed,
}

impl From<MotiveError> for CliError {
    fn from(e: MotiveError) -> Self {
        CliError::Motive(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::CheckFailed => 1,
            CliError::Motive(MotiveError::MissingRestriction { .. }) => 3,
            CliError::Motive(MotiveError::UnsupportedShape(_)) => 4,
            CliError::Motive(MotiveError::DescentFailure { .. }) => 5,
            CliError::Motive(_) | CliError::Usage(_) => 2,
        }
    }

    fn report(&self) {
        match self {
            CliError::Io { path, source } => eprintln!("error: {}: {source}", path.display()),
            CliError::Motive(MotiveError::ValidationFailed(diags)) => {
                eprintln!("error: resolution data failed validation");
                for d in diags {
                    eprintln!("  - {d}");
                }
            }
            CliError::Motive(e) => eprintln!("error: {e}"),
            CliError::Usage(m) => eprintln!("error: {m}"),
            CliError::CheckFailed => {}
        }
    }
}

fn load(input: &Input) -> Result<JobFile, CliError> {
    match (&input.job, &input.fixture) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(JobFile::parse(&text)?)
        }
        (None, Some(name)) => Ok(fixtures::load(name)?),
        (None, None) => Err(CliError::Usage("one of --job or --fixture is required".into())),
    }
}

fn run(cli: &Cli) -> Result<commands::Output, CliError> {
    let with_job = |args: &JobArgs, f: fn(&JobFile, Option<usize>) -> Result<commands::Output, CliError>| {
        let job = load(&args.input)?;
        f(&job, args.series_order)
    };
    match &cli.command {
        Command::Zeta(a) => with_job(a, commands::zeta),
        Command::Nearby(a) => with_job(a, commands::nearby),
        Command::Vanishing(a) => with_job(a, commands::vanishing),
        Command::ArcCheck(a) => with_job(a, commands::arc_check),
        Command::Ts(a) => with_job(a, commands::ts),
        Command::Glue(a) => with_job(a, commands::glue),
        Command::Localize(a) => with_job(a, commands::localize),
        Command::Selftest => Ok(selftest::run()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.machine_readable {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.machine).expect("JSON values serialize")
                );
            } else {
                print!("{}", out.text);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(CliError::CheckFailed.exit_code())
            }
        }
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}
