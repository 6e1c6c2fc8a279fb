//! Command-line front end. `main_with_args` is the whole binary.

pub mod commands;
pub mod output;
pub mod scenario;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

use crate::error::{Error, Result};
use output::Table;
use scenario::{Scenario, Units};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hyperdecay", version, about = "Unstable-state kinematics on spacelike hyperplanes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Survival amplitude over a tau grid.
    Survival(CommonArgs),
    /// Closed-form, direct and approximate lifetimes over an s grid.
    Lifetime(CommonArgs),
    /// Velocity-eigenstate lifetimes and survival curves.
    Velocity(CommonArgs),
    /// Overlap of momentum eigenstates on two intersecting hyperplanes.
    Overlap(CommonArgs),
    /// Two-point residual over (s, dtau).
    Twopoint(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Survival(_) => "survival",
            Command::Lifetime(_) => "lifetime",
            Command::Velocity(_) => "velocity",
            Command::Overlap(_) => "overlap",
            Command::Twopoint(_) => "twopoint",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Survival(a)
            | Command::Lifetime(a)
            | Command::Velocity(a)
            | Command::Overlap(a)
            | Command::Twopoint(a) => a,
        }
    }
}

/// Builds the table for one invocation without writing it anywhere.
pub fn build_table(command: &Command) -> Result<Table> {
    let args = command.args();
    let sc = Scenario::load(&args.scenario)?;
    let run = || match command {
        Command::Survival(_) => commands::survival(&sc, args.units),
        Command::Lifetime(_) => commands::lifetime(&sc, args.units),
        Command::Velocity(_) => commands::velocity(&sc, args.units),
        Command::Overlap(_) => commands::overlap_sweep(&sc, args.units),
        Command::Twopoint(_) => commands::twopoint(&sc, args.units),
    };
    let rows = match args.threads {
        Some(0) => return Err(Error::Invalid("`--threads` must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(Table {
        command: command.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario_sha256: sc.sha256().to_string(),
        units: args.units.as_str().to_string(),
        columns: rows.columns.iter().map(|c| c.to_string()).collect(),
        rows: rows.rows,
    })
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_VALIDATION
    }
}

fn write_output(args: &CommonArgs, text: &str) -> std::io::Result<()> {
    match &args.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let table = match build_table(&cli.command) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("hyperdecay {}: {e}", cli.command.name());
            return exit_code(&e);
        }
    };
    let args = cli.command.args();
    let text = match args.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    if let Err(e) = write_output(args, &text) {
        eprintln!("hyperdecay: cannot write output: {e}");
        return EXIT_VALIDATION;
    }
    EXIT_OK
}
