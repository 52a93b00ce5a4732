use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod report;
mod run;

use run::{Mode, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "coxring",
    version,
    about = "Homogeneous coordinate rings of glued rational curves and toric varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Radius of the degree box in canonical class coordinates.
    #[arg(long = "box", global = true, default_value_t = 2)]
    box_radius: u32,

    /// Largest power of an irrelevant element tried by the freely-graded check.
    #[arg(long, global = true, default_value_t = 4)]
    power_bound: u32,

    /// Truncation levels of the separatedness check.
    #[arg(long, global = true, default_value_t = 2)]
    levels: u32,

    #[arg(long, global = true, value_enum, default_value_t = Lambda::Canonical)]
    lambda: Lambda,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation of the Picard-graded ring of a glued line.
    Curve { file: PathBuf },
    /// Class group and Cox ring of a fan.
    Toric { file: PathBuf },
    /// Presentation plus the verification suite, for a curve or a fan.
    Verify { file: PathBuf },
    /// Compare the canonical and full lattice pipelines on a curve.
    Crosscheck { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Lambda {
    Canonical,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    // usage errors are input errors; help and version exit 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (mode, path) = match cli.command {
        Command::Curve { file } => (Mode::Curve, file),
        Command::Toric { file } => (Mode::Toric, file),
        Command::Verify { file } => (Mode::Verify, file),
        Command::Crosscheck { file } => (Mode::Crosscheck, file),
    };
    let config = RunConfig {
        path,
        mode,
        box_radius: cli.box_radius,
        power_bound: cli.power_bound,
        levels: cli.levels,
        lambda: match cli.lambda {
            Lambda::Canonical => coxring::coxalg::LambdaKind::Canonical,
            Lambda::Full => coxring::coxalg::LambdaKind::Full,
        },
        format: cli.format,
    };
    match run::run(&config) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
