use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jpn_core::bimodule::BimoduleCase;
use jpn_core::wpt::InstanceMode;
use jpn_core::Rational;

mod commands;
mod render;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "jpn", version, about = "Exact checks for JP_n, its bimodules and Wedderburn complements")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Jpn,
    Pn,
    Mnn,
    Extension,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit structure constants as JSON.
    Build(TargetArgs),
    /// Run identity checks on a built target or a JSON file.
    Check(CheckArgs),
    /// Print the nonzero products in named-basis form.
    Tables(TargetArgs),
    /// Peirce decomposition relative to the diagonal idempotents.
    Peirce(TargetArgs),
    /// Twist a split extension and compute a Wedderburn complement.
    WptSolve(WptArgs),
    /// Derive and reduce the constraints of the parametrized lift.
    LemmaDerive(LemmaArgs),
}

#[derive(Args, Debug)]
pub struct TargetArgs {
    #[arg(long, value_enum, default_value_t = Target::Jpn)]
    pub target: Target,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Bimodule for `--target extension`.
    #[arg(long, default_value = "reg")]
    pub case: BimoduleCase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Supercomm,
    Jordan,
    Peirce,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// jpn, mnn or extension (ignored with --file).
    #[arg(value_enum)]
    pub target: Option<Target>,
    /// Bimodule case for `extension`.
    pub case: Option<BimoduleCase>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Structure-constant JSON to check instead of a built target.
    #[arg(long, conflicts_with = "target")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Check::Supercomm, Check::Jordan])]
    pub checks: Vec<Check>,
    /// Run every check.
    #[arg(long)]
    pub all: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WptMode {
    Linear,
    ClosedForm,
    Symbolic,
}

#[derive(Args, Debug)]
pub struct WptArgs {
    #[arg(long)]
    pub case: BimoduleCase,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Twist seed; 0 leaves the extension split with the naive lift.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = WptMode::Linear)]
    pub mode: WptMode,
    /// Same as `--mode closed-form`.
    #[arg(long)]
    pub closed_form: bool,
    /// θ_1 for the closed form, e.g. `0`, `-7/3`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub theta1: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Curated,
}

impl From<Mode> for InstanceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => InstanceMode::Exhaustive,
            Mode::Curated => InstanceMode::Curated,
        }
    }
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    #[arg(long)]
    pub case: BimoduleCase,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
}

fn run(cli: &Cli) -> jpn_core::Result<Outcome> {
    match &cli.command {
        Command::Build(a) => commands::build(a),
        Command::Check(a) => commands::check(a),
        Command::Tables(a) => commands::tables(a),
        Command::Peirce(a) => commands::peirce(a),
        Command::WptSolve(a) => commands::wpt_solve(a),
        Command::LemmaDerive(a) => commands::lemma_derive(a.case, a.n, a.mode.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("report serializes") + "\n",
                Format::Text => out.text,
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                jpn_core::Error::NoSolution { .. } | jpn_core::Error::IncoherentXi { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
