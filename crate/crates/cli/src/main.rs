use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scarf_cli::commands::{self, Options};
use scarf_cli::{CliError, SystemSpec};
use scarf_core::resolution::Perturbation;

#[derive(Parser)]
#[command(name = "scarfrel", version, about = "Scarf-complex reliability identities and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List generators, genericity, and the faces of the (deformed) Scarf complex
    Scarf(Common),
    /// Reliability from the Scarf identity, with term counts and the oracle check
    Reliability(Common),
    /// Truncated Scarf bounds next to Bonferroni bounds
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Comma-separated truncation depths (face cardinalities)
        #[arg(long, value_delimiter = ',')]
        depth: Option<Vec<usize>>,
    },
    /// Exact reliability by enumerating the state grid
    Oracle(Common),
    /// Scarf identity, complete inclusion-exclusion and oracle side by side
    Compare(Common),
    /// Randomized self-check against the enumeration oracle
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// System description (JSON)
    spec: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Deformation parameter, must exceed the number of minimal points
    #[arg(long = "v")]
    v: Option<u64>,
    /// Tie-breaking direction of the deformation
    #[arg(long, value_enum)]
    perturbation: Option<PerturbationArg>,
    /// Largest state grid the enumeration oracle will visit
    #[arg(long, default_value_t = 10_000_000)]
    oracle_cap: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbationArg {
    Increasing,
    Decreasing,
}

impl Common {
    fn load(&self) -> Result<(SystemSpec, Options), CliError> {
        let text = std::fs::read_to_string(&self.spec).map_err(|e| {
            CliError::InvalidSpec(format!("cannot read {}: {e}", self.spec.display()))
        })?;
        let spec = SystemSpec::from_json(&text)?;
        let opts = Options {
            json: self.json,
            v: self.v,
            perturbation: self.perturbation.map(|p| match p {
                PerturbationArg::Increasing => Perturbation::Increasing,
                PerturbationArg::Decreasing => Perturbation::Decreasing,
            }),
            oracle_cap: self.oracle_cap,
        };
        Ok((spec, opts))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Scarf(c) => {
            let (spec, opts) = c.load()?;
            commands::cmd_scarf(&spec, &opts)
        }
        Command::Reliability(c) => {
            let (spec, opts) = c.load()?;
            commands::cmd_reliability(&spec, &opts)
        }
        Command::Bounds { common, depth } => {
            let (spec, opts) = common.load()?;
            commands::cmd_bounds(&spec, &opts, depth.as_deref())
        }
        Command::Oracle(c) => {
            let (spec, opts) = c.load()?;
            commands::cmd_oracle(&spec, &opts)
        }
        Command::Compare(c) => {
            let (spec, opts) = c.load()?;
            commands::cmd_compare(&spec, &opts)
        }
        Command::Selftest { seed, count, json } => {
            let opts = Options {
                json,
                ..Options::default()
            };
            commands::cmd_selftest(seed, count, &opts)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("scarfrel: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
