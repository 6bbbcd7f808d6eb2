//! Command-line driver: coalgebra files in, deterministic reports out.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! unusable input.

pub mod commands;
pub mod expr;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{BracketMode, CliError, HomologyTarget, Outcome, RunConfig};
pub use output::Format;

#[derive(Debug, Parser)]
#[command(name = "necklace", version, about = "Double Poisson brackets on cobar constructions of cyclic coalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Largest total weight considered.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_weight: Option<u32>,
    /// Largest homological degree reported.
    #[arg(long)]
    pub max_degree: Option<i64>,
    /// Representation dimension; repeat for several.
    #[arg(long = "dim", value_parser = clap::value_parser!(u64).range(1..))]
    pub dims: Vec<u64>,
    /// Work in FT, the quotient that also kills the unit.
    #[arg(long)]
    pub reduced: bool,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled triples for the representation Poisson axioms.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            max_weight: self.max_weight,
            max_degree: self.max_degree,
            dims: self.dims.iter().map(|&d| d as usize).collect(),
            reduced: self.reduced,
            seed: self.seed,
            samples: self.samples,
            format: self.format,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural and cyclicity checks of a coalgebra file.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive double Poisson axiom table (default weight 6).
    Axioms {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Lie algebra checks of the induced bracket on the quotient (default weight 6).
    Lie {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Bracket of two expressions in the cobar generators.
    Bracket {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[arg(long, value_enum, default_value_t = BracketMode::Double)]
        mode: BracketMode,
        #[command(flatten)]
        common: Common,
    },
    /// Homology dimension tables (default weight 4).
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = HomologyTarget::Natural)]
        target: HomologyTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Trace compatibility with representation brackets (default weight 4, d = 1, 2).
    Traces {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Validate { file, common } => commands::cmd_validate(file, &common.config()),
        Command::Axioms { file, common } => commands::cmd_axioms(file, &common.config()),
        Command::Lie { file, common } => commands::cmd_lie(file, &common.config()),
        Command::Bracket { file, lhs, rhs, mode, common } => commands::cmd_bracket(file, &common.config(), lhs, rhs, *mode),
        Command::Homology { file, target, common } => commands::cmd_homology(file, &common.config(), *target),
        Command::Traces { file, common } => commands::cmd_traces(file, &common.config()),
    }
}

/// Parses arguments and runs; returns `(stdout, stderr, exit status)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 2) };
        }
    };
    match execute(&cli.command) {
        Ok(o) => (o.stdout, String::new(), if o.passed { 0 } else { 1 }),
        Err(e) => (String::new(), format!("error: {e}\n"), 2),
    }
}
