//! Problem documents and the `declat` command line.

pub mod commands;
pub mod doc;
mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};
use declat_core::oracle::SearchBudget;
use declat_core::{Lattice, PartitionBudget, Rational};

pub use crate::doc::{parse_problem, Problem};
pub use crate::error::CliError;
use crate::report::{Fmt, Output};

#[derive(Debug, Parser)]
#[command(
    name = "declat",
    version,
    about = "Compare acts over finite distributive lattices, exactly"
)]
pub struct Cli {
    /// Problem document; standard input when absent or `-`.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also print rationals rounded to N decimal places.
    #[arg(long, global = true, value_name = "N")]
    pub decimal: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and check a document, then summarize it.
    Validate,
    /// Every comparison between two acts, in both directions.
    Compare {
        left: String,
        right: String,
        #[arg(long)]
        valuation: Option<String>,
    },
    /// Count or list the partitions of the document's lattice, or of the
    /// Boolean algebra on `--atoms` atoms.
    #[command(group(ArgGroup::new("mode").required(true).args(["count", "list"])))]
    Partitions {
        #[arg(long)]
        count: bool,
        #[arg(long)]
        list: bool,
        #[arg(long, value_name = "N")]
        atoms: Option<usize>,
        /// Stop after this many partitions.
        #[arg(long, default_value_t = PartitionBudget::default().max_partitions)]
        budget: u64,
    },
    /// Meet or join of two named partitions.
    #[command(name = "lattice-ops", group(ArgGroup::new("op").required(true).args(["meet", "join"])))]
    LatticeOps {
        #[arg(long)]
        meet: bool,
        #[arg(long)]
        join: bool,
        left: String,
        right: String,
    },
    /// Expected value of an act.
    Expected {
        act: String,
        valuation: Option<String>,
        /// Also print the payoff total and the intrinsic expected value.
        #[arg(long)]
        intrinsic: bool,
    },
    /// Convert between lotteries and acts.
    #[command(group(ArgGroup::new("direction").required(true).args(["to_act", "from_act"])))]
    Lottery {
        /// Build an act from the named lottery.
        #[arg(long, value_name = "LOTTERY")]
        to_act: Option<String>,
        /// Build the lottery of the named act.
        #[arg(long, value_name = "ACT")]
        from_act: Option<String>,
        #[arg(long)]
        valuation: Option<String>,
        /// Drop rewards of probability zero when building an act.
        #[arg(long)]
        prune_zero: bool,
    },
    /// The Allais problem with payoffs x and y.
    Allais {
        #[arg(long, default_value = "500000")]
        x: String,
        #[arg(long, default_value = "2500000")]
        y: String,
    },
    /// Search for three acts on which ◀ is not transitive.
    Counterexample {
        #[arg(long, default_value_t = 4)]
        atoms: usize,
        #[arg(long, default_value_t = SearchBudget::default().seed)]
        seed: u64,
        /// Number of random triples to try.
        #[arg(long, default_value_t = SearchBudget::default().max_trials)]
        budget: usize,
    },
}

fn read_problem(input: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Problem, CliError> {
    let mut text = String::new();
    match input {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|source| CliError::Io {
                path: "standard input".into(),
                source,
            })?;
        }
    }
    parse_problem(&text)
}

fn parse_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    declat_core::parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

/// Runs a parsed command line and returns the rendered report.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    let fmt = Fmt { decimal: cli.decimal };
    let load = |stdin: &mut dyn Read| read_problem(cli.input.as_ref(), stdin);
    let out: Output = match &cli.command {
        Command::Validate => commands::validate(&load(stdin)?, fmt),
        Command::Compare { left, right, valuation } => {
            commands::compare_acts(&load(stdin)?, left, right, valuation.as_deref(), fmt)?
        }
        Command::Partitions {
            list, atoms, budget, ..
        } => {
            let lattice = match atoms {
                Some(n) => {
                    let names: Vec<String> = (1..=*n).map(|i| i.to_string()).collect();
                    Lattice::boolean(&names).map_err(|e| CliError::Usage(format!("--atoms: {e}")))?
                }
                None => load(stdin)?.lattice,
            };
            commands::partitions(&lattice, *list, *budget)?
        }
        Command::LatticeOps { meet, left, right, .. } => commands::lattice_op(&load(stdin)?, *meet, left, right)?,
        Command::Expected {
            act,
            valuation,
            intrinsic,
        } => commands::expected(&load(stdin)?, act, valuation.as_deref(), *intrinsic, fmt)?,
        Command::Lottery {
            to_act,
            from_act,
            valuation,
            prune_zero,
        } => {
            let p = load(stdin)?;
            match (to_act, from_act) {
                (Some(l), _) => commands::lottery_to_act_cmd(&p, l, *prune_zero, fmt)?,
                (_, Some(a)) => commands::act_to_lottery_cmd(&p, a, valuation.as_deref(), fmt)?,
                _ => unreachable!("clap requires one direction"),
            }
        }
        Command::Allais { x, y } => commands::allais(parse_arg("x", x)?, parse_arg("y", y)?, fmt)?,
        Command::Counterexample { atoms, seed, budget } => commands::counterexample(*atoms, *seed, *budget, fmt)?,
    };
    Ok(out.render(cli.json))
}

/// Parses `args` (program name first) and runs them.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    execute(&cli, stdin)
}
