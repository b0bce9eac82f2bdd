//! Command-line surface. Every command renders into a string first, so the
//! bytes on stdout depend only on the arguments and never on thread count.

mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::hpoly::SpecialPoint;
use crate::par::{self, Strategy};
use crate::rootsys::{lambda_from_fundamental, GLWeight, Shape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cs-crystal",
    version,
    about = "Type-A crystals, BZL decorations and the crystal Casselman-Shalika identity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for enumeration and summation.
    #[arg(long, global = true, env = "CS_CRYSTAL_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub rank: u32,

    /// Comma-separated coefficients of the fundamental weights, or partition
    /// parts with `--partition`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub lambda: String,

    #[arg(long)]
    pub partition: bool,
}

impl WeightArgs {
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn weight(&self) -> Result<GLWeight> {
        let rank = self.rank();
        let values: Vec<i64> = if self.lambda.trim().is_empty() {
            if self.partition {
                vec![]
            } else {
                vec![0; rank]
            }
        } else {
            self.lambda
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad lambda entry {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if !self.partition {
            return lambda_from_fundamental(&values, rank);
        }
        let parts = values
            .iter()
            .map(|&v| usize::try_from(v).map_err(|_| Error::Domain(format!("negative part {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Shape::new(parts, rank)?.to_weight())
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the elements of B(lambda), or B(lambda+rho) with --shifted.
    Enumerate {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        shifted: bool,
    },
    /// BZL path, decorations from both rules, G and C of one tableau.
    Bzl {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        /// Rows separated by `/`, entries by spaces, e.g. "1 1 2 / 2 3".
        #[arg(long)]
        tableau: String,
    },
    /// Check the crystal identity and its BZL-indexed form exactly.
    Verify {
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Table of H_{lambda+rho}(mu), optionally specialized and cross-checked.
    Hpoly {
        #[command(flatten)]
        weight: WeightArgs,
        /// Specializations to append: inf, -1 or 1. Repeatable.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        at: Vec<SpecialPoint>,
    },
    /// Crystal graph of B(lambda) (or B(lambda+rho)) in DOT.
    Graph {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        shifted: bool,
    },
}

fn parse_point(s: &str) -> std::result::Result<SpecialPoint, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rendered output of a command and its exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn usage(e: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let strategy = Strategy::default();
    par::with_threads(cli.threads, || {
        let result = match &cli.command {
            Command::Enumerate { weight, shifted } => {
                commands::enumerate(weight, *shifted, cli.format, strategy)
            }
            Command::Bzl { rank, tableau } => commands::bzl(*rank as usize, tableau, cli.format),
            Command::Verify { weight } => commands::verify(weight, cli.format, strategy),
            Command::Hpoly { weight, at } => commands::hpoly(weight, at, cli.format, strategy),
            Command::Graph { weight, shifted } => {
                commands::graph(weight, *shifted, cli.format, strategy)
            }
        };
        result.unwrap_or_else(Outcome::usage)
    })
}

/// Parses `args`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = execute(&cli);
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}
