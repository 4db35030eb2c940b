//! `finsat`: batch front end for parsing, checking, normalizing, deciding and
//! exporting.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit statuses.
pub mod status {
    pub const SAT: u8 = 0;
    pub const NO_MODEL: u8 = 1;
    pub const UNKNOWN: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const PARSE: u8 = 65;
    pub const INTERNAL: u8 = 70;
}

#[derive(Parser, Debug)]
#[command(name = "finsat", version, about = "Finite satisfiability for two-variable logic with a partial order or a transitive relation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicArg {
    L2,
    #[value(name = "l2-1po-u")]
    L2PoUnary,
    #[value(name = "l2-1po")]
    L2Po,
    #[value(name = "l2-1t")]
    L2Trans,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Document,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalForm {
    Standard,
    Weak,
    Basic,
    Transitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Formula,
    Structure,
    Weak,
}

#[derive(Args, Debug, Clone)]
pub struct FormulaInput {
    /// Formula file; a leading `logic: <tag>` line fixes the logic.
    pub formula: std::path::PathBuf,
    /// Logic of the formula, if the file does not say.
    #[arg(long, value_enum)]
    pub logic: Option<LogicArg>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest domain size searched.
    #[arg(long, env = "FINSAT_BOUND", default_value_t = 6)]
    pub bound: usize,
    /// Wall-clock limit in seconds.
    #[arg(long, env = "FINSAT_TIME_LIMIT")]
    pub time_limit: Option<u64>,
    /// Largest CNF built for one domain size.
    #[arg(long, env = "FINSAT_MAX_CLAUSES", default_value_t = 4_000_000)]
    pub max_clauses: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and echo its syntax tree.
    Parse {
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Evaluate a formula in a structure document.
    CheckModel {
        structure: std::path::PathBuf,
        formula: std::path::PathBuf,
    },
    /// Print a normal form of a formula.
    Normalize {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, value_enum)]
        to: NormalForm,
    },
    /// Bounded satisfiability check.
    Decide {
        #[command(flatten)]
        input: FormulaInput,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every applicable transformation with its checks enabled.
    VerifyPipeline {
        #[command(flatten)]
        input: FormulaInput,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Factorize a typed partial order, optionally for a weak normal form it satisfies.
    Factorize {
        structure: std::path::PathBuf,
        #[arg(long)]
        formula: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "document")]
        format: Format,
    },
    /// Factorize and print the block order as DOT.
    Dot {
        structure: std::path::PathBuf,
        #[arg(long)]
        formula: Option<std::path::PathBuf>,
    },
    /// Print a random fixture.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "l2")]
        logic: LogicArg,
        #[arg(long, default_value_t = 2)]
        unary: usize,
        #[arg(long, default_value_t = 1)]
        binary: usize,
        /// Domain size for structures.
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Nesting depth for formulas, multiplicity for weak forms.
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { status::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("finsat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
