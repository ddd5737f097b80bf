//! `sepred`: command-line front end for the separated-polynomial toolkit.

mod algebra;
mod group_cmd;

use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sepred_core::Field;

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status: 0 success or irreducible, 1 reducible or nonempty residual,
/// 2 inconsistency, 3 input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Reducible = 1,
    Inconsistent = 2,
    InputError = 3,
}

/// A finished command: machine-readable payload, text for humans, status.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Outcome {
    pub fn new(json: Value, text: String, status: Status) -> Outcome {
        Outcome { json, text, status }
    }
}

#[derive(Parser)]
#[command(
    name = "sepred",
    version,
    about = "Reducibility of separated polynomials f(X) - g(Y)"
)]
struct Cli {
    /// Minimal polynomial of the field generator, e.g. "a^2+a+2".
    #[arg(long, global = true)]
    field: Option<String>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a univariate polynomial in x.
    FactorUni {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Factor a bivariate polynomial in x and y.
    FactorBi {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// List the complete decompositions of a polynomial.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Decide reducibility of f(X) - g(Y) and explain it.
    Classify(algebra::ClassifyArgs),
    /// Named pairs and genus-0 families.
    Families {
        #[command(subcommand)]
        action: algebra::FamiliesCommand,
    },
    /// Permutation group computations.
    Group {
        #[command(subcommand)]
        action: group_cmd::GroupCommand,
    },
    /// Integers a with f(X) - a reducible, against the left-factor prediction.
    Scan(algebra::ScanArgs),
    /// Reducible fibers of an iterate that are not reducible fibers of f.
    Stability(algebra::StabilityArgs),
    /// Irreducibility of Q(f(X)) - P(g(Y)) for simply branched P, Q.
    MnCheck(algebra::MnArgs),
}

/// Reads a field from its minimal polynomial; the generator is the first
/// name appearing in the text.
pub fn parse_field(text: &str) -> Result<Field> {
    let generator: String = text
        .chars()
        .skip_while(|c| !c.is_ascii_alphabetic())
        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    if generator.is_empty() {
        return Err(anyhow!("no generator name in field polynomial '{text}'"));
    }
    if matches!(generator.as_str(), "x" | "X" | "y" | "Y") {
        return Err(anyhow!("the field generator may not be named x or y"));
    }
    Ok(Field::parse(text, &generator)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    let field = match &cli.field {
        Some(t) => parse_field(t)?,
        None => Field::rationals(),
    };
    match &cli.command {
        Command::FactorUni { poly } => algebra::factor_uni(poly, &field),
        Command::FactorBi { poly } => algebra::factor_bivariate(poly, &field),
        Command::Decompose { poly } => algebra::decompose(poly, &field),
        Command::Classify(args) => algebra::classify(args, &field),
        Command::Families { action } => algebra::families(action),
        Command::Group { action } => group_cmd::run(action),
        Command::Scan(args) => algebra::scan(args, &field, cli.seed),
        Command::Stability(args) => algebra::stability(args, &field),
        Command::MnCheck(args) => algebra::mn_check(args, &field),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InputError as u8 } else { 0 });
        }
    };
    let outcome = run(&cli).unwrap_or_else(|e| {
        Outcome::new(
            json!({ "error": format!("{e:#}") }),
            format!("error: {e:#}"),
            Status::InputError,
        )
    });
    if cli.json {
        let mut v = outcome.json;
        if let Value::Object(m) = &mut v {
            m.insert("schema_version".into(), json!(SCHEMA_VERSION));
            m.insert("exit_code".into(), json!(outcome.status as u8));
        }
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else if outcome.status == Status::InputError {
        eprintln!("{}", outcome.text);
    } else {
        println!("{}", outcome.text);
    }
    ExitCode::from(outcome.status as u8)
}
