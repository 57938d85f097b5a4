//! `gyrostep`: batch commands over the JSON forms of gyrogroup instances,
//! elements, neighborhoods and step functions. Every command prints one
//! JSON report on standard output.
//!
//! Exit status: 0 on success, 1 when a checked invariant fails, 2 on
//! malformed input.

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::report::{failure_report, CommandReport};

#[derive(Parser, Debug)]
#[command(name = "gyrostep", version, about = "Gyrogroups, step-function extensions and their witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check the gyrogroup laws on an instance (exhaustive or sampled).
    CheckAxioms,
    /// `f ⊕ g` for elements or step functions.
    Add,
    /// `gyr[f, g] h`.
    Gyr,
    /// `f ⊞ g`.
    Coadd,
    /// Lift a chain of catalog homomorphisms to step functions.
    Lift,
    /// Extended pseudometric `d•(f, g)`.
    Dbullet,
    /// The path from `0•` to `f` at parameter `t`.
    Path,
    /// Measure of the set where `f` leaves `V`.
    Measure,
    /// Membership in `O(V, ε)` or `f ⊕ O(V, ε)`, or sampled members.
    Member,
    /// Witness that a non-constant `f` is far from the constants.
    Separate,
    /// Approximate `f` by a function with values in a dense set.
    Densify,
    /// Cover witness `g` with `f ∈ g ⊕ O(V, ε)`.
    Cover,
    /// Build a network `Q`-set around `f`, or test membership in one.
    Qset,
    /// Build a step function from values and interior cuts.
    FromParts,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::CheckAxioms => "check-axioms",
            Self::Add => "add",
            Self::Gyr => "gyr",
            Self::Coadd => "coadd",
            Self::Lift => "lift",
            Self::Dbullet => "dbullet",
            Self::Path => "path",
            Self::Measure => "measure",
            Self::Member => "member",
            Self::Separate => "separate",
            Self::Densify => "densify",
            Self::Cover => "cover",
            Self::Qset => "qset",
            Self::FromParts => "from-parts",
        }
    }
}

/// Flags shared by every subcommand. Payloads are JSON; rationals accept
/// `p/q` and finite decimals.
#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Instance, e.g. `{"kind":"cyclic","n":5}`.
    #[arg(long, global = true)]
    pub instance: Option<String>,
    /// First operand: a step function or, with --instance, an element.
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Second operand.
    #[arg(long, global = true)]
    pub g: Option<String>,
    /// Third operand.
    #[arg(long, global = true)]
    pub h: Option<String>,
    /// `discrete` or `euclidean`.
    #[arg(long, global = true)]
    pub metric: Option<String>,
    /// Neighborhood of the identity: `{"set":[...]}` or `{"ball":ρ}`.
    #[arg(long = "V", global = true)]
    pub v: Option<String>,
    /// Measure bound ε (rational).
    #[arg(long, global = true)]
    pub eps: Option<String>,
    /// Path parameter in [0, 1] (rational).
    #[arg(long, global = true)]
    pub t: Option<String>,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = gyrostep::sample::DEFAULT_SEED)]
    pub seed: u64,
    /// Number of sampled cases.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Enumerate every case instead of sampling (finite instances).
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Homomorphism names, comma separated, applied left to right.
    #[arg(long, global = true)]
    pub hom: Option<String>,
    /// Targets of the non-identity homomorphisms: one instance or a list.
    #[arg(long, global = true)]
    pub target: Option<String>,
    /// Dense set: `"full"`, `{"grid":bits}` or `{"points":[...]}`.
    #[arg(long, global = true)]
    pub dense: Option<String>,
    /// `keep` or `dyadic` placement of witness cuts.
    #[arg(long = "cut-policy", global = true)]
    pub cut_policy: Option<String>,
    /// `left` (`f ∈ g ⊕ O`) or `right` (`f ⊟ g ∈ O`).
    #[arg(long, global = true)]
    pub side: Option<String>,
    /// Q-set index n.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Q-set cut vector.
    #[arg(long, global = true)]
    pub b: Option<String>,
    /// Network members: `[{"set":[...]} | {"center":e,"radius":"p/q"}]`.
    #[arg(long = "P", global = true)]
    pub p: Option<String>,
    /// Values for from-parts (JSON list of elements).
    #[arg(long, global = true)]
    pub values: Option<String>,
    /// Interior cuts for from-parts.
    #[arg(long, global = true)]
    pub cuts: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let inputs = input::echo(&cli.opts);
    match commands::run(cli.command, &cli.opts) {
        Ok(outcome) => {
            let report = CommandReport::new(cli.command.name(), inputs, outcome);
            println!("{}", report.to_json());
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            println!("{}", failure_report(cli.command.name(), inputs, &e));
            eprintln!("error: {e}");
            ExitCode::from(report::exit_code(&e))
        }
    }
}
