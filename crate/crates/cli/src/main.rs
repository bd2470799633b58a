mod commands;
mod selftest;
mod session;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use vf_core::Error;

use commands::Outcome;
use session::{Common, Format};

#[derive(Parser, Debug)]
#[command(name = "vf", version, about = "V-filtrations, higher multiplier ideals and Hodge ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Global Bernstein–Sato polynomial with certificate.
    Bfun,
    /// Generators of Ann f^s.
    Annfs,
    /// V-membership of Σ g_ℓ ∂_t^ℓ δ (levels via --gens).
    Vmember,
    /// Higher multiplier ideal Ĩ_k(αD).
    Hmi,
    /// Hodge ideal I_k(αD).
    Hodge,
    /// Jumping walls of Ĩ_k on (lo, hi].
    Walls,
    /// Left continuity of I_k at α.
    Leftcont,
    /// Flat limit over ℙ¹ of a family given with `beta`.
    FamilyLimit,
    /// Limit at ∞ of the Hodge family against Ĩ_k(αD).
    Thm12Check,
    /// Check a claimed Ĩ_k(αD).
    Verify,
    /// Run the built-in corpus.
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bfun => "bfun",
            Command::Annfs => "annfs",
            Command::Vmember => "vmember",
            Command::Hmi => "hmi",
            Command::Hodge => "hodge",
            Command::Walls => "walls",
            Command::Leftcont => "leftcont",
            Command::FamilyLimit => "family-limit",
            Command::Thm12Check => "thm12-check",
            Command::Verify => "verify",
            Command::Selftest => "selftest",
        }
    }
}

pub fn run(cmd: Command, c: &Common) -> vf_core::Result<Outcome> {
    match cmd {
        Command::Bfun => commands::bfun(c),
        Command::Annfs => commands::annfs(c),
        Command::Vmember => commands::vmember(c),
        Command::Hmi => commands::hmi(c),
        Command::Hodge => commands::hodge(c),
        Command::Walls => commands::walls(c),
        Command::Leftcont => commands::leftcont(c),
        Command::FamilyLimit => commands::family_limit(c),
        Command::Thm12Check => commands::thm12(c),
        Command::Verify => commands::verify(c),
        Command::Selftest => selftest::run(),
    }
}

/// The report without its timing field.
pub fn report(cmd: Command, argv: &[String], o: &Outcome) -> Value {
    json!({
        "command": cmd.name(),
        "argv": argv,
        "version": env!("CARGO_PKG_VERSION"),
        "passed": o.passed,
        "result": o.result,
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::Parse { .. } | Error::UnknownVariable(_) | Error::Invalid(_) | Error::RingMismatch(_) | Error::ConstantF => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let outcome = match run(cli.command, &cli.common) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("vf {}: {e}", cli.command.name());
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match cli.common.format {
        Format::Json => {
            let mut r = report(cli.command, &argv, &outcome);
            r["timing_ms"] = json!(start.elapsed().as_millis() as u64);
            serde_json::to_string_pretty(&r).expect("serializable") + "\n"
        }
        Format::Text => outcome.text.clone(),
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("vf: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
