//! `ellcong`: batch front end for the congruence verifier.
//!
//! Every subcommand reads a JSON document (a path, `-` for stdin, or inline text starting
//! with `{`) carrying `"schema_version": 1`, and prints one report as JSON or as an indented
//! text rendering of the same object. Exit codes: 0 all checks pass, 1 mathematical
//! violation, 2 input error, 3 precision or enumeration failure.

mod commands;
mod error;
mod render;
mod selftest;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{Config, Outcome, SCHEMA_VERSION};
use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Command {
    /// Characteristic polynomials, integrality, reductions and congruence of Satake parameters.
    Satake,
    /// Unramified Whittaker values at the listed weights.
    Whittaker,
    /// Compares Whittaker values of two parameters over all dominant weights up to --bound.
    Congruence,
    /// Basis of a Riemann–Roch space.
    Rr,
    /// Values of the residue character on principal elements and adeles.
    Psi,
    /// The index of k + U in the adeles.
    Index,
    /// Whittaker values and mirabolic expansions of a global spec.
    Expand,
    /// The end-to-end congruence check for two global specs.
    Pipeline,
    /// A seeded battery of internal consistency checks.
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Satake => "satake",
            Command::Whittaker => "whittaker",
            Command::Congruence => "congruence",
            Command::Rr => "rr",
            Command::Psi => "psi",
            Command::Index => "index",
            Command::Expand => "expand",
            Command::Pipeline => "pipeline",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ellcong", version, about = "Congruences of Whittaker functions over Q_ell and F_q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Residue characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = 7)]
    ell: u64,
    /// Degree of the unramified coefficient field over Q_ell.
    #[arg(long, global = true, default_value_t = 1)]
    d: usize,
    /// Relative ell-adic precision.
    #[arg(long, global = true, default_value_t = 32)]
    precision: u32,
    /// Characteristic of the constant field F_q.
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// Degree of F_q over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    f: u32,
    /// Weight box radius for `congruence`.
    #[arg(long, global = true, default_value_t = 4)]
    bound: u32,
    /// Cap on enumerated elements and cosets.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    /// Seed for randomized checks; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Digits kept in local expansions at places of F_q(t).
    #[arg(long, global = true, default_value_t = 16)]
    local_precision: u32,
    /// Number of default sample points when the input lists none.
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Treat non-integral Satake data as a violation.
    #[arg(long, global = true)]
    require_integral: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Input path, `-` for stdin, or inline JSON.
    #[arg(long, global = true)]
    input: Option<String>,
}

fn read_input(spec: &Option<String>) -> Result<Option<String>, CliError> {
    match spec.as_deref() {
        None => Ok(None),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(Some(s))
        }
        Some(s) if s.trim_start().starts_with('{') => Ok(Some(s.to_string())),
        Some(path) => Ok(Some(std::fs::read_to_string(path)?)),
    }
}

fn execute(cli: &Cli, cfg: &Config) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let input = read_input(&cli.input)?;
    let input = input.as_deref();
    match cli.command {
        Command::Satake => commands::satake(cfg, input),
        Command::Whittaker => commands::whittaker(cfg, input),
        Command::Congruence => commands::congruence(cfg, input),
        Command::Rr => commands::rr(cfg, input),
        Command::Psi => commands::psi(cfg, input),
        Command::Index => commands::index(cfg, input),
        Command::Expand => commands::expand(cfg, input),
        Command::Pipeline => commands::pipeline(cfg, input),
        Command::Selftest => commands::run_selftest(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = Config {
        ell: cli.ell,
        d: cli.d,
        precision: cli.precision,
        p: cli.p,
        f: cli.f,
        bound: cli.bound,
        cap: cli.cap,
        seed: cli.seed,
        local_precision: cli.local_precision,
        samples: cli.samples,
        require_integral: cli.require_integral,
    };
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cli.command.name(),
        "seed": cli.seed,
        "config": cfg.to_json(),
    });
    let status = match execute(&cli, &cfg) {
        Ok(out) => {
            report["result"] = out.result;
            out.status
        }
        Err(e) => {
            eprintln!("ellcong: {e}");
            report["error"] = Value::String(e.message.clone());
            e.status
        }
    };
    report["status"] = json!(status.label());
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Text => print!("{}", render::to_text(&report)),
    }
    ExitCode::from(status as u8)
}
