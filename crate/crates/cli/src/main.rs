//! Command-line interface: exact analysis of degree-two rational self-maps
//! of the projective line over four field backends, with deterministic JSON
//! or plain-text reports.
//!
//! Exit codes: 0 success, 1 domain rejection, 2 parse/usage error.

mod commands;
mod report;

use clap::{Parser, Subcommand};
use commands::Ctx;
use tmrat2::Field;

#[derive(Parser)]
#[command(name = "tmrat2", version, about = "Exact invariants, markings, and stability for degree-two rational self-maps of the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field descriptor: `Q` | `Fp:<p>` | `Fpk:<p>^<k>[,mod=<poly>]` | `C[:<bits>]`
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Seed for the randomized equal-degree splitting
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, default_value = "text", value_parser = ["json", "text"])]
    output: String,

    /// Precision override (bits) for the complex backend
    #[arg(long, global = true)]
    precision: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Resultant, fixed points, critical points, and multipliers of a map
    Analyze { map: String },
    /// Validity, cross ratios, surface checks, and multipliers of a marking
    Invariants { marking: String },
    /// The unique map with the marked fixed and critical points
    Reconstruct { marking: String },
    /// Conjugacy decision for two markings, with a transporting witness
    Equiv { first: String, second: String },
    /// The twelve remarking triples and the canonical representative
    Orbit { marking: String },
    /// Stability classification of a weighted point configuration
    Stability { config: String },
    /// Per-prime identity battery for a map or marking with rational data
    Sweep {
        payload: String,
        /// Primes: comma list and/or inclusive ranges, e.g. 3..97 or 3,5,11
        #[arg(long, default_value = "3..97")]
        primes: String,
    },
    /// Exhaustive oracle battery over small prime fields
    Selftest {
        #[arg(default_value = "small", value_parser = ["small", "full"])]
        scale: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let json_output = cli.output == "json";
    let field = match build_field(&cli.field, cli.precision) {
        Ok(f) => f,
        Err(message) => {
            let report = report::Report::new("field", &cli.field, cli.seed).usage_error(message);
            println!("{}", report.render(json_output));
            std::process::exit(report.status.exit_code());
        }
    };
    let ctx = Ctx { field, seed: cli.seed };
    let report = match &cli.command {
        Command::Analyze { map } => commands::analyze(&ctx, map),
        Command::Invariants { marking } => commands::invariants(&ctx, marking),
        Command::Reconstruct { marking } => commands::reconstruct(&ctx, marking),
        Command::Equiv { first, second } => commands::equiv(&ctx, first, second),
        Command::Orbit { marking } => commands::orbit(&ctx, marking),
        Command::Stability { config } => commands::stability(&ctx, config),
        Command::Sweep { payload, primes } => commands::sweep(&ctx, payload, primes),
        Command::Selftest { scale } => commands::selftest(&ctx, scale),
    };
    println!("{}", report.render(json_output));
    std::process::exit(report.status.exit_code());
}

fn build_field(descriptor: &str, precision: Option<usize>) -> Result<Field, String> {
    let field = Field::parse(descriptor).map_err(|e| e.to_string())?;
    match precision {
        None => Ok(field),
        Some(bits) => {
            if bits == 0 {
                return Err("precision must be positive".to_string());
            }
            if field.complex_precision().is_some() {
                Ok(Field::complex(bits))
            } else {
                Ok(field)
            }
        }
    }
}
