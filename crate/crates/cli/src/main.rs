use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopfweave_cli::commands::{self, CliResult, Report};

/// Invariants, stabilization and stable equivalence of Hopf-plumbed open books.
#[derive(Parser)]
#[command(name = "hopfweave", version)]
struct Cli {
    /// Print a two-column table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// μ, λ, Alexander polynomial, signature and fingerprint.
    Invariants { expr: String },
    /// Grothendieck class and its decompositions over both bases.
    Gk { expr: String },
    /// Homological monodromy h = V⁻¹Vᵀ.
    Monodromy { expr: String },
    /// Plane-field class of the open book.
    Field {
        expr: String,
        #[arg(long)]
        manifold: Option<PathBuf>,
        /// Plane-field class of the starting book (defaults to the reference field).
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Stable-equivalence verdict and H⁻ budget.
    Equiv {
        expr_a: String,
        expr_b: String,
        #[arg(long)]
        manifold: Option<PathBuf>,
        #[arg(long)]
        field_a: Option<PathBuf>,
        #[arg(long)]
        field_b: Option<PathBuf>,
    },
    /// Search for a common stabilization.
    Search {
        expr_a: String,
        expr_b: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        coord_bound: u32,
    },
    /// Replay and check a certificate.
    Verify {
        expr_a: String,
        expr_b: String,
        #[arg(long)]
        cert: PathBuf,
    },
}

fn run(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Invariants { expr } => commands::invariants(expr),
        Command::Gk { expr } => commands::gk(expr),
        Command::Monodromy { expr } => commands::monodromy(expr),
        Command::Field {
            expr,
            manifold,
            base,
        } => commands::field(expr, manifold.as_deref(), base.as_deref()),
        Command::Equiv {
            expr_a,
            expr_b,
            manifold,
            field_a,
            field_b,
        } => commands::equiv(
            expr_a,
            expr_b,
            manifold.as_deref(),
            field_a.as_deref(),
            field_b.as_deref(),
        ),
        Command::Search {
            expr_a,
            expr_b,
            depth,
            coord_bound,
        } => commands::search(expr_a, expr_b, *depth, *coord_bound),
        Command::Verify {
            expr_a,
            expr_b,
            cert,
        } => commands::verify(expr_a, expr_b, cert),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            if cli.pretty {
                print!("{}", commands::table(&report.json));
            } else {
                println!("{}", report.json);
            }
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
