//! `amlab`: batch verification of diagonals and derivation decompositions.
//!
//! Exit codes: 0 the report passes, 1 the verdict is false, 2 unreadable or
//! invalid input, 3 an invariant or precondition check failed.

mod commands;
mod emit;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use amlab_core::derivations::MapKind;
use amlab_core::scalar::DEFAULT_FLOAT_TOL;
use amlab_core::{Error, Rational, ScalarMode};
use clap::{Args, Parser, Subcommand};

use crate::emit::Format;

#[derive(Debug, Parser)]
#[command(name = "amlab", version, about = "Diagonals and derivations of finite-dimensional l1 algebras")]
pub struct Cli {
    #[command(flatten)]
    pub session: Session,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Session {
    /// Scalar field: exact rationals or f64.
    #[arg(long, global = true, env = "AMLAB_MODE", default_value = "rational", value_parser = parse_mode)]
    pub mode: ScalarMode,
    /// Zero tolerance in float mode (ignored for rationals).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format. Defaults to csv for convergence-table, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

fn parse_mode(s: &str) -> Result<ScalarMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<MapKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Defect report for a net of tensors; passes when the final entry is within tolerance.
    CheckDiagonal {
        algebra: String,
        net: String,
        /// Also require every entry to be flip-invariant.
        #[arg(long)]
        require_symmetric: bool,
    },
    /// Build a diagonal tensor.
    BuildDiagonal {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Defects of the truncated matrix diagonals t_1..t_N against test matrices.
    ConvergenceTable {
        /// Ambient size N.
        ambient: usize,
        /// `{"matrices": [{"label", "entries": [[i, j, c]]}]}` with 1-based indices.
        tests: String,
    },
    /// Tracial functional with f(z) = 1, or a commutator certificate for z.
    Witness {
        algebra: String,
        /// Element z (basis label, `I`, or element document). Defaults to the unit.
        #[arg(long)]
        z: Option<String>,
        /// Build f(a) = g(pi_op(a t)) from this diagonal instead of solving.
        #[arg(long)]
        diagonal: Option<String>,
        /// Functional g (basis label or `{"values": [...]}`); used with --diagonal.
        #[arg(long)]
        g: Option<String>,
    },
    /// Write a Jordan derivation as an inner derivation.
    DecomposeJordan {
        #[command(flatten)]
        input: Decomposition,
        /// Use the central Jordan decomposition D = [., x] / 2.
        #[arg(long)]
        central: bool,
        /// Write the implementing element Omega (or x) here.
        #[arg(long)]
        omega_out: Option<PathBuf>,
    },
    /// Split a Lie derivation as d + tau.
    DecomposeLie {
        #[command(flatten)]
        input: Decomposition,
        /// Submodule vectors to check d(A) and tau(A) against.
        #[arg(long)]
        submodule: Option<String>,
        #[arg(long)]
        d_out: Option<PathBuf>,
        #[arg(long)]
        tau_out: Option<PathBuf>,
    },
    /// Basis of derivations, Jordan or Lie derivations, central-valued maps, central traces or central derivations.
    Classify {
        #[arg(value_parser = parse_kind)]
        kind: MapKind,
        algebra: String,
        /// Bimodule (`regular`, `regular:<k>`, `trivial:<m>` or a document).
        module: Option<String>,
    },
    /// Center of an algebra, or of a bimodule with --module.
    Center {
        algebra: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Quotient of a bimodule by a submodule; with --delta and --tau, replay the submodule lemma.
    Quotient {
        algebra: String,
        /// Submodule spanning vectors.
        submodule: String,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, requires = "tau")]
        delta: Option<String>,
        #[arg(long, requires = "delta")]
        tau: Option<String>,
    },
    /// Print a preset algebra as JSON.
    Algebra { name: String },
}

#[derive(Debug, Args)]
pub struct Decomposition {
    pub algebra: String,
    /// The map A -> X: dense matrix or map expression document.
    pub map: String,
    /// Diagonal of A (or of its unitization).
    pub diagonal: String,
    #[arg(long)]
    pub module: Option<String>,
    /// Largest diagonal defect accepted; above it the command fails.
    #[arg(long)]
    pub diagonal_tol: Option<String>,
    /// Report the psi and Phi maxima over this net.
    #[arg(long)]
    pub net: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum BuildKind {
    /// (1/n) sum E_ij (x) E_ji over M_n.
    Matrix { n: usize },
    /// t_n inside the N x N truncation.
    Truncated { n: usize, ambient: usize },
    /// (1/|G|) sum g (x) g^-1 for C<n>, S<n> or a group table document.
    Group { group: String },
    /// Block diagonal over a direct sum of presets.
    DirectSum {
        /// Summand presets, e.g. M2 M3.
        #[arg(required = true)]
        parts: Vec<String>,
        /// One tensor per summand; defaults to the built-in diagonal of each preset.
        #[arg(long = "tensor")]
        tensors: Vec<String>,
        /// Also write the sum algebra here.
        #[arg(long)]
        algebra_out: Option<PathBuf>,
    },
    /// (theta (x) theta)(t) along an epimorphism.
    Pushforward {
        source: String,
        target: String,
        /// Dense matrix document, or `project:<c>` when the source is a preset sum.
        map: String,
        tensor: String,
    },
    /// (t o e) e.
    Ideal { algebra: String, tensor: String, e: String },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::Mismatch(_) => 2,
        Error::Invariant(_) | Error::Precondition(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.session.mode {
        ScalarMode::Rational => commands::run::<Rational>(&cli, 0.0),
        ScalarMode::Float => match cli.session.tol.unwrap_or(DEFAULT_FLOAT_TOL) {
            tol if tol > 0.0 && tol.is_finite() => commands::run::<f64>(&cli, tol),
            tol => Err(Error::InvalidArgument(format!("--tol must be positive in float mode, got {tol}"))),
        },
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("amlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
