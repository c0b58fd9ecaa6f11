//! `entwit`: evaluates entanglement conditions and prints a JSON report on
//! stdout. Exit status is 0 on success, 1 on a computation error (message on
//! stderr) and 2 on a usage error.

mod commands;
mod opspec;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "entwit",
    version,
    about = "Entanglement conditions from convexity arguments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lowest eigenvalue of the truncated matrix C_N and the best violation V_max(p).
    Cmatrix {
        /// Truncation N (the matrix has N + 1 rows).
        #[arg(long, value_name = "N")]
        n: usize,
        /// Weight of the optimal superposition against the vacuum.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// Bisection tolerance for the eigenvalue.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Scan of c0|00> + c1|22> over c0 with golden-section refinement.
    Psi2 {
        /// Number of interior grid points in (0, 1).
        #[arg(long, value_name = "GRIDSIZE")]
        scan: usize,
    },
    /// Variance-product condition on p|psi><psi| + (1-p)|00><00|, |psi> = sum c_n|2n,2n>.
    Mixture {
        /// Mixing weight in [0, 1].
        #[arg(long)]
        p: f64,
        /// Comma-separated coefficients c0,c1,...; rescaled to unit norm.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true,
            num_args = 1
        )]
        coeffs: Vec<f64>,
        /// Fock levels per mode (default 2N + 4).
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Two-mode squeezed vacuum with parity-block spin operators.
    Squeezed {
        /// Squeezing parameter, |lambda| < 1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Fock levels per mode, even (default: smallest even D with lambda^(2D) < 1e-12).
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// GHZ-type state (|0..0> + |1..1>)/sqrt(2) with spin operators.
    Bell {
        /// Number of qubits.
        #[arg(long)]
        parties: usize,
        #[arg(long, value_enum)]
        condition: BellCondition,
        /// Exponent of the Ramanujan condition (2 or 4).
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Optimal rotated-spin witness for alpha|00> + beta|11>.
    Schmidt {
        /// Complex amplitude as `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        alpha: Complex64,
        /// Complex amplitude as `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        beta: Complex64,
    },
    /// Exact check of a named polynomial identity.
    Identity {
        #[arg(long, value_enum)]
        name: IdentityName,
        /// Exponent for the Ramanujan family (ignored by complex_norm).
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Exact equality of two polynomials in a, a', b, b'.
    Eval {
        #[arg(long = "expr-lhs", allow_hyphen_values = true)]
        expr_lhs: String,
        #[arg(long = "expr-rhs", allow_hyphen_values = true)]
        expr_rhs: String,
    },
    /// Any condition on a state and operators given as JSON.
    Witness {
        /// State spec: a path to a JSON file, or inline JSON starting with `{`.
        #[arg(long)]
        state: String,
        /// Operator spec: a path to a JSON file, or inline JSON starting with `{`.
        #[arg(long)]
        ops: String,
        #[arg(long, value_enum)]
        condition: Condition,
        /// Exponent of the Ramanujan condition (2 or 4).
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BellCondition {
    Variance,
    Ramanujan,
    Uffink,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IdentityName {
    #[value(name = "complex_norm")]
    ComplexNorm,
    Ramanujan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Condition {
    #[value(name = "variance_product")]
    VarianceProduct,
    #[value(name = "variance_sum")]
    VarianceSum,
    Multipartite,
    Ramanujan,
    Uffink,
    #[value(name = "four_variance")]
    FourVariance,
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{text}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(doc) => {
            let text = serde_json::to_string_pretty(&doc).expect("report serializes");
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: writing report: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
