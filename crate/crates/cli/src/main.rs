use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use trilin_cli::commands::{self, Outcome, UsageError};

/// Adjoint-flip calculus for bounded tri-linear maps: signature chains, word
/// checking, exact tensor identity batteries and iterated-limit regularity
/// probes.
#[derive(Parser)]
#[command(name = "trilin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the signature after each letter of a word, and its limit order
    /// when canonical
    Signature {
        /// Word over the letters `*`, `i`, `j`, `r`, `t`, `s`
        word: String,
    },
    /// Check whether two words have the same signature and act identically
    /// on tensors
    WordCheck { word_a: String, word_b: String },
    /// Evaluate the six iterated-limit extensions of a catalog example
    Limits {
        /// Catalog example name (see `limits --example help`)
        #[arg(long)]
        example: String,
        /// Truncation of the sequence model
        #[arg(long, default_value_t = 50)]
        trunc: usize,
        /// Stabilization horizon
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Tolerance for limit detection and value comparison
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
    },
    /// Run the finite-dimensional identity battery on seeded random tensors
    TensorTest {
        /// Four comma-separated dimensions, each in 1..=16
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Run the full acceptance battery
    Report {
        /// Run every criterion
        #[arg(long)]
        all: bool,
    },
}

fn run(cli: Cli) -> Result<Outcome, UsageError> {
    match cli.command {
        Command::Signature { word } => commands::signature_chain(&word),
        Command::WordCheck { word_a, word_b } => commands::word_check(&word_a, &word_b),
        Command::Limits {
            example,
            trunc,
            horizon,
            tol,
            format,
        } => {
            let format = match format {
                FormatArg::Human => commands::Format::Human,
                FormatArg::Structured => commands::Format::Structured,
            };
            commands::run_limits(&example, trunc, horizon, tol, format)
        }
        Command::TensorTest { dims, seed, trials } => {
            let dims = commands::parse_dims(&dims)?;
            commands::tensor_test(dims, seed, trials)
        }
        Command::Report { all } => {
            if !all {
                return Err(UsageError("report needs --all".to_string()));
            }
            Ok(commands::report_all())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
