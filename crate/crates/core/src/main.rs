use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nearly::groebner::budget_from_env;
use nearly::suites::{run_suite, MethodChoice, SuiteOptions, SUITES};
use nearly::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Parametric,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Run verification suites for the commutator ideal of two generic matrices.
#[derive(Debug, Parser)]
#[command(name = "nearly", version)]
struct Cli {
    /// Suite to run.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    /// Matrix size.
    #[arg(long)]
    n: Option<usize>,
    /// Prime for witness computations.
    #[arg(long)]
    p: Option<u64>,
    /// Finite field size for numerical experiments.
    #[arg(long)]
    q: Option<u32>,
    /// Coefficient characteristic, 0 for the rationals.
    #[arg(long = "char")]
    characteristic: Option<u64>,
    /// Largest m for the binomial identities.
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Step budget for expansions and Gröbner runs [env: NEARLY_BUDGET].
    #[arg(long)]
    budget: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = SuiteOptions {
        n: cli.n,
        p: cli.p,
        q: cli.q,
        characteristic: cli.characteristic,
        max_m: cli.max_m,
        trials: cli.trials,
        seed: cli.seed,
        method: match cli.method {
            MethodArg::Direct => MethodChoice::Direct,
            MethodArg::Parametric => MethodChoice::Parametric,
            MethodArg::Both => MethodChoice::Both,
        },
        budget: cli.budget.unwrap_or_else(budget_from_env),
    };
    match run_suite(&cli.suite, &opts) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e @ (Error::InvalidArgument(_) | Error::NotPrime(_))) => {
            eprintln!("nearly: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("nearly: {e}");
            ExitCode::from(1)
        }
    }
}
