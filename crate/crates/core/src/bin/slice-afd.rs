use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slice_afd::afd::DEFAULT_ENERGY_TOL;
use slice_afd::cli::{self, DecomposeArgs, EvalArgs, RateArgs, Suite};

/// Adaptive Fourier decomposition of quaternionic slice regular functions.
#[derive(Parser)]
#[command(name = "slice-afd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy decomposition of a signal; writes a JSON report and an energy-decay CSV.
    Decompose(DecomposeCmd),
    /// Runs an invariant suite: algebra, kernels, tm, shift, afd, rate or all.
    Verify(VerifyCmd),
    /// Checks the M/sqrt(m) bound on an atomic signal.
    Rate(RateCmd),
    /// Evaluates a signal at a point.
    Eval(EvalCmd),
}

#[derive(Args)]
struct Search {
    /// Search settings (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Largest parameter modulus searched; overrides the config file.
    #[arg(long)]
    rho_max: Option<f64>,
    /// Truncation order; overrides the input file.
    #[arg(long)]
    trunc_order: Option<usize>,
}

#[derive(Args)]
struct DecomposeCmd {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 20)]
    iters: usize,
    #[arg(long, default_value_t = DEFAULT_ENERGY_TOL)]
    energy_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    search: Search,
}

#[derive(Args)]
struct VerifyCmd {
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RateCmd {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 50)]
    iters: usize,
    #[arg(long, default_value_t = 0.0)]
    energy_tol: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    search: Search,
}

#[derive(Args)]
struct EvalCmd {
    #[arg(long)]
    input: PathBuf,
    /// Point as w,x,y,z.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long)]
    trunc_order: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Decompose(c) => cli::cmd_decompose(
            &DecomposeArgs {
                input: c.input,
                iters: c.iters,
                energy_tol: c.energy_tol,
                config: c.search.config,
                out: c.out,
                csv: c.csv,
                rho_max: c.search.rho_max,
                trunc_order: c.search.trunc_order,
            },
            &mut stdout,
        ),
        Command::Verify(c) => c
            .suite
            .parse::<Suite>()
            .and_then(|suite| cli::cmd_verify(suite, c.seed, c.out.as_deref(), &mut stdout)),
        Command::Rate(c) => cli::cmd_rate(
            &RateArgs {
                input: c.input,
                iters: c.iters,
                energy_tol: c.energy_tol,
                config: c.search.config,
                csv: c.csv,
                rho_max: c.search.rho_max,
                trunc_order: c.search.trunc_order,
            },
            &mut stdout,
        ),
        Command::Eval(c) => cli::parse_quaternion(&c.point).and_then(|point| {
            cli::cmd_eval(
                &EvalArgs {
                    input: c.input,
                    point,
                    trunc_order: c.trunc_order,
                    out: c.out,
                },
                &mut stdout,
            )
        }),
    };
    let code = cli::exit_code(result, &mut std::io::stderr());
    ExitCode::from(code as u8)
}
