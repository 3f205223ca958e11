use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dorth_cli::run::input_error;
use dorth_cli::{cmd_run, ExitKind, Mode, RawConfig, RunConfig, Suite};

/// Exact verification of 2-orthogonal eigenpolynomials of third-order operators.
///
/// Exit codes: 0 passed, 1 identity violated, 2 hypotheses unmet, 3 input error.
#[derive(Parser)]
#[command(name = "dorth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lowering order k and the lambda sequence.
    Classify(Common),
    /// Monic eigenpolynomials P_0..P_nmax.
    Eigensolve(Common),
    /// Hahn-classicality when a_2 = 0.
    VerifyTheorem4(Common),
    /// Hahn-classicality when a_3 = tau a_2.
    VerifyTheorem5(Common),
    /// Dual-sequence and J-expansion identities.
    VerifyIdentities(Common),
    /// Is the derivative sequence 2-orthogonal?
    Hahn(Common),
    /// Seeded random draws of a theorem suite.
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Where to write the JSON report (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    draws: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Moment order of the dual sequence.
    #[arg(long)]
    order: Option<usize>,
    /// Moment horizon of the identity checks.
    #[arg(long)]
    check_order: Option<usize>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
}

fn split(cmd: Command) -> (Mode, Common) {
    match cmd {
        Command::Classify(c) => (Mode::Classify, c),
        Command::Eigensolve(c) => (Mode::Eigensolve, c),
        Command::VerifyTheorem4(c) => (Mode::VerifyTheorem4, c),
        Command::VerifyTheorem5(c) => (Mode::VerifyTheorem5, c),
        Command::VerifyIdentities(c) => (Mode::VerifyIdentities, c),
        Command::Hahn(c) => (Mode::Hahn, c),
        Command::Sweep(c) => (Mode::Sweep, c),
    }
}

fn load(mode: Mode, args: &Common) -> Result<RunConfig, String> {
    let mut raw = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            RawConfig::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RawConfig::default(),
    };
    raw.seed = args.seed.or(raw.seed);
    raw.draws = args.draws.or(raw.draws);
    raw.n_max = args.nmax.or(raw.n_max);
    raw.moment_order = args.order.or(raw.moment_order);
    raw.check_order = args.check_order.or(raw.check_order);
    raw.suite = args.suite.or(raw.suite);
    RunConfig::resolve(mode, raw).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = split(cli.command);
    let report = match load(mode, &args) {
        Ok(cfg) => cmd_run(&cfg),
        Err(msg) => input_error(mode, msg),
    };
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(ExitKind::InputError.code() as u8);
            }
        }
        None => print!("{json}"),
    }
    println!("{}", report.verdict);
    ExitCode::from(report.exit.code() as u8)
}
