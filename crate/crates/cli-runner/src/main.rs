//! `rvq-lab`: scenario sweeps, finite-size simulation, and comparisons for
//! RVQ signature feedback in DS-CDMA.
//!
//! Exit codes: 0 success, 2 config error, 3 partial failure (some grid
//! points failed or a feedback target is unreachable), 4 internal error.

use clap::{Args, Parser, Subcommand};
use cli_runner::config::{self, apply_override, build_spec, parse_raw, Mode, SweepSpec};
use cli_runner::{feedback, sweep};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rvq-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Override [simulation].seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override [simulation].trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Override [output].path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace any `section.key` (repeatable).
    #[arg(long = "override", value_name = "SECTION.KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Large-system values on the grid.
    Analyze(CommonArgs),
    /// Finite-size Monte Carlo on the grid.
    Simulate(CommonArgs),
    /// Both, side by side, with finite-size-gap flags.
    Compare(CommonArgs),
    /// Smallest normalized feedback within the target of single-user.
    RequiredFeedback(CommonArgs),
}

fn load_spec(args: &CommonArgs, mode: Mode) -> Result<SweepSpec, config::ConfigError> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| config::ConfigError {
        key: "--config".into(),
        message: format!("{}: {e}", args.config.display()),
    })?;
    let mut raw = parse_raw(&text)?;
    for spec in &args.overrides {
        apply_override(&mut raw, spec)?;
    }
    if let Some(seed) = args.seed {
        raw.insert("simulation.seed".into(), seed.to_string());
    }
    if let Some(trials) = args.trials {
        raw.insert("simulation.trials".into(), trials.to_string());
    }
    if let Some(out) = &args.out {
        raw.insert("output.path".into(), out.display().to_string());
    }
    let mut spec = build_spec(&raw)?;
    spec.mode = mode;
    Ok(spec)
}

fn run_grid(args: &CommonArgs, mode: Mode) -> ExitCode {
    let spec = match load_spec(args, mode) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match sweep::run_sweep(&spec) {
        Ok(outcome) => outcome,
        Err(sweep::SweepError::Config(e)) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(4);
        }
    };
    let written = match &spec.out_path {
        Some(path) => sweep::write_csv(path, &outcome).map(|_| {
            eprintln!("wrote {} rows to {}", outcome.rows.len(), path.display());
        }),
        None => {
            print!("{}", sweep::csv_string(&outcome));
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return ExitCode::from(4);
    }
    if outcome.any_failed {
        eprintln!("warning: some grid points failed; see ERR cells");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

fn run_required_feedback(args: &CommonArgs) -> ExitCode {
    let spec = match load_spec(args, Mode::Analyze) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    match feedback::required_feedback(&spec.scenario, spec.target_offset_db) {
        Ok(bbar) => {
            println!("required_bbar = {bbar}");
            if let Some(path) = &spec.out_path {
                let text = format!(
                    "kbar,snr_db,receiver,target_offset_db,required_bbar\n{},{},{},{},{}\n",
                    spec.scenario.kbar,
                    spec.scenario.snr_db,
                    match spec.scenario.receiver {
                        mc_simulator::Receiver::Mmse => "mmse",
                        mc_simulator::Receiver::MatchedFilter => "mf",
                    },
                    spec.target_offset_db,
                    bbar
                );
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("{e}");
                    return ExitCode::from(4);
                }
            }
            ExitCode::SUCCESS
        }
        Err(feedback::FeedbackError::Unreachable { gap_db }) => {
            eprintln!("unreachable: ceiling is {gap_db:.3} dB below the target");
            ExitCode::from(3)
        }
        Err(feedback::FeedbackError::Solve(e)) => {
            eprintln!("{e}");
            ExitCode::from(4)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(args) => run_grid(args, Mode::Analyze),
        Command::Simulate(args) => run_grid(args, Mode::Simulate),
        Command::Compare(args) => run_grid(args, Mode::Compare),
        Command::RequiredFeedback(args) => run_required_feedback(args),
    }
}
