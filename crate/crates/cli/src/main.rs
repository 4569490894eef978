//! `mnesor`: law checker, operation tables, expression calculator and
//! pendulum simulator.
//!
//! Exit status: 0 on success, 1 on a runtime failure (failed law, overflow,
//! I/O, fall-over under `--strict`), 2 on a usage or validation error.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mnesor::ControllerKind;

#[derive(Parser)]
#[command(
    name = "mnesor",
    version,
    about = "Flat mnesor algebra and pendulum control"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Mnesor,
    Semiring,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableOp {
    Add,
    Mul,
}

#[derive(Clone, Copy, ValueEnum)]
enum ControllerArg {
    Pd,
    Mnesor,
}

impl From<ControllerArg> for ControllerKind {
    fn from(c: ControllerArg) -> Self {
        match c {
            ControllerArg::Pd => ControllerKind::Pd,
            ControllerArg::Mnesor => ControllerKind::Mnesor,
        }
    }
}

#[derive(clap::Args)]
struct Window {
    #[arg(long, allow_hyphen_values = true)]
    min_grade: i64,
    #[arg(long, allow_hyphen_values = true)]
    max_grade: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebraic laws exhaustively over a grade window.
    Laws {
        #[command(flatten)]
        window: Window,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the addition or multiplication table over a grade window.
    Table {
        #[arg(value_enum)]
        op: TableOp,
        #[command(flatten)]
        window: Window,
    },
    /// Evaluate a mnesor expression and print its canonical form.
    Eval { expr: String },
    /// Run one closed-loop simulation.
    Simulate {
        /// Overrides `sim.controller` from the config.
        #[arg(long, value_enum)]
        controller: Option<ControllerArg>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Trace CSV.
        #[arg(long)]
        out: PathBuf,
        /// Metrics JSON; defaults to the trace path with a `.json` extension.
        #[arg(long)]
        metrics: Option<PathBuf>,
        /// Exit 1 unless the run completes.
        #[arg(long)]
        strict: bool,
    },
    /// Run two simulations side by side.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Separate config for the right-hand run; defaults to `--config`.
        #[arg(long)]
        right_config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pd")]
        left: ControllerArg,
        #[arg(long, value_enum, default_value = "mnesor")]
        right: ControllerArg,
        #[arg(long)]
        out_dir: PathBuf,
        /// Skip the SVG plot.
        #[arg(long)]
        no_plot: bool,
        /// Exit 1 unless both runs complete.
        #[arg(long)]
        strict: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Laws {
            window,
            suite,
            json,
        } => commands::laws(window.min_grade, window.max_grade, suite, json),
        Command::Table { op, window } => commands::table(op, window.min_grade, window.max_grade),
        Command::Eval { expr } => commands::eval(&expr),
        Command::Simulate {
            controller,
            config,
            out,
            metrics,
            strict,
        } => commands::simulate(
            controller.map(Into::into),
            config.as_deref(),
            &out,
            metrics.as_deref(),
            strict,
        ),
        Command::Compare {
            config,
            right_config,
            left,
            right,
            out_dir,
            no_plot,
            strict,
        } => commands::compare(commands::CompareArgs {
            config: config.as_deref(),
            right_config: right_config.as_deref(),
            left: left.into(),
            right: right.into(),
            out_dir: &out_dir,
            plot: !no_plot,
            strict,
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
