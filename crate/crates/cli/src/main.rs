mod commands;
mod complex;
mod report;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use report::OutputFormat;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use lowlying::SymmetryGroup;

#[derive(Debug, Parser)]
#[command(name = "lowlying", version, about = "Reproducing kernels, non-vanishing proportions and sharp constants for the five symmetry types")]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Decimal digits in table and CSV output.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the reproducing kernel K(w, z).
    Kernel(commands::KernelArgs),
    /// Non-vanishing proportion P(t) at a point or over a range.
    Proportion(commands::ProportionArgs),
    /// Bound xi0 for the height of the first low-lying zero.
    Xi0(commands::Xi0Args),
    /// Sharp embedding constants into the Paley-Wiener space.
    Embedding(commands::EmbeddingArgs),
    /// Samples of the one- or two-delta extremal function.
    Extremizer(commands::ExtremizerArgs),
}

pub(crate) fn parse_group(s: &str) -> Result<SymmetryGroup, String> {
    s.parse::<SymmetryGroup>().map_err(|_| format!("unknown group '{s}', expected one of u, sp, o, so-even, so-odd"))
}

pub(crate) fn parse_complex_arg(s: &str) -> Result<Complex64, String> {
    complex::parse_complex(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Kernel(a) => commands::kernel(a),
        Command::Proportion(a) => commands::proportion(a),
        Command::Xi0(a) => commands::xi0(a),
        Command::Embedding(a) => commands::embedding(a),
        Command::Extremizer(a) => commands::extremizer(a),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = match report.render(cli.out.format, cli.out.digits as usize) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
