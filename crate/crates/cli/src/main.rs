//! `nearto`: closed-form inverses, bounds and fixed-point solves for
//! near-Toeplitz tridiagonal matrices, as JSON or CSV reports.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nearto::experiments::TableId;

use crate::report::ReportRecord;

#[derive(Parser)]
#[command(name = "nearto", version, about, long_about = None)]
struct Cli {
    /// Report format; `reproduce` defaults to CSV, everything else to JSON
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Also write the report to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
pub struct MatrixArgs {
    /// Matrix order (at least 4)
    #[arg(long)]
    pub n: usize,
    /// Interior diagonal, 2 or -2
    #[arg(long, allow_hyphen_values = true)]
    pub b: i32,
    /// Corner entries
    #[arg(long, allow_hyphen_values = true)]
    pub btilde: f64,
    /// Off-diagonal scale of the finite-difference matrix
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub chat: f64,
}

#[derive(Subcommand)]
enum Command {
    /// One entry of the inverse (1-based indices)
    Entry {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// The full inverse
    Invert {
        #[command(flatten)]
        m: MatrixArgs,
    },
    Trace {
        #[command(flatten)]
        m: MatrixArgs,
    },
    /// Row sums of the inverse, or a single one with --i
    Rowsum {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Infinity norm of the inverse
    Norm {
        #[command(flatten)]
        m: MatrixArgs,
    },
    /// Lower and upper bounds on the infinity norm
    Bounds {
        #[command(flatten)]
        m: MatrixArgs,
    },
    /// Sign pattern of the inverse (b = 2, btilde <= 0)
    Signs {
        #[command(flatten)]
        m: MatrixArgs,
    },
    Singular {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, default_value_t = nearto::params::SINGULAR_TOL)]
        tol: f64,
    },
    /// Fixed-point solve of u'' = f(u) on a uniform grid
    SolveBvp(commands::BvpArgs),
    /// Recompute a reference table with per-row pass/fail
    Reproduce {
        #[arg(value_parser = parse_table)]
        table: TableId,
    },
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|e: nearto::Error| e.to_string())
}

fn run(cli: &Cli) -> Result<String, nearto::Error> {
    let default_format = match cli.command {
        Command::Reproduce { .. } => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.format.unwrap_or(default_format);

    if let Command::Reproduce { table } = cli.command {
        return match format {
            Format::Csv => commands::reproduce_csv(table),
            Format::Json => Ok(commands::reproduce_record(table)?.to_json()),
        };
    }

    let record: ReportRecord = match &cli.command {
        Command::Entry { m, i, j } => commands::entry(m, *i, *j)?,
        Command::Invert { m } => commands::invert(m)?,
        Command::Trace { m } => commands::trace(m)?,
        Command::Rowsum { m, i } => commands::rowsum(m, *i)?,
        Command::Norm { m } => commands::norm(m)?,
        Command::Bounds { m } => commands::bounds(m)?,
        Command::Signs { m } => commands::signs(m)?,
        Command::Singular { m, tol } => commands::singular(m, *tol)?,
        Command::SolveBvp(args) => commands::solve_bvp(args)?,
        Command::Reproduce { .. } => unreachable!(),
    };
    Ok(match format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv(),
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    std::io::stdout().write_all(text.as_bytes())?;
    if let Some(path) = out {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(e) => (commands::error_object(&e), commands::exit_code(&e)),
    };
    if let Err(e) = emit(&text, cli.out.as_ref()) {
        eprintln!("nearto: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
