//! Command-line front end: expression parsing and the `paraquant` commands.

pub mod expr;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use paraquant::quantization::{ladder, ladder_dag, q_power_n, quantize_words, rescale_b};
use paraquant::suite::full_report;
use paraquant::symbols::{lower_symbol, quaternion_demo_with, upper_symbol};
use paraquant::{Deformation, FockOperator, Ordering, ParaPoly, VerificationReport, DEFAULT_TOLERANCE};
use thiserror::Error;

pub use expr::{parse, Expression, ParseError};

/// Exit status for success, failed verification, and bad input.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Random pairs drawn by `demo quaternion`.
const DEMO_SAMPLES: usize = 100;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] paraquant::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    Antinormal,
    Left,
    Right,
}

impl From<OrderingArg> for Ordering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Antinormal => Ordering::Antinormal,
            OrderingArg::Left => Ordering::Left,
            OrderingArg::Right => Ordering::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    #[value(name = "theta")]
    Theta,
    #[value(name = "bartheta")]
    BarTheta,
    #[value(name = "Q")]
    Q,
    #[value(name = "Qbar")]
    QBar,
    #[value(name = "B")]
    B,
    #[value(name = "Bdag")]
    BDag,
}

#[derive(Debug, Parser)]
#[command(name = "paraquant", version, about = "Coherent-state quantization of paragrassmann algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every relation and identity for one k.
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Quantize an expression into a Fock-space matrix.
    Quantize {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "antinormal")]
        ordering: OrderingArg,
    },
    /// Recover the symbol of a single-mode matrix.
    Dequantize {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Star product of two single-mode expressions.
    Star {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Lower symbol (θ|A|θ) of a single-mode matrix.
    LowerSymbol {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Print a closed-form operator.
    Matrix {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long, default_value_t = 1)]
        mode: usize,
    },
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Quaternion units as k = 4 symbols.
    Quaternion,
}

enum Output {
    Report(VerificationReport),
    Matrix(FockOperator),
    Poly(ParaPoly),
}

fn read_matrix(path: &Path, d: &Deformation) -> Result<FockOperator, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let m = FockOperator::from_json(&text)?;
    if m.deformation() != d {
        return Err(paraquant::Error::DeformationMismatch {
            left: d.k(),
            right: m.deformation().k(),
        }
        .into());
    }
    Ok(m)
}

fn quantize_expr(text: &str, d: &Deformation, modes: usize, ord: Ordering) -> Result<FockOperator, CliError> {
    let e = parse(text, modes)?;
    let words = e.expand(d.kprime()).words();
    Ok(quantize_words(d, modes, &words, ord)?)
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    Ok(match &cli.command {
        Command::Verify { k, d, tolerance } => {
            if !(*tolerance >= 0.0) {
                return Err(CliError::Usage(format!("tolerance must be non-negative, got {tolerance}")));
            }
            Output::Report(full_report(&Deformation::new(*k)?, *d, *tolerance, cli.seed)?)
        }
        Command::Quantize { k, d, expr, ordering } => {
            Output::Matrix(quantize_expr(expr, &Deformation::new(*k)?, *d, (*ordering).into())?)
        }
        Command::Dequantize { k, matrix } => {
            let def = Deformation::new(*k)?;
            Output::Poly(upper_symbol(&read_matrix(matrix, &def)?)?)
        }
        Command::Star { k, lhs, rhs } => {
            let def = Deformation::new(*k)?;
            let a = quantize_expr(lhs, &def, 1, Ordering::Antinormal)?;
            let b = quantize_expr(rhs, &def, 1, Ordering::Antinormal)?;
            Output::Poly(upper_symbol(&(&a * &b))?)
        }
        Command::LowerSymbol { k, matrix } => {
            let def = Deformation::new(*k)?;
            Output::Poly(lower_symbol(&read_matrix(matrix, &def)?)?)
        }
        Command::Matrix { k, d, op, mode } => {
            let def = Deformation::new(*k)?;
            let single = || {
                if *d == 1 && *mode == 1 {
                    Ok(())
                } else {
                    Err(CliError::Usage("B and Bdag are defined for a single mode".into()))
                }
            };
            Output::Matrix(match op {
                OpArg::Theta => ladder(&def, *d, *mode)?,
                OpArg::BarTheta => ladder_dag(&def, *d, *mode)?,
                OpArg::Q => q_power_n(&def, *d, 1, *mode)?,
                OpArg::QBar => q_power_n(&def, *d, -1, *mode)?,
                OpArg::B => {
                    single()?;
                    rescale_b(&def).0
                }
                OpArg::BDag => {
                    single()?;
                    rescale_b(&def).1
                }
            })
        }
        Command::Demo { which: Demo::Quaternion } => {
            Output::Report(quaternion_demo_with(cli.seed, DEMO_SAMPLES, DEFAULT_TOLERANCE))
        }
    })
}

fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Report(r), Format::Json) => r.to_json(),
        (Output::Report(r), Format::Pretty) => r.to_string(),
        (Output::Matrix(m), Format::Json) => m.to_json(),
        (Output::Matrix(m), Format::Pretty) => m.to_string().trim_end().to_string(),
        (Output::Poly(p), Format::Json) => p.to_json(),
        (Output::Poly(p), Format::Pretty) => p.to_string(),
    }
}

/// Runs one command line and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", render(&out, cli.format));
            match out {
                Output::Report(r) if !r.all_pass() => EXIT_FAILED,
                _ => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
