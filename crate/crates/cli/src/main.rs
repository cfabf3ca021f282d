use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperchar::commands::{self, Theorem, VerifyMode, VerifyOptions};
use hyperchar::io::{read_law, read_shape, to_json, write_file, write_law, write_samples_csv};
use hyperchar::sweep::{self, SweepCheck, SweepSpec};
use hyperchar::syntax::{parse_scalar, parse_scalar_as, parse_scalar_list};
use hyperchar::CliError;
use hyperchar_core::monte_carlo::DEFAULT_PERMUTATIONS;
use hyperchar_core::{Kind, Matrix, Scalar};

/// Degeneracy and counterexample checks for complex and quaternion
/// Gaussian linear forms.
///
/// Exit status: 0 on success, 1 when the theory rules the request out or a
/// verification fails, 2 on invalid input.
#[derive(Parser)]
#[command(name = "hyperchar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Complex,
    Quaternion,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Complex => Kind::Complex,
            KindArg::Quaternion => Kind::Quaternion,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the verdict for a coefficient as JSON.
    Classify {
        /// Coefficient, e.g. `-2`, `1+i`, `1+0i+2j+0k`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value = "sd")]
        theorem: Theorem,
        /// Read bare reals and `a+bi` as this kind.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Build a non-narrow Gaussian counterexample and report its residual.
    Counterexample {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value = "sd")]
        mode: Theorem,
        /// JSON matrix file for `B`; defaults to a preset nonscalar shape.
        #[arg(long)]
        shape: Option<PathBuf>,
        /// Directory that receives law1.json and law2.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Construct, check analytically, and test by simulation.
    Verify {
        #[arg(value_enum)]
        mode: VerifyMode,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Comma-separated positive weights (prop1).
        #[arg(long, allow_hyphen_values = true)]
        sigmas: Option<String>,
        /// Comma-separated coefficients of the second form (prop1).
        #[arg(long, allow_hyphen_values = true)]
        betas: Option<String>,
        #[arg(long)]
        shape: Option<PathBuf>,
        /// Sample size; permutation tests use the first 2000 rows at most.
        #[arg(long, default_value_t = 200_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PERMUTATIONS)]
        permutations: usize,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Tabulate verdicts, criterion norms and residuals over a coefficient grid.
    Sweep {
        #[arg(long, value_enum, default_value = "complex")]
        kind: KindArg,
        /// Range `LO:HI` for every component.
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "classify,residual")]
        checks: Vec<SweepCheck>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size for the montecarlo check.
        #[arg(long, default_value_t = 20_000)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Draw from a law file and write the draws as CSV.
    Sample {
        #[arg(long)]
        law: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn scalar(text: &str, kind: Option<KindArg>) -> Result<Scalar, CliError> {
    Ok(match kind {
        Some(k) => parse_scalar_as(text, k.into())?,
        None => parse_scalar(text)?,
    })
}

fn shape(path: Option<&Path>) -> Result<Option<Matrix>, CliError> {
    path.map(read_shape).transpose()
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required for this mode")))
}

fn parse_sigmas(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',').map(|s| s.parse::<f64>().map_err(|_| CliError::Usage(format!("invalid sigma {s:?}")))).collect()
}

fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("grid must be LO:HI, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?))
}

/// Writes to the file if given, else to stdout.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Classify { alpha, theorem, kind } => {
            let report = commands::classify(scalar(&alpha, kind)?, theorem)?;
            print!("{}", to_json(&report));
            Ok(0)
        }
        Command::Counterexample { alpha, mode, shape: shape_path, out, kind } => {
            let report = commands::counterexample(scalar(&alpha, kind)?, mode, shape(shape_path.as_deref())?)?;
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                write_law(&dir.join("law1.json"), &report.law1)?;
                write_law(&dir.join("law2.json"), &report.law2)?;
            }
            print!("{}", to_json(&report));
            Ok(0)
        }
        Command::Verify { mode, alpha, sigmas, betas, shape: shape_path, n, seed, permutations, kind } => {
            let options = VerifyOptions { n, seed, permutations, ..VerifyOptions::default() };
            let b = shape(shape_path.as_deref())?;
            let report = match mode {
                VerifyMode::Sd => commands::verify_sd(scalar(required(&alpha, "alpha")?, kind)?, b, &options)?,
                VerifyMode::Heyde => commands::verify_heyde(scalar(required(&alpha, "alpha")?, kind)?, b, &options)?,
                VerifyMode::Prop1 => {
                    let sigmas = parse_sigmas(required(&sigmas, "sigmas")?)?;
                    let betas = parse_scalar_list(required(&betas, "betas")?, kind.map(Kind::from))?;
                    commands::verify_prop1(sigmas, betas, b, &options)?
                }
            };
            print!("{}", to_json(&report));
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Sweep { kind, grid, step, checks, seed, n, out, format } => {
            let (lo, hi) = parse_range(&grid)?;
            let spec = SweepSpec { kind: kind.into(), lo, hi, step, checks, seed, n };
            let rows = sweep::run(&spec)?;
            match format {
                Format::Csv => sweep::write_csv(&rows, output(out.as_deref())?)?,
                Format::Json => match out {
                    Some(p) => write_file(&p, &to_json(&rows))?,
                    None => print!("{}", to_json(&rows)),
                },
            }
            Ok(0)
        }
        Command::Sample { law, n, seed, out } => {
            let batch = read_law(&law)?.sample(n, seed)?;
            write_samples_csv(&batch, output(out.as_deref())?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
