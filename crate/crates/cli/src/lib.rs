//! The `jthresh` command line: parses a JSON input document, dispatches one
//! command and renders the result.
//!
//! Exit codes: 0 on success (whatever the status of the result), 2 on invalid
//! input, 1 on internal errors. Failures print a single line
//! `error: <Code>: <message>`.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jthresh::Error;

pub use report::ResultDocument;

pub const DIGITS_VAR: &str = "JTHRESH_DECIMAL_DIGITS";
pub const DEFAULT_DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "jthresh",
    version,
    about = "Exact J-equation thresholds on surfaces and toric varieties"
)]
struct Cli {
    /// Input document; read from stdin when absent or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Class labels from the document, or inline coordinates such as `2,-1`.
/// Missing flags fall back to the document's `query`, then to a class named after the flag.
#[derive(Args, Debug, Default, Clone)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Threshold value, audit constants and certification status.
    Gamma(Pair),
    /// Largest `d` with `theta - d omega` nef.
    Seshadri(Pair),
    /// Smallest `d` with `d omega - theta` Kähler.
    Sigma(Pair),
    /// Whether `C omega - theta` is Kähler.
    Solvable(Pair),
    /// The numerator along `(1 - t) a + t theta` and a sweep at `t = k/N`.
    Path {
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        samples: Option<u32>,
    },
    /// Boundary ray of the stable part of the segment from `a` to `theta`.
    StableCone {
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Orbit-closure scores on a smooth complete fan.
    ToricGamma(Pair),
    /// The alpha-invariant criterion for constant scalar curvature metrics.
    Csck {
        #[arg(long = "minus-c1", allow_hyphen_values = true)]
        minus_c1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Built-in examples: ross, hirzebruch, perfect_lightcone, blowup_path.
    Catalog {
        name: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long = "sC")]
        s_c: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        rank: Option<String>,
        /// Print the entry as an input document instead of a report.
        #[arg(long)]
        export: bool,
    },
    /// Validate the input document.
    Validate,
}

#[derive(Debug)]
pub(crate) enum Failure {
    Input { code: String, message: String },
    Internal(String),
}

impl Failure {
    pub(crate) fn input(code: &str, message: impl Into<String>) -> Self {
        Failure::Input {
            code: code.to_string(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MixedRadicand(..) | Error::ZeroPolynomial | Error::DegreeTooHigh(_) => {
                Failure::Internal(format!("{}: {}", e.code(), e))
            }
            _ => Failure::input(e.code(), e.to_string()),
        }
    }
}

pub(crate) struct Ctx<'a> {
    pub input: Option<PathBuf>,
    pub stdin: &'a [u8],
    pub digits: usize,
}

/// Reads `JTHRESH_DECIMAL_DIGITS`, falling back to 12 when unset or malformed.
pub fn digits_from_env() -> usize {
    std::env::var(DIGITS_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&d| (1..=40).contains(&d))
        .unwrap_or(DEFAULT_DIGITS)
}

/// Runs one command. `args` excludes the program name.
pub fn run<I, T>(args: I, stdin: &[u8]) -> (i32, Vec<u8>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_digits(args, stdin, digits_from_env())
}

pub fn run_with_digits<I, T>(args: I, stdin: &[u8], digits: usize) -> (i32, Vec<u8>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("jthresh")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                return (0, e.to_string().into_bytes());
            }
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("")
                .trim()
                .to_string();
            let first = first.strip_prefix("error: ").unwrap_or(&first).to_string();
            return (2, format!("error: Usage: {}\n", first).into_bytes());
        }
    };
    let ctx = Ctx {
        input: cli.input.clone(),
        stdin,
        digits,
    };
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli, &ctx)))
        .unwrap_or_else(|_| Err(Failure::Internal("unexpected panic".into())));
    match outcome {
        Ok(bytes) => (0, bytes),
        Err(Failure::Input { code, message }) => (
            2,
            format!("error: {}: {}\n", code, one_line(&message)).into_bytes(),
        ),
        Err(Failure::Internal(m)) => (
            1,
            format!("error: Internal: {}\n", one_line(&m)).into_bytes(),
        ),
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Vec<u8>, Failure> {
    let path_command = matches!(cli.command, Command::Path { .. });
    if cli.format == Format::Csv && !path_command {
        return Err(Failure::input(
            "BadFormat",
            "csv output is only available for `path`",
        ));
    }
    if let Command::Catalog {
        export: true,
        name,
        g,
        s_c,
        t,
        a,
        rank,
    } = &cli.command
    {
        let params = commands::catalog_params(name, g, s_c, t, a, rank)?;
        return commands::catalog_export(name, &params);
    }
    let report = match &cli.command {
        Command::Gamma(p) => commands::gamma(ctx, p)?,
        Command::Seshadri(p) => commands::seshadri(ctx, p)?,
        Command::Sigma(p) => commands::sigma(ctx, p)?,
        Command::Solvable(p) => commands::solvable(ctx, p)?,
        Command::Path { theta, a, samples } => {
            let (doc, rows) = commands::path(ctx, theta, a, *samples)?;
            if cli.format == Format::Csv {
                return Ok(report::path_csv(&rows));
            }
            doc
        }
        Command::StableCone { theta, a } => commands::stable_cone(ctx, theta, a)?,
        Command::ToricGamma(p) => commands::toric_gamma(ctx, p)?,
        Command::Csck {
            minus_c1,
            omega,
            alpha,
        } => commands::csck(ctx, minus_c1, omega, alpha)?,
        Command::Catalog {
            name,
            g,
            s_c,
            t,
            a,
            rank,
            ..
        } => commands::catalog(ctx, name, g, s_c, t, a, rank)?,
        Command::Validate => commands::validate(ctx)?,
    };
    Ok(match cli.format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    }
    .into_bytes())
}
