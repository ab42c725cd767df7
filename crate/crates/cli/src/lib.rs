//! Command dispatch for the `starconv` binary.
//!
//! Exit codes: `0` when every law passes (or the verdict holds), `1` when a
//! law fails (or the verdict is false), `2` on usage and parse errors.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use starconv::convolution::Verdict;
use starconv::gallery::{self, GalleryError};
use starconv::structures::StructureFile;
use starconv::{
    convolve, is_convex, is_monoid, Carrier, ConvMode, ConvolutionError, Functor, PromonoidalStructure,
    DEFAULT_TOLERANCE,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "starconv", version, about = "Law checks and convolution over finite promonoidal structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every law checker and print one line per law.
    Check {
        /// Fixture name or structure file; prefix a path with `./` to force file mode.
        input: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Carrier for fixtures that accept several; must match a file's carrier.
        #[arg(long)]
        carrier: Option<Carrier>,
    },
    /// Convolve two functions and print the result as a function file.
    Convolve {
        input: String,
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long = "g")]
        g: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        carrier: Option<Carrier>,
    },
    /// Decide whether a function is a convolution monoid, or convex.
    Monoid {
        input: String,
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long, value_enum)]
        mode: MonoidArg,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        carrier: Option<Carrier>,
    },
    /// Write a fixture as a structure file (to standard output without `--emit`).
    Gallery {
        fixture: String,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        carrier: Option<Carrier>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Upper,
    Lower,
}

impl From<ModeArg> for ConvMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Upper => ConvMode::Upper,
            ModeArg::Lower => ConvMode::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonoidArg {
    Upper,
    Lower,
    Convex,
}

/// Anything that ends the run with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl fmt::Display) -> UsageError {
    UsageError(msg.to_string())
}

fn io_error(path: &Path, e: io::Error) -> UsageError {
    usage(format!("{}: {e}", path.display()))
}

/// Fixture names win over paths unless the input starts with `./`.
pub fn load_structure(input: &str, carrier: Option<Carrier>) -> Result<PromonoidalStructure, UsageError> {
    if !input.starts_with("./") {
        match gallery::fixture_with_carrier(input, carrier) {
            Ok(s) => return Ok(s),
            Err(GalleryError::UnknownFixture(_)) if Path::new(input).is_file() => {}
            Err(e) => return Err(usage(e)),
        }
    }
    let path = Path::new(input);
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let s = PromonoidalStructure::from_json_str(&text).map_err(|e| usage(format!("{input}: {e}")))?;
    match carrier {
        Some(c) if c != s.carrier() => Err(usage(format!(
            "{input}: file carrier is {}, but --carrier {c} was given",
            s.carrier()
        ))),
        _ => Ok(s),
    }
}

fn load_function(path: &Path, s: &PromonoidalStructure) -> Result<Functor, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Functor::from_json_str(s, &text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn check_tol(tol: f64) -> Result<f64, UsageError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(usage(format!("tolerance must be finite and non-negative, got {tol}")))
    }
}

fn conv_err(e: ConvolutionError) -> UsageError {
    usage(e)
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

/// Parses `args` (program name first) and runs the command. Usage and parse
/// errors go to `err`; the return value is the process exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return u8::try_from(e.exit_code()).unwrap_or(EXIT_USAGE);
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs one command, writing its report to `out`, and returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, UsageError> {
    let w = |e: io::Error| usage(format!("write failed: {e}"));
    match cli.command {
        Command::Check {
            input,
            tol,
            format,
            carrier,
        } => {
            let tol = check_tol(tol)?;
            let s = load_structure(&input, carrier)?;
            let outcomes = s.check_all(tol).map_err(usage)?;
            match format {
                Format::Text => {
                    for o in &outcomes {
                        writeln!(out, "{}: {}", o.law, o.status()).map_err(w)?;
                        for wit in o.witnesses() {
                            writeln!(out, "  {wit}").map_err(w)?;
                        }
                    }
                }
                Format::Json => {
                    let report: Vec<_> = outcomes.iter().map(|o| o.to_json()).collect();
                    writeln!(out, "{}", pretty(&serde_json::Value::Array(report))).map_err(w)?;
                }
            }
            Ok(if outcomes.iter().any(|o| o.failed()) {
                EXIT_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Convolve {
            input,
            f,
            g,
            mode,
            carrier,
        } => {
            let s = load_structure(&input, carrier)?;
            let f = load_function(&f, &s)?;
            let g = load_function(&g, &s)?;
            let h = convolve(&f, &g, &s, mode.into()).map_err(conv_err)?;
            writeln!(out, "{}", pretty(&h.to_json(&s))).map_err(w)?;
            Ok(EXIT_OK)
        }
        Command::Monoid {
            input,
            f,
            mode,
            tol,
            format,
            carrier,
        } => {
            let tol = check_tol(tol)?;
            let s = load_structure(&input, carrier)?;
            let f = load_function(&f, &s)?;
            let verdict = match mode {
                MonoidArg::Upper => is_monoid(&f, &s, ConvMode::Upper, tol),
                MonoidArg::Lower => is_monoid(&f, &s, ConvMode::Lower, tol),
                MonoidArg::Convex => is_convex(&f, &s, tol),
            }
            .map_err(conv_err)?;
            write_verdict(out, &verdict, format).map_err(w)?;
            Ok(if verdict.holds { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Gallery { fixture, emit, carrier } => {
            let s = gallery::fixture_with_carrier(&fixture, carrier).map_err(usage)?;
            let text = StructureFile::from_structure(&s).to_json_string();
            match emit {
                Some(path) => fs::write(&path, text + "\n").map_err(|e| io_error(&path, e))?,
                None => writeln!(out, "{text}").map_err(w)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_verdict(out: &mut dyn Write, verdict: &Verdict, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", pretty(&verdict.to_json())),
        Format::Text => {
            writeln!(out, "{}", verdict.holds)?;
            if let Some(wit) = &verdict.witness {
                writeln!(
                    out,
                    "  at {} ({}): {} vs {}",
                    wit.label, wit.condition, wit.left, wit.right
                )?;
            }
            Ok(())
        }
    }
}
