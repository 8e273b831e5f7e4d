//! Command-line front end: counting tables, classification of states given
//! as JSON, parameter canonicalization and the property self-test.
//!
//! Exit codes: 0 success, 1 failed property or inequivalent states, 2 usage
//! or input error, 3 state not truly tripartite, 4 eigenvalues outside the
//! Gaussian rationals.

pub mod document;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use slocc_core::catalog::catalog_document;
use slocc_core::counting::{build_table, omega_total};
use slocc_core::nonlocal::{canonical_params, orbit, ParamVector};
use slocc_core::pencil::{class_label, ClassLabel};
use thiserror::Error;

pub use document::StateDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_TRIPARTITE: i32 = 3;
pub const EXIT_OUT_OF_SCOPE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("state is not truly tripartite")]
    NotTrueTripartite,
    #[error("{0}")]
    OutOfScope(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::NotTrueTripartite => EXIT_NOT_TRIPARTITE,
            CliError::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
        }
    }
}

impl From<slocc_core::Error> for CliError {
    fn from(e: slocc_core::Error) -> Self {
        match e {
            slocc_core::Error::NotTrueTripartite => CliError::NotTrueTripartite,
            slocc_core::Error::IrreducibleRemainder(d) => CliError::OutOfScope(format!(
                "a degree-{d} part of the spectrum has no Gaussian-rational roots"
            )),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "slocc", version, about = "Exact SLOCC classification of 2xMxN pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of true tripartite SLOCC classes of 2xMxN states
    Count { m: usize, n: usize },
    /// Class counts for 2 <= M, N <= MAX
    Table {
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Print the class label of a state document
    Classify { path: PathBuf },
    /// Least member of a parameter vector's symmetry orbit, e.g. "[2, 3]"
    CanonicalParams {
        params: String,
        /// The anchor eigenvalue is simple (N = m + 1)
        #[arg(long)]
        extra_h: bool,
    },
    /// All members of a parameter vector's symmetry orbit
    Orbit {
        params: String,
        #[arg(long)]
        extra_h: bool,
    },
    /// Decide whether two state documents are SLOCC equivalent
    Equiv { a: PathBuf, b: PathBuf },
    /// All class families of 2xMxN states with representatives
    Catalog {
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = CatalogFormat::Json)]
        format: CatalogFormat,
    },
    /// Run the property suite
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random ILOs per catalog representative
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogFormat {
    Json,
    Text,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::NotTrueTripartite) => {
            let _ = writeln!(out, "{{\"label\":\"not-true-tripartite\"}}");
            EXIT_NOT_TRIPARTITE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dims(m: usize, n: usize) -> Result<(), CliError> {
    if m < 2 || n < 2 {
        return Err(CliError::Input(format!("dimensions must be at least 2, got {m} and {n}")));
    }
    Ok(())
}

fn params_arg(text: &str, extra_h: bool) -> Result<ParamVector, CliError> {
    Ok(text.parse::<ParamVector>()?.with_extra_h(extra_h))
}

fn label_of(path: &Path) -> Result<ClassLabel, CliError> {
    let state = StateDocument::read(path)?.to_state()?;
    Ok(class_label(&state)?)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Count { m, n } => {
            dims(m, n)?;
            writeln!(out, "{}", omega_total(m, n)?)?;
        }
        Command::Table { max, format } => {
            dims(max, max)?;
            let t = build_table(max, max)?;
            out.write_all(match format {
                TableFormat::Tsv => t.to_tsv(),
                TableFormat::Text => t.to_text(),
            }
            .as_bytes())?;
        }
        Command::Classify { path } => {
            let label = label_of(&path)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&label).expect("labels serialize"))?;
        }
        Command::CanonicalParams { params, extra_h } => {
            writeln!(out, "{}", canonical_params(&params_arg(&params, extra_h)?))?;
        }
        Command::Orbit { params, extra_h } => {
            for v in orbit(&params_arg(&params, extra_h)?) {
                writeln!(out, "{v}")?;
            }
        }
        Command::Equiv { a, b } => {
            let same = label_of(&a)? == label_of(&b)?;
            writeln!(out, "{}", if same { "equivalent" } else { "inequivalent" })?;
            return Ok(if same { EXIT_OK } else { EXIT_FAILURE });
        }
        Command::Catalog { m, n, format } => {
            let doc = catalog_document(m, n)?;
            match format {
                CatalogFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("catalog serializes"))?
                }
                CatalogFormat::Text => {
                    for e in &doc.labels {
                        writeln!(out, "{}", e.label)?;
                    }
                }
            }
        }
        Command::Selftest { seed, trials } => {
            let report = selftest::run_selftest(seed, trials);
            write!(out, "{report}")?;
            if let Some(f) = report.first_failure() {
                writeln!(err, "first failing property: {}", f.name)?;
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}
