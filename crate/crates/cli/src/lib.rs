//! The `hypermass` command-line tool.
//!
//! ```text
//! hypermass centroid <scene> <name>
//! hypermass moment <scene> <name> <line>
//! hypermass mass <scene> <name>
//! hypermass validate <family> [--grid key=v1,v2,...]...
//! hypermass converge <scene> <name> --deltas d1,d2,... [--seed N] [--csv FILE]
//! ```
//!
//! Exit codes: 0 ok, 2 parse or usage error, 3 unknown name, 4 numerical
//! failure, 5 validation failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hypermass::{Model, QuadratureConfig};

pub mod commands;
pub mod report;
pub mod scene;

pub use commands::Family;
pub use report::{Cell, Report, Table, Value};
pub use scene::{Object, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NAME: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;
pub const EXIT_VALIDATION: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("unknown name `{0}`")]
    Name(String),
    #[error(transparent)]
    Numeric(#[from] hypermass::Error),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Name(_) => EXIT_NAME,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

fn parse_model(s: &str) -> Result<Model, String> {
    Model::parse(s).ok_or_else(|| format!("unknown model `{s}` (hyperboloid, poincare, half-plane, gauss-polar)"))
}

#[derive(Debug, Parser)]
#[command(name = "hypermass", version, about = "Centers of mass and moments in the hyperbolic plane")]
pub struct Cli {
    /// Quadrature tolerance relative to the magnitude of each integral.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Evaluate quadrature panels on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Model for reported coordinates (defaults to the scene's model).
    #[arg(long, global = true, value_parser = parse_model)]
    pub model_out: Option<Model>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Centroid location and mass of a named object.
    Centroid { scene: PathBuf, name: String },
    /// Signed moment of a named object about a named line.
    Moment { scene: PathBuf, name: String, line: String },
    /// Mass of a named object.
    Mass { scene: PathBuf, name: String },
    /// Compare closed forms with quadrature over a parameter grid.
    Validate {
        #[arg(value_enum)]
        family: Family,
        /// Grid values as key=v1,v2,...; may be repeated.
        #[arg(long)]
        grid: Vec<String>,
    },
    /// Centroid and mass errors of delta-transversals of a lamina.
    Converge {
        scene: PathBuf,
        name: String,
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the table as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn config(base: QuadratureConfig, cli: &Cli) -> Result<QuadratureConfig, CliError> {
    let mut q = base;
    if let Some(t) = cli.tol {
        q.tolerance = t;
    }
    if cli.sequential {
        q.parallel = false;
    }
    q.validate().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(q)
}

fn execute(cli: &Cli, rep: &mut Report) -> Result<(), CliError> {
    let load = |p: &PathBuf| -> Result<(Scene, QuadratureConfig, Model), CliError> {
        let s = Scene::load(p)?;
        let q = config(s.quadrature, cli)?;
        let model = cli.model_out.unwrap_or(s.model);
        Ok((s, q, model))
    };
    match &cli.command {
        Command::Centroid { scene, name } => {
            let (s, q, m) = load(scene)?;
            commands::centroid(&s, name, &q, m, rep)
        }
        Command::Moment { scene, name, line } => {
            let (s, q, _) = load(scene)?;
            commands::moment(&s, name, line, &q, rep)
        }
        Command::Mass { scene, name } => {
            let (s, q, m) = load(scene)?;
            commands::mass(&s, name, &q, m, rep)
        }
        Command::Validate { family, grid } => {
            let q = config(QuadratureConfig::with_tolerance(1e-10), cli)?;
            commands::validate(*family, grid, &q, rep)
        }
        Command::Converge { scene, name, deltas, seed, csv } => {
            let (s, q, m) = load(scene)?;
            commands::converge(&s, name, deltas, *seed, &q, m, rep)?;
            if let (Some(path), Some(t)) = (csv, &rep.table) {
                let f = std::fs::File::create(path)?;
                t.write_csv(f)?;
            }
            Ok(())
        }
    }
}

/// Runs the tool on `args` (including the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut rep = Report::new(echo);
    if let Err(e) = execute(&cli, &mut rep) {
        let _ = writeln!(err, "error: {e}");
        return e.exit_code();
    }
    let written = if cli.json { rep.write_json(&mut *out) } else { rep.write_text(&mut *out) };
    if let Err(e) = written {
        let _ = writeln!(err, "error: writing output: {e}");
        return EXIT_NUMERIC;
    }
    rep.exit
}
