mod commands;
mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mathieu_core::Error;
use serde_json::Value;

use commands::{EvalArgs, Function, Outcome};
use output::{float17, write_csv, Format};

const EXIT_DOMAIN: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

const GRID_HELP: &str = "Grid axes, comma separated: `name=lo:hi:count[:log]` for a range, \
`name=a/b/c` for a list. Names: mu, mu2, nu, r, p, eps, m. \
Example: \"mu=0.5:5:10,r=0.1:10:10:log\". Axes replace the check's defaults by name.";

/// Generalized Mathieu series, zeta identities and inequality certification.
#[derive(Debug, Parser)]
#[command(name = "mathieu", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct Emit {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate one function.
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        s: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        nu: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Evaluate S_mu(r) by several representations and compare them.
    Xcheck {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        r: f64,
        /// Any of direct, emersleben, bessel, laplace.
        #[arg(long, value_delimiter = ',', default_value = "direct,bessel")]
        methods: Vec<String>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Sweep inequality checks over parameter grids.
    Verify {
        /// A registered check, `check:variant`, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, help = GRID_HELP)]
        grid: Option<String>,
        /// Relative accuracy of every Mathieu-series evaluation.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Print representation constants and recompute c_L.
    Constants {
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[command(flatten)]
        emit: Emit,
    },
    /// List the registered inequality checks.
    Checks,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonConvergence(_) | Error::Range { .. } => EXIT_NONCONVERGENCE,
        _ => EXIT_DOMAIN,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let start = Instant::now();
    let (outcome, emit, reports) = match cli.cmd {
        Cmd::Eval { function, mu, r, s, x, nu, t, theta, tol, emit } => {
            let args = EvalArgs { mu, r, s, x, nu, t, theta };
            (commands::eval(function, args, tol)?, emit, None)
        }
        Cmd::Xcheck { mu, r, methods, tol, emit } => (commands::xcheck(mu, r, &methods, tol)?, emit, None),
        Cmd::Verify { check, grid, tol, emit } => {
            let (outcome, sweeps) = commands::verify(&check, grid.as_deref(), tol)?;
            for s in &sweeps {
                let tag = if s.adjudicates { " (adjudication)" } else { "" };
                eprintln!(
                    "{}{tag}: {} points, {} fails, {} within noise, min margin {:.3e}",
                    s.name,
                    s.reports.len(),
                    s.failures.len(),
                    s.within_noise,
                    s.min_margin
                );
            }
            (outcome, emit, Some(sweeps))
        }
        Cmd::Constants { mu, r, emit } => (commands::constants(mu, r)?, emit, None),
        Cmd::Checks => {
            for c in mathieu_core::inequalities::registry() {
                let tag = if c.adjudicates { " [adjudication]" } else { "" };
                println!("{}{tag}\n  {}\n  variants: {}\n  grid: {}", c.name, c.summary, c.variants.join(", "), c.default_grid);
            }
            return Ok(0);
        }
    };
    let Outcome { mut record, verification_failed, not_converged } = outcome;
    record.timing_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut sink: Box<dyn Write> = match &emit.out {
        Some(path) => Box::new(File::create(path).map_err(|e| io_error(path, e))?),
        None => Box::new(io::stdout().lock()),
    };
    let written = match emit.format {
        Format::Json => sink.write_all(record.to_json().as_bytes()),
        Format::Csv => match &reports {
            Some(sweeps) => {
                let rows: Vec<_> = sweeps.iter().flat_map(|s| s.reports.iter()).collect();
                write_csv(&mut sink, &rows).map_err(io::Error::other)
            }
            None => write_flat_csv(&mut sink, &record.results),
        },
    };
    written.and_then(|_| sink.flush()).map_err(|e| Error::Domain(format!("writing output: {e}")))?;

    Ok(if not_converged {
        EXIT_NONCONVERGENCE
    } else if verification_failed {
        EXIT_VERIFICATION
    } else {
        0
    })
}

fn io_error(path: &std::path::Path, e: io::Error) -> Error {
    Error::Domain(format!("cannot open {}: {e}", path.display()))
}

/// Results that are not inequality reports: one row per result, columns
/// taken from the first one's scalar fields.
fn write_flat_csv<W: Write>(out: W, results: &[Value]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let Some(Value::Object(first)) = results.first() else {
        return Ok(());
    };
    let cols: Vec<&String> = first.keys().filter(|k| !first[*k].is_object() && !first[*k].is_array()).collect();
    w.write_record(&cols).map_err(io::Error::other)?;
    for r in results {
        let row: Vec<String> = cols
            .iter()
            .map(|c| match &r[c.as_str()] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                Value::Number(n) if !(n.is_u64() || n.is_i64()) => n.as_f64().map(float17).unwrap_or_default(),
                other => other.to_string(),
            })
            .collect();
        w.write_record(&row).map_err(io::Error::other)?;
    }
    w.flush()
}
