//! Command-line front end. Exit codes: 0 success, 1 verification failed,
//! 2 usage error, 3 I/O error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::fixtures::{make_fixture, Fixture, StructureDocument};
use crate::oracle::{compare_finite, compare_truncated, known_solution, verify, Assignment, KnownSolution};
use crate::render::{render_cas, render_text, SystemDocument};
use crate::scalar::parse_scalar;
use crate::system::{dims_report, system_finite, system_truncated, XMode};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "filiform", version, about = "Defining equations of filiform Lie algebra varieties")]
pub struct Cli {
    /// Print timing and progress to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Cas,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the equation system of M_Fil(n) or of the truncated infinite system.
    #[command(group(ArgGroup::new("size").required(true).args(["dim", "truncate"])))]
    Gen {
        #[arg(long)]
        dim: Option<usize>,
        /// Keep every F_{j,q,r} with j+2q+1+r <= this bound.
        #[arg(long)]
        truncate: Option<usize>,
        /// Top marker for even dimensions: 0, 1 or free.
        #[arg(long, default_value = "free")]
        x: XMode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Variable and equation counts, closed form against enumeration.
    Dims {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Residuals and a Jacobi scan for an assignment.
    #[command(group(ArgGroup::new("point").required(true).args(["known", "assign"])))]
    Check {
        #[arg(long)]
        dim: usize,
        /// m2, mk, L1 or L1-lacuna2.
        #[arg(long)]
        known: Option<String>,
        /// Scale of the known family, as p or p/q.
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long)]
        k: Option<usize>,
        /// JSON assignment file.
        #[arg(long)]
        assign: Option<PathBuf>,
        /// Top marker for even dimensions; `free` reads x from the assignment.
        #[arg(long, default_value = "free")]
        x: XMode,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the closed-form polynomials with a direct expansion of [Psi, Psi].
    #[command(name = "verify-oracle", group(ArgGroup::new("size").required(true).args(["max_total", "dim"])))]
    VerifyOracle {
        #[arg(long)]
        max_total: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Structure constants of a named algebra.
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn emit(output: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, body).map_err(|e| io_error(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| CliError {
                code: EXIT_IO,
                message: format!("stdout: {e}"),
            })
        }
    }
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let started = Instant::now();
    let verbose = cli.verbose > 0;
    let code = match cli.command {
        Command::Gen {
            dim,
            truncate,
            x,
            format,
            output,
        } => {
            let sys = match (dim, truncate) {
                (Some(n), _) => system_finite(n, x)?,
                (None, Some(m)) => system_truncated(m)?,
                (None, None) => unreachable!("clap requires one of --dim, --truncate"),
            };
            let body = match format {
                Format::Text => render_text(&sys),
                Format::Json => SystemDocument::from_system(&sys).to_json(),
                Format::Cas => render_cas(&sys),
            };
            emit(&output, &body)?;
            EXIT_OK
        }
        Command::Dims { dim, json } => {
            let r = dims_report(dim)?;
            let body = if json {
                format!("{}\n", serde_json::to_string_pretty(&r).expect("report serializes"))
            } else {
                let mut s = format!("n = {}\n", r.n);
                s += &format!(
                    "num_vars = {} (enumerated {}, partition sum {})\n",
                    r.num_vars, r.num_vars_enumerated, r.num_vars_partition_sum
                );
                s += &format!("num_eqs = {} (enumerated {})\n", r.num_eqs, r.num_eqs_enumerated);
                let h2: Vec<String> = r.h2_by_weight.iter().map(|(w, c)| format!("{w}:{c}")).collect();
                let h3: Vec<String> = r.h3_by_weight.iter().map(|(w, c)| format!("{w}:{c}")).collect();
                s += &format!("h2_by_weight = {}\n", h2.join(" "));
                s += &format!("h3_by_weight = {}\n", h3.join(" "));
                s
            };
            emit(&None, &body)?;
            if r.consistent() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::Check {
            dim,
            known,
            t,
            k,
            assign,
            x,
            output,
        } => {
            let a = match (known, assign) {
                (Some(name), _) => {
                    let sol = KnownSolution::from_name(&name, k)?;
                    known_solution(&sol, &parse_scalar(&t)?, dim)
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
                    Assignment::from_json(&text)?
                }
                (None, None) => unreachable!("clap requires one of --known, --assign"),
            };
            let sys = system_finite(dim, x)?;
            let report = verify(&sys, &a)?;
            let body = format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"));
            emit(&output, &body)?;
            if output.is_some() {
                eprintln!(
                    "{}: {} nonzero residuals, {} Jacobi defects",
                    report.verdict,
                    report.residuals.len(),
                    report.jacobi.len()
                );
            }
            if report.verified() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::VerifyOracle { max_total, dim } => {
            let cmp = match (max_total, dim) {
                (Some(m), _) => compare_truncated(m)?,
                (None, Some(n)) => compare_finite(n)?,
                (None, None) => unreachable!("clap requires one of --max-total, --dim"),
            };
            let mut body = String::new();
            for d in &cmp.diffs {
                body += &format!("label {}\n  generated: {}\n  oracle:    {}\n", d.label, d.generated, d.oracle);
            }
            body += &format!("checked {} labels, {} differences\n", cmp.checked, cmp.diffs.len());
            emit(&None, &body)?;
            if cmp.diffs.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::Fixture {
            name,
            dim,
            k,
            s,
            base,
            output,
        } => {
            let fixture = Fixture::from_name(&name, k, s, base.as_deref())?;
            let structure = make_fixture(&fixture, dim)?;
            let doc = StructureDocument::from_structure(&fixture.to_string(), &structure);
            let body = format!("{}\n", serde_json::to_string_pretty(&doc).expect("document serializes"));
            emit(&output, &body)?;
            EXIT_OK
        }
    };
    if verbose {
        eprintln!("done in {:.3}s", started.elapsed().as_secs_f64());
    }
    Ok(code)
}

/// Parses arguments, runs, and maps every outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
