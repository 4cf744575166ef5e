//! `subdiff` — runs convergence studies, probes the contour kernel, and
//! dumps time-scheme weights.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use subdiff::config::{builtin, parse_cases, BUILTIN_IDS};
use subdiff::harness::{emit, run_case, OutputFormat, RateReport};
use subdiff::oracle::{kernel_e_checked, ContourSpec};
use subdiff::weights::weights;
use subdiff::TemporalScheme;

#[derive(Parser)]
#[command(name = "subdiff", version, about = "Sub-diffusion solver experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
            Format::Pretty => OutputFormat::Pretty,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    L1bar,
    Sbdbar,
}

#[derive(Subcommand)]
enum Command {
    /// Run a convergence study from a case file or a builtin id
    /// (table1 .. table8).
    Run {
        /// Path to a case file, or a builtin id.
        #[arg(long)]
        case: String,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        /// Write here instead of stdout (atomic: temp file + rename).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for parallel levels/cases (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Evaluate the contour-quadrature solution kernel E_alpha(-lambda t^alpha).
    Kernel {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        t: f64,
    },
    /// Print the first n convolution weights of a time scheme (tau = 1).
    Weights {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
    },
}

fn fail(record: serde_json::Value) -> ExitCode {
    eprintln!("{record}");
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            case,
            format,
            out,
            workers,
        } => run(&case, format.into(), out.as_deref(), workers),
        Command::Kernel { alpha, lambda, t } => kernel(alpha, lambda, t),
        Command::Weights { scheme, alpha, n } => dump_weights(scheme, alpha, n),
    }
}

fn run(case: &str, format: OutputFormat, out: Option<&Path>, workers: Option<usize>) -> ExitCode {
    if let Some(k) = workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            return fail(json!({"error": "workers", "detail": e.to_string()}));
        }
    }
    let cases = match builtin(case) {
        Some(cases) => cases,
        None => match fs::read_to_string(case) {
            Ok(text) => match parse_cases(&text) {
                Ok(cases) => cases,
                Err(e) => {
                    return fail(json!({
                        "error": "config", "file": case, "detail": e.to_string(),
                    }))
                }
            },
            Err(e) => {
                return fail(json!({
                    "error": "io", "file": case, "detail": e.to_string(),
                    "hint": format!("not a builtin id ({}) and not a readable file",
                                    BUILTIN_IDS.join(", ")),
                }))
            }
        },
    };
    let mut reports: Vec<RateReport> = Vec::new();
    for c in &cases {
        match run_case(c) {
            Ok(mut r) => reports.append(&mut r),
            Err(e) => {
                return fail(json!({
                    "error": "solver", "case": c.id, "detail": e.to_string(),
                }))
            }
        }
    }
    let text = emit(&reports, format);
    match out {
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Some(path) => match write_atomic(path, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(json!({
                "error": "io", "file": path.display().to_string(), "detail": e.to_string(),
            })),
        },
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = dir
        .unwrap_or_else(|| Path::new("."))
        .join(format!(".{}.tmp", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn kernel(alpha: f64, lambda: f64, t: f64) -> ExitCode {
    let result = ContourSpec::for_time(t).and_then(|spec| kernel_e_checked(t, lambda, alpha, &spec));
    match result {
        Ok(k) => {
            println!(
                "{}",
                json!({
                    "alpha": alpha, "lambda": lambda, "t": t,
                    "value": k.value,
                    "refinement_delta": k.refinement_delta,
                    "accuracy_warning": !k.converged,
                })
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(json!({"error": "kernel", "detail": e.to_string()})),
    }
}

fn dump_weights(scheme: SchemeArg, alpha: f64, n: usize) -> ExitCode {
    let scheme = match scheme {
        SchemeArg::L1bar => TemporalScheme::L1Bar,
        SchemeArg::Sbdbar => TemporalScheme::SbdBar,
    };
    match weights(scheme, alpha, 1.0, n) {
        Ok(w) => {
            println!("k,weight");
            for (k, v) in w.values.iter().enumerate() {
                println!("{k},{v:.12e}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(json!({"error": "weights", "detail": e.to_string()})),
    }
}
