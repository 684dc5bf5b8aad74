use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcoherence::{ChannelClass, Complex64, Condition, Measure, Verdict};
use qcoherence_cli::audits::{parse_class, parse_verdict, reports_to_string, write_reports};
use qcoherence_cli::demos::{csv_string, DEFAULT_SWEEP_POINTS};
use qcoherence_cli::{
    demo_glauber, demo_interference, json, linspace, load_state, measure_state, sweep_alpha, AuditRequest, CliError,
    CliResult, InterferenceConfig,
};

/// Coherence measures, worked demos and axiom audits. All angles are radians.
#[derive(Debug, Parser)]
#[command(name = "qcoherence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropies and coherence values of a state file (JSON report).
    Measure {
        /// State file, `-` for standard input.
        statefile: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coherence of rho_z(alpha) and H rho_z(alpha) H over an alpha grid (CSV).
    Sweep {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = DEFAULT_SWEEP_POINTS)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized audits of C0-C3; exits 1 if any verdict differs from the expected one.
    Audit {
        /// l1, re, ibiqc (comma separated or repeated).
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_measure)]
        measure: Vec<Measure>,
        /// C0, C1, C2avg, C2sel, C3.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_condition)]
        condition: Vec<Condition>,
        /// unital, diagonal, general; all three when omitted.
        #[arg(long, value_delimiter = ',', value_parser = parse_class_arg)]
        class: Vec<ChannelClass>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = qcoherence::audit::DEFAULT_AUDIT_TOL)]
        tol: f64,
        /// Also apply the projective measurement in each state's eigenbasis.
        #[arg(long)]
        probe_eigenbasis: bool,
        /// Expected verdict for every audit (holds|violated), replacing the built-in manifest.
        #[arg(long, value_parser = parse_verdict_arg)]
        expect: Option<Verdict>,
        /// A `.json` file for a single report, otherwise a directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Truncated Glauber coherent states (CSV).
    Glauber {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_im: f64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,8")]
        dims: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wave plate plus polarizer intensity curve (CSV); the visibility summary goes to stdout, or stderr when the curve does.
    Interference {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse().map_err(|e: qcoherence::Error| e.to_string())
}

fn parse_condition(s: &str) -> Result<Condition, String> {
    s.parse().map_err(|e: qcoherence::Error| e.to_string())
}

fn parse_class_arg(s: &str) -> Result<ChannelClass, String> {
    parse_class(s).map_err(|e| e.to_string())
}

fn parse_verdict_arg(s: &str) -> Result<Verdict, String> {
    parse_verdict(s).map_err(|e| e.to_string())
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                })
        }
    }
}

/// Returns the process exit status on success paths (0, or 1 for verdict mismatches).
fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Measure { statefile, out } => {
            let loaded = load_state(&statefile)?;
            emit(
                &json::to_string(&measure_state(&loaded.state, loaded.label))?,
                out.as_deref(),
            )?;
        }
        Command::Sweep { from, to, points, out } => {
            let rows = sweep_alpha(&linspace(from, to, points)?)?;
            emit(&csv_string(&rows)?, out.as_deref())?;
        }
        Command::Audit {
            measure,
            condition,
            class,
            d,
            samples,
            seed,
            tol,
            probe_eigenbasis,
            expect,
            out,
        } => {
            let request = AuditRequest {
                measures: measure,
                conditions: condition,
                classes: class,
                dim: d,
                samples,
                seed,
                tol,
                probe_eigenbasis,
                expect,
            };
            let outcomes = request.run()?;
            match out {
                Some(path) => {
                    write_reports(&outcomes, &path)?;
                }
                None => emit(&reports_to_string(&outcomes)?, None)?,
            }
            for o in &outcomes {
                eprintln!("{}", o.summary());
            }
            if !outcomes.iter().all(|o| o.matches()) {
                return Ok(1);
            }
        }
        Command::Demo(Demo::Glauber {
            alpha_re,
            alpha_im,
            dims,
            out,
        }) => {
            let rows = demo_glauber(Complex64::new(alpha_re, alpha_im), &dims)?;
            emit(&csv_string(&rows)?, out.as_deref())?;
        }
        Command::Demo(Demo::Interference { config, out }) => {
            let result = demo_interference(&InterferenceConfig::load(&config)?)?;
            let summary = serde_json::json!({
                "points": result.curve.len(),
                "i_max": result.i_max,
                "i_min": result.i_min,
                "visibility": result.visibility,
            });
            match out {
                Some(path) => {
                    emit(&csv_string(&result.curve)?, Some(&path))?;
                    emit(&json::to_string(&summary)?, None)?;
                }
                None => {
                    emit(&csv_string(&result.curve)?, None)?;
                    eprint!("{}", json::to_string(&summary)?);
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
