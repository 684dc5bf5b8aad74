//! Batch audits and the expected-verdict manifest.

use std::fs;
use std::path::Path;
use std::thread;

use qcoherence::{audit_conditions, AuditConfig, AuditReport, ChannelClass, Condition, Measure, Verdict};

use crate::error::{CliError, CliResult};
use crate::json;

pub const CHANNEL_CLASSES: [ChannelClass; 3] = [
    ChannelClass::UnitalMixture,
    ChannelClass::DiagonalIncoherent,
    ChannelClass::GeneralTp,
];

pub fn parse_class(s: &str) -> CliResult<ChannelClass> {
    match s {
        "unital" | "unital_mixture" => Ok(ChannelClass::UnitalMixture),
        "diagonal" | "diagonal_incoherent" => Ok(ChannelClass::DiagonalIncoherent),
        "general" | "general_tp" => Ok(ChannelClass::GeneralTp),
        other => Err(CliError::Usage(format!(
            "unknown channel class '{other}' (unital|diagonal|general)"
        ))),
    }
}

pub fn parse_verdict(s: &str) -> CliResult<Verdict> {
    match s {
        "holds" | "holds_within_tol" => Ok(Verdict::HoldsWithinTol),
        "violated" => Ok(Verdict::Violated),
        other => Err(CliError::Usage(format!("unknown verdict '{other}' (holds|violated)"))),
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::HoldsWithinTol => "holds_within_tol",
        Verdict::Violated => "violated",
    }
}

/// What the theory predicts for one audit.
///
/// - C1 and C3 hold for all three measures.
/// - C0 holds only for the basis-independent measure; a Haar unitary moves
///   the l1 and relative-entropy values.
/// - Averaged and selective monotonicity hold for the basis-independent
///   measure under unital mixtures, and for the basis-dependent measures
///   under diagonal-incoherent channels. Every other class is outside the
///   respective free operations and is expected to be caught.
/// - The eigenbasis probe (a unital, trace-preserving projective
///   measurement) leaves the average state unchanged but drives every
///   selective audit to a violation whenever `d >= 2`.
pub fn expected_verdict(
    measure: Measure,
    condition: Condition,
    class: Option<ChannelClass>,
    probe_eigenbasis: bool,
    dim: usize,
) -> Verdict {
    use Verdict::*;
    if dim < 2 {
        return HoldsWithinTol;
    }
    let free_class = match measure {
        Measure::Ibiqc => ChannelClass::UnitalMixture,
        Measure::L1 | Measure::Re => ChannelClass::DiagonalIncoherent,
    };
    match condition {
        Condition::C1 | Condition::C3 => HoldsWithinTol,
        Condition::C0 => match measure {
            Measure::Ibiqc => HoldsWithinTol,
            Measure::L1 | Measure::Re => Violated,
        },
        Condition::C2Selective if probe_eigenbasis => Violated,
        Condition::C2Average | Condition::C2Selective => {
            if class == Some(free_class) {
                HoldsWithinTol
            } else {
                Violated
            }
        }
    }
}

/// A grid of `(measure, condition, class)` audits sharing one sampling setup.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRequest {
    pub measures: Vec<Measure>,
    pub conditions: Vec<Condition>,
    /// Channel classes for the C2 conditions; empty means all three.
    pub classes: Vec<ChannelClass>,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Applied to the C2 conditions of the request.
    pub probe_eigenbasis: bool,
    /// Overrides the built-in manifest for every audit in the request.
    pub expect: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditOutcome {
    pub report: AuditReport,
    pub expected: Verdict,
}

impl AuditOutcome {
    pub fn matches(&self) -> bool {
        self.report.verdict == self.expected
    }

    /// `<measure>_<condition>[_<class>][_probe].json`
    pub fn file_name(&self) -> String {
        let r = &self.report;
        let mut name = format!("{}_{}", r.measure_name, r.condition.name());
        if let Some(class) = r.operation_class {
            name.push('_');
            name.push_str(class.name());
        }
        if r.probe_eigenbasis {
            name.push_str("_probe");
        }
        name + ".json"
    }

    pub fn summary(&self) -> String {
        let r = &self.report;
        format!(
            "{} {} {} d={} samples={} seed={}: {} (expected {}) max_violation={:.3e}{}",
            r.measure_name,
            r.condition.name(),
            r.operation_class.map_or("-", ChannelClass::name),
            r.dim,
            r.samples,
            r.seed,
            verdict_name(r.verdict),
            verdict_name(self.expected),
            r.max_violation,
            if self.matches() { "" } else { "  MISMATCH" },
        )
    }
}

impl AuditRequest {
    pub fn configs(&self) -> CliResult<Vec<AuditConfig>> {
        if self.measures.is_empty() || self.conditions.is_empty() {
            return Err(CliError::Usage(
                "at least one measure and one condition are required".into(),
            ));
        }
        if self.probe_eigenbasis && !self.conditions.iter().any(|c| c.needs_channel()) {
            return Err(CliError::Usage("--probe-eigenbasis needs a C2 condition".into()));
        }
        let classes: &[ChannelClass] = if self.classes.is_empty() {
            &CHANNEL_CLASSES
        } else {
            &self.classes
        };
        let mut out = Vec::new();
        for &measure in &self.measures {
            for &condition in &self.conditions {
                let base = AuditConfig::new(measure, condition, self.dim, self.samples, self.seed).with_tol(self.tol);
                if condition.needs_channel() {
                    for &class in classes {
                        let mut cfg = base.clone().with_class(class);
                        cfg.probe_eigenbasis = self.probe_eigenbasis;
                        out.push(cfg);
                    }
                } else {
                    out.push(base);
                }
            }
        }
        Ok(out)
    }

    /// Run every audit of the grid; each one owns its seed streams, so they run in parallel.
    pub fn run(&self) -> CliResult<Vec<AuditOutcome>> {
        let configs = self.configs()?;
        let results: Vec<qcoherence::Result<AuditReport>> = thread::scope(|s| {
            let handles: Vec<_> = configs
                .iter()
                .map(|cfg| s.spawn(move || audit_conditions(cfg)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("audit thread panicked"))
                .collect()
        });
        configs
            .iter()
            .zip(results)
            .map(|(cfg, result)| {
                let report =
                    result.map_err(|e| CliError::validation(format!("audit {}/{}", cfg.measure, cfg.condition), e))?;
                let expected = self.expect.unwrap_or_else(|| {
                    expected_verdict(cfg.measure, cfg.condition, cfg.op_class, cfg.probe_eigenbasis, cfg.dim)
                });
                Ok(AuditOutcome { report, expected })
            })
            .collect()
    }
}

/// One report: a `.json` path is written as is. Otherwise `out` is a directory of reports.
pub fn write_reports(outcomes: &[AuditOutcome], out: &Path) -> CliResult<Vec<std::path::PathBuf>> {
    let single_file = outcomes.len() == 1 && out.extension().is_some_and(|e| e == "json");
    if single_file {
        fs::write(out, json::to_string(&outcomes[0].report)?).map_err(|e| CliError::io(out, e))?;
        return Ok(vec![out.to_path_buf()]);
    }
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let mut written = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        let path = out.join(o.file_name());
        fs::write(&path, json::to_string(&o.report)?).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Reports as JSON text: a single object, or an array for several.
pub fn reports_to_string(outcomes: &[AuditOutcome]) -> CliResult<String> {
    Ok(match outcomes {
        [one] => json::to_string(&one.report)?,
        many => json::to_string(&many.iter().map(|o| &o.report).collect::<Vec<_>>())?,
    })
}
