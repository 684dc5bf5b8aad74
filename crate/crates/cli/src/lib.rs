//! Library half of the `qcoherence` command: state files, the worked demos,
//! audit orchestration and report emission. `main.rs` only parses flags.

pub mod audits;
pub mod demos;
pub mod error;
pub mod interference;
pub mod json;
pub mod statefile;

pub use audits::{expected_verdict, AuditOutcome, AuditRequest};
pub use demos::{demo_glauber, linspace, sweep_alpha, GlauberRow, SweepRow};
pub use error::{CliError, CliResult};
pub use interference::{demo_interference, InputLight, InterferenceConfig, InterferenceResult};
pub use statefile::{load_state, parse_state, save_state, LoadedState, StateFile};

use qcoherence::{CoherenceReport, DensityMatrix};
use serde::Serialize;

/// Reference basis of every matrix this tool reads.
pub const COMPUTATIONAL_BASIS: &str = "computational";

/// `measure` output: the coherence report plus the state's label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub report: CoherenceReport,
}

pub fn measure_state(rho: &DensityMatrix, label: Option<String>) -> MeasureOutput {
    MeasureOutput {
        label,
        report: CoherenceReport::new(rho, COMPUTATIONAL_BASIS),
    }
}
