//! Tables behind the `sweep` and `demo` subcommands.

use std::io::Write;

use qcoherence::{glauber_truncated, ibiqc_coherence, l1_coherence, qubit_pair, rel_ent_coherence, Complex64};
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_SWEEP_POINTS: usize = 181;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub ibiqc_z: f64,
    pub ibiqc_x: f64,
    pub re_z: f64,
    pub re_x: f64,
    pub l1_z: f64,
    pub l1_x: f64,
}

/// `points` uniformly spaced values from `from` to `to`, both ends included.
pub fn linspace(from: f64, to: f64, points: usize) -> CliResult<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() {
        return Err(CliError::Usage(format!(
            "grid bounds must be finite, got [{from}, {to}]"
        )));
    }
    match points {
        0 => Err(CliError::Usage("grid needs at least one point".into())),
        1 => Ok(vec![from]),
        n => {
            let step = (to - from) / (n - 1) as f64;
            Ok((0..n)
                .map(|i| if i == n - 1 { to } else { from + step * i as f64 })
                .collect())
        }
    }
}

/// The coherence of `rho_z(alpha)` and its Hadamard image for each angle.
pub fn sweep_alpha(grid: &[f64]) -> CliResult<Vec<SweepRow>> {
    grid.iter()
        .map(|&alpha| {
            if !alpha.is_finite() {
                return Err(CliError::Usage(format!("non-finite angle {alpha}")));
            }
            let (rz, rx) = qubit_pair(alpha).map_err(|e| CliError::validation(format!("alpha = {alpha}"), e))?;
            Ok(SweepRow {
                alpha,
                ibiqc_z: ibiqc_coherence(&rz),
                ibiqc_x: ibiqc_coherence(&rx),
                re_z: rel_ent_coherence(&rz),
                re_x: rel_ent_coherence(&rx),
                l1_z: l1_coherence(&rz),
                l1_x: l1_coherence(&rx),
            })
        })
        .collect()
}

/// `1 + c log2 c + s log2 s` with `c = cos^2 alpha`, `s = sin^2 alpha`.
pub fn qubit_closed_form(alpha: f64) -> f64 {
    let c = alpha.cos().powi(2);
    let s = alpha.sin().powi(2);
    1.0 + qcoherence::linalg::xlog2x(c) + qcoherence::linalg::xlog2x(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlauberRow {
    pub d: usize,
    pub c_l1: f64,
    pub c_re: f64,
    pub c_ibiqc: f64,
    /// `c_l1 / (d - 1)`; undefined for `d = 1` and left empty.
    pub l1_ratio: Option<f64>,
}

pub fn demo_glauber(a: Complex64, dims: &[usize]) -> CliResult<Vec<GlauberRow>> {
    dims.iter()
        .map(|&d| {
            let rho = glauber_truncated(a, d)
                .map_err(|e| CliError::validation(format!("glauber state at d = {d}"), e))?
                .to_density();
            let c_l1 = l1_coherence(&rho);
            Ok(GlauberRow {
                d,
                c_l1,
                c_re: rel_ent_coherence(&rho),
                c_ibiqc: ibiqc_coherence(&rho),
                l1_ratio: (d > 1).then(|| c_l1 / (d - 1) as f64),
            })
        })
        .collect()
}

/// Header row, commas, LF line endings, full-precision floats.
pub fn write_csv<W: Write, R: Serialize>(out: W, rows: &[R]) -> CliResult<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}

pub fn csv_string<R: Serialize>(rows: &[R]) -> CliResult<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    Ok(String::from_utf8(buf).expect("csv of numbers is UTF-8"))
}
