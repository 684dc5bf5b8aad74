//! Polarization interference through a wave plate and a linear polarizer (Jones calculus).

use std::path::Path;

use qcoherence::{maximally_mixed, Complex64, ComplexMatrix, DensityMatrix, PureState};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::statefile::StateFile;

/// Below this `I_max + I_min` the visibility is reported as 0.
pub const DARK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputLight {
    /// Unpolarized light, the maximally mixed qubit.
    NaturalLight,
    /// Linear polarization at angle `psi` from the lab x axis.
    Linear {
        psi: f64,
    },
    State(StateFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterferenceConfig {
    pub input: InputLight,
    /// Fast axis of the plate, radians from the lab x axis.
    pub plate_angle: f64,
    /// Transmission axis of the polarizer, radians.
    pub polarizer_angle: f64,
    /// Phase delays, radians.
    pub gamma_grid: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntensityPoint {
    pub gamma: f64,
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterferenceResult {
    pub curve: Vec<IntensityPoint>,
    pub i_max: f64,
    pub i_min: f64,
    pub visibility: f64,
}

impl InterferenceConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    fn validate(&self) -> CliResult<DensityMatrix> {
        if self.gamma_grid.is_empty() {
            return Err(CliError::Invalid("gamma_grid must not be empty".into()));
        }
        let angles = [self.plate_angle, self.polarizer_angle];
        if let Some(bad) = self.gamma_grid.iter().chain(&angles).find(|v| !v.is_finite()) {
            return Err(CliError::Invalid(format!("non-finite angle {bad}")));
        }
        let rho = match &self.input {
            InputLight::NaturalLight => maximally_mixed(2).expect("d = 2 is valid"),
            InputLight::Linear { psi } => {
                if !psi.is_finite() {
                    return Err(CliError::Invalid(format!("non-finite polarization angle {psi}")));
                }
                jones(*psi).to_density()
            }
            InputLight::State(file) => file.validate("interference input")?.state,
        };
        if rho.dim() != 2 {
            return Err(CliError::validation(
                "interference input",
                qcoherence::Error::DimensionMismatch {
                    expected: 2,
                    found: rho.dim(),
                },
            ));
        }
        Ok(rho)
    }
}

fn jones(angle: f64) -> PureState {
    PureState::new(vec![Complex64::new(angle.cos(), 0.0), Complex64::new(angle.sin(), 0.0)]).expect("unit vector")
}

fn rotation(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_real(2, &[c, -s, s, c]).expect("2x2")
}

/// `R(theta) diag(1, e^{i gamma}) R(-theta)`.
pub fn wave_plate(theta: f64, gamma: f64) -> ComplexMatrix {
    let mut w = ComplexMatrix::identity(2);
    w[(1, 1)] = Complex64::from_polar(1.0, gamma);
    &(&rotation(theta) * &w) * &rotation(-theta)
}

/// Transmitted intensity `<phi| W rho W^dag |phi>`.
pub fn intensity(rho: &DensityMatrix, theta: f64, phi: f64, gamma: f64) -> f64 {
    let w = wave_plate(theta, gamma);
    let out = &(&w * rho.matrix()) * &w.adjoint();
    let p = jones(phi);
    let v = p.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += v[i].conj() * out[(i, j)] * v[j];
        }
    }
    acc.re
}

pub fn demo_interference(cfg: &InterferenceConfig) -> CliResult<InterferenceResult> {
    let rho = cfg.validate()?;
    let curve: Vec<IntensityPoint> = cfg
        .gamma_grid
        .iter()
        .map(|&gamma| IntensityPoint {
            gamma,
            intensity: intensity(&rho, cfg.plate_angle, cfg.polarizer_angle, gamma),
        })
        .collect();
    let i_max = curve.iter().map(|p| p.intensity).fold(f64::NEG_INFINITY, f64::max);
    let i_min = curve.iter().map(|p| p.intensity).fold(f64::INFINITY, f64::min);
    let visibility = if i_max + i_min < DARK_TOL {
        0.0
    } else {
        (i_max - i_min) / (i_max + i_min)
    };
    Ok(InterferenceResult {
        curve,
        i_max,
        i_min,
        visibility,
    })
}
