//! On-disk density matrices.
//!
//! ```json
//! { "dim": 2, "entries": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]], "label": "delta0" }
//! ```

use std::fs;
use std::io::Read;
use std::path::Path;

use qcoherence::states::STATE_TOL;
use qcoherence::{make_density, Complex64, ComplexMatrix, DensityMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::json;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    /// Row-major `[re, im]` pairs.
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A validated state together with the label it was stored under.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedState {
    pub state: DensityMatrix,
    pub label: Option<String>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix, label: Option<String>) -> Self {
        let m = rho.matrix();
        let entries = (0..m.dim())
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        StateFile {
            dim: m.dim(),
            entries,
            label,
        }
    }

    /// Shape check and `make_density` validation; `origin` names the source in errors.
    pub fn validate(&self, origin: &str) -> CliResult<LoadedState> {
        if self.entries.len() != self.dim {
            return Err(CliError::Parse {
                path: origin.to_string(),
                message: format!("dim is {} but entries has {} rows", self.dim, self.entries.len()),
            });
        }
        let mut rows = Vec::with_capacity(self.dim);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.dim {
                return Err(CliError::Parse {
                    path: origin.to_string(),
                    message: format!("row {i} has {} entries, expected {}", row.len(), self.dim),
                });
            }
            rows.push(row.iter().map(|&[re, im]| Complex64::new(re, im)).collect());
        }
        let matrix = ComplexMatrix::from_rows(&rows).map_err(|e| CliError::validation(origin, e))?;
        let state = make_density(matrix, STATE_TOL).map_err(|e| CliError::validation(origin, e))?;
        Ok(LoadedState {
            state,
            label: self.label.clone(),
        })
    }
}

pub fn parse_state(text: &str, origin: &str) -> CliResult<LoadedState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    file.validate(origin)
}

/// Load from a path; `-` reads standard input.
pub fn load_state(path: &Path) -> CliResult<LoadedState> {
    let origin = path.display().to_string();
    let text = if origin == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path, e))?
    };
    parse_state(&text, &origin)
}

pub fn state_to_string(rho: &DensityMatrix, label: Option<&str>) -> CliResult<String> {
    Ok(json::to_string(&StateFile::from_density(
        rho,
        label.map(str::to_string),
    ))?)
}

pub fn save_state(rho: &DensityMatrix, label: Option<&str>, path: &Path) -> CliResult<()> {
    fs::write(path, state_to_string(rho, label)?).map_err(|e| CliError::io(path, e))
}
