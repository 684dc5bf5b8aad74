//! Coherence quantifiers and entropies. All logarithms are base 2.
//!
//! The l1 norm and the relative entropy of coherence are evaluated in the
//! basis of the matrix representation as given; changing basis is an
//! explicit [`apply_unitary`](crate::states::apply_unitary) by the caller.
//! The basis-independent measure `log2 d - S(rho)` depends on the spectrum
//! only.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{frobenius_distance, trace_distance, xlog2x, ComplexMatrix};
use crate::optimize::NelderMead;
use crate::states::{make_density, maximally_mixed, DensityMatrix, DiagonalState, STATE_TOL};

/// sigma-eigenvalues below this count as outside the support.
pub const SUPPORT_EIGEN_TOL: f64 = 1e-12;

/// rho-weight on a null direction of sigma above which the relative entropy diverges.
pub const SUPPORT_WEIGHT_TOL: f64 = 1e-10;

/// Shannon entropy of a probability vector, summed in ascending order.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = probs.iter().map(|p| p.max(0.0)).collect();
    sorted.sort_by(f64::total_cmp);
    -sorted.into_iter().map(xlog2x).sum::<f64>()
}

/// `S(rho) = -tr(rho log2 rho)` over the clamped spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(rho.eigenvalues()).max(0.0)
}

/// `S(rho_diag)`: entropy of the populations in the representation basis.
pub fn diagonal_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.populations()).max(0.0)
}

/// `sum_{i != j} |rho_ij|`.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let d = m.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += m[(i, j)].norm();
            }
        }
    }
    acc
}

/// `S(rho_diag) - S(rho)`.
pub fn rel_ent_coherence(rho: &DensityMatrix) -> f64 {
    (diagonal_entropy(rho) - von_neumann_entropy(rho)).max(0.0)
}

/// `log2 d - S(rho)`, the relative entropy to the maximally mixed state.
///
/// Evaluated as `sum_i lambda_i log2(d lambda_i)`, which is the same
/// quantity and is exactly zero at `1/d` for every `d`.
pub fn ibiqc_coherence(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    let mut terms: Vec<f64> = rho
        .eigenvalues()
        .iter()
        .map(|&lam| if lam > 0.0 { lam * (d * lam).log2() } else { 0.0 })
        .collect();
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum::<f64>().max(0.0)
}

/// Quantum relative entropy `S(rho || sigma) = tr rho log2 rho - tr rho log2 sigma`.
///
/// Returns `f64::INFINITY` when `rho` puts weight above
/// [`SUPPORT_WEIGHT_TOL`] on an eigendirection of `sigma` whose eigenvalue is
/// below [`SUPPORT_EIGEN_TOL`].
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let spectrum = sigma.spectrum();
    let m = rho.matrix();
    let d = rho.dim();
    let mut cross = 0.0;
    for (k, &lam) in spectrum.eigenvalues.iter().enumerate() {
        let v = spectrum.eigenvector(k);
        let mut weight = 0.0;
        for i in 0..d {
            for j in 0..d {
                weight += (v[i].conj() * m[(i, j)] * v[j]).re;
            }
        }
        if lam < SUPPORT_EIGEN_TOL {
            if weight > SUPPORT_WEIGHT_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * lam.log2();
    }
    Ok((-von_neumann_entropy(rho) - cross).max(0.0))
}

/// The three coherence quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    L1,
    Re,
    Ibiqc,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::L1, Measure::Re, Measure::Ibiqc];

    pub fn evaluate(self, rho: &DensityMatrix) -> f64 {
        match self {
            Measure::L1 => l1_coherence(rho),
            Measure::Re => rel_ent_coherence(rho),
            Measure::Ibiqc => ibiqc_coherence(rho),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::L1 => "l1",
            Measure::Re => "re",
            Measure::Ibiqc => "ibiqc",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(Measure::L1),
            "re" => Ok(Measure::Re),
            "ibiqc" => Ok(Measure::Ibiqc),
            other => Err(Error::InvalidArguments(format!("unknown measure '{other}'"))),
        }
    }
}

/// Entropies and all three coherence values of one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub dim: usize,
    pub s_rho: f64,
    pub s_diag: f64,
    pub c_l1: f64,
    pub c_re: f64,
    pub c_ibiqc: f64,
    pub basis_label: String,
}

impl CoherenceReport {
    pub fn new(rho: &DensityMatrix, basis_label: impl Into<String>) -> Self {
        Self {
            dim: rho.dim(),
            s_rho: von_neumann_entropy(rho),
            s_diag: diagonal_entropy(rho),
            c_l1: l1_coherence(rho),
            c_re: rel_ent_coherence(rho),
            c_ibiqc: ibiqc_coherence(rho),
            basis_label: basis_label.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    RelativeEntropy,
    Trace,
    Frobenius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IncoherentSet {
    /// Every state diagonal in the reference basis.
    AllDiagonal,
    /// The single state `1/d`.
    Delta0Only,
}

pub fn distance(metric: Metric, rho: &DensityMatrix, delta: &DensityMatrix) -> Result<f64> {
    match metric {
        Metric::RelativeEntropy => relative_entropy(rho, delta),
        Metric::Trace => trace_distance(rho.matrix(), delta.matrix()),
        Metric::Frobenius => frobenius_distance(rho.matrix(), delta.matrix()),
    }
}

/// Where the simplex search over diagonal states begins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexStart {
    Populations,
    Uniform,
}

/// `min_{delta in set} D(rho, delta)` and the minimizing diagonal state.
///
/// Over all diagonal states the probabilities are parameterized by a softmax
/// of `d - 1` free logits (the last one pinned to zero) and searched with
/// Nelder-Mead, once from the populations of `rho` and once from the uniform
/// distribution; the better result is returned.
pub fn min_distance_coherence(rho: &DensityMatrix, metric: Metric, set: IncoherentSet) -> Result<(f64, DiagonalState)> {
    match set {
        IncoherentSet::Delta0Only => {
            let delta0 = maximally_mixed(rho.dim())?;
            Ok((distance(metric, rho, &delta0)?, DiagonalState::uniform(rho.dim())?))
        }
        IncoherentSet::AllDiagonal => min_distance_from(
            rho,
            metric,
            &[SimplexStart::Populations, SimplexStart::Uniform],
            &NelderMead::default(),
        ),
    }
}

/// Simplex search over diagonal states from explicit starting points.
pub fn min_distance_from(
    rho: &DensityMatrix,
    metric: Metric,
    starts: &[SimplexStart],
    optimizer: &NelderMead,
) -> Result<(f64, DiagonalState)> {
    let d = rho.dim();
    if d == 1 {
        let delta = DiagonalState::uniform(1)?;
        return Ok((distance(metric, rho, &delta.to_density())?, delta));
    }
    let objective = |logits: &[f64]| -> f64 {
        let probs = softmax(logits);
        make_density(ComplexMatrix::from_diagonal(&probs), STATE_TOL)
            .and_then(|delta| distance(metric, rho, &delta))
            .unwrap_or(f64::INFINITY)
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut evaluations = 0;
    for start in starts {
        let x0 = match start {
            SimplexStart::Uniform => vec![0.0; d - 1],
            SimplexStart::Populations => {
                let pops = rho.populations();
                let floor = |p: f64| p.max(1e-300).ln();
                let last = floor(pops[d - 1]);
                pops[..d - 1].iter().map(|&p| floor(p) - last).collect()
            }
        };
        let m = optimizer.minimize(&objective, &x0);
        evaluations += m.evaluations;
        if !m.converged {
            continue;
        }
        if best.as_ref().is_none_or(|(v, _)| m.value < *v) {
            best = Some((m.value, m.x));
        }
    }
    let (value, logits) = best.ok_or(Error::OptimizerFailure { evaluations })?;
    Ok((value, DiagonalState::new(softmax(&logits))?))
}

/// Probabilities from `d - 1` logits with an implicit trailing zero logit.
fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(0.0, f64::max);
    let mut probs: Vec<f64> = logits.iter().map(|&x| (x - max).exp()).collect();
    probs.push((-max).exp());
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    probs
}
