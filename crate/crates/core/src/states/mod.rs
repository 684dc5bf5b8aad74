//! Validated quantum states and the named states used throughout the toolkit.

mod random;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, Spectrum};

pub use random::{
    dirichlet, haar_unitary, haar_unitary_with, random_channel, random_channel_with, random_density,
    random_density_with, random_diagonal_with, sample_rng, ChannelClass, SampleRng,
};

/// Default validation tolerance for Hermiticity, trace and positivity.
pub const STATE_TOL: f64 = 1e-10;

/// Tolerance on the normalization of probability and amplitude vectors.
pub const NORM_TOL: f64 = 1e-12;

/// A Hermitian, positive semidefinite, unit-trace matrix together with its
/// (clamped) spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Eigen-decomposition with eigenvalues clamped to be non-negative.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// Real diagonal entries in the representation basis.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// The dephased state `rho_diag`.
    pub fn diagonal_part(&self) -> DiagonalState {
        let probs = self.populations().into_iter().map(|p| p.max(0.0)).collect::<Vec<_>>();
        let total: f64 = probs.iter().sum();
        DiagonalState {
            probs: probs.into_iter().map(|p| p / total).collect(),
        }
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.matrix.is_diagonal(tol)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(serializer)
    }
}

/// Validates `entries` as a density matrix.
///
/// Eigenvalues in `[-tol, 0)` are clamped to zero; when that happens the
/// spectrum is renormalized and the matrix rebuilt from it.
pub fn make_density(entries: ComplexMatrix, tol: f64) -> Result<DensityMatrix> {
    entries.check_hermitian(tol)?;
    let trace = entries.trace().re;
    if (trace - 1.0).abs() > tol || !trace.is_finite() {
        return Err(Error::NotUnitTrace { trace });
    }
    let matrix = entries.hermitian_part();
    let mut spectrum = hermitian_eig(&matrix, tol)?;
    let min_eigenvalue = spectrum.eigenvalues[0];
    if min_eigenvalue < -tol {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    if min_eigenvalue < 0.0 {
        for lam in &mut spectrum.eigenvalues {
            *lam = lam.max(0.0);
        }
        let total: f64 = spectrum.eigenvalues.iter().sum();
        for lam in &mut spectrum.eigenvalues {
            *lam /= total;
        }
        let matrix = spectrum.reconstruct();
        return Ok(DensityMatrix { matrix, spectrum });
    }
    Ok(DensityMatrix { matrix, spectrum })
}

/// `u rho u^dag` for a unitary `u`.
pub fn apply_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    check_unitary(u)?;
    make_density(rho.matrix.conjugate_by(u), STATE_TOL)
}

pub fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    let deviation = u.unitarity_deviation();
    if deviation > STATE_TOL || deviation.is_nan() {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// A probability vector viewed as a state diagonal in the reference basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalState {
    probs: Vec<f64>,
}

impl DiagonalState {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbabilities(format!(
                "entry {p} is not a non-negative number"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidProbabilities(format!("entries sum to {total}")));
        }
        Ok(Self { probs })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self {
            probs: vec![1.0 / dim as f64; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.probs)
    }

    pub fn to_density(&self) -> DensityMatrix {
        make_density(self.to_matrix(), STATE_TOL).expect("diagonal probability vectors are valid states")
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let norm_sqr: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// The projector `|psi><psi|`.
    pub fn to_density(&self) -> DensityMatrix {
        make_density(ComplexMatrix::outer(&self.amplitudes, &self.amplitudes), STATE_TOL)
            .expect("projectors onto normalized vectors are valid states")
    }
}

/// The complete incoherent state `1/d`.
pub fn maximally_mixed(dim: usize) -> Result<DensityMatrix> {
    Ok(DiagonalState::uniform(dim)?.to_density())
}

/// The uniform superposition `(1/sqrt d) sum_i |i>`.
pub fn maximally_coherent(dim: usize) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    Ok(PureState {
        amplitudes: vec![amp; dim],
    })
}

/// The `k`-th computational basis state.
pub fn basis_state(dim: usize, k: usize) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if k >= dim {
        return Err(Error::InvalidArguments(format!(
            "basis index {k} out of range for d = {dim}"
        )));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    amplitudes[k] = Complex64::new(1.0, 0.0);
    Ok(PureState { amplitudes })
}

pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, &[h, h, h, -h]).expect("2x2")
}

/// `(rho_z, rho_x)` with `rho_z = diag(cos^2 a, sin^2 a)` and `rho_x = H rho_z H`.
pub fn qubit_pair(alpha: f64) -> Result<(DensityMatrix, DensityMatrix)> {
    if !alpha.is_finite() {
        return Err(Error::InvalidArguments(format!("alpha must be finite, got {alpha}")));
    }
    let (s, c) = alpha.sin_cos();
    let rho_z = make_density(ComplexMatrix::from_diagonal(&[c * c, s * s]), STATE_TOL)?;
    let rho_x = apply_unitary(&rho_z, &hadamard())?;
    Ok((rho_z, rho_x))
}

/// Optical coherent state `|a>` truncated to the lowest `dim` Fock levels and
/// renormalized.
///
/// Amplitudes `exp(-|a|^2/2) a^n / sqrt(n!)` are evaluated in log space; if
/// every retained amplitude underflows (or the norm overflows) the truncation
/// carries no usable information and [`Error::Degenerate`] is returned.
pub fn glauber_truncated(a: Complex64, dim: usize) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let r = a.norm();
    let phase = if r > 0.0 { a / r } else { Complex64::new(1.0, 0.0) };
    let log_r = r.ln();
    let mut log_fact = 0.0;
    let mut amplitudes = Vec::with_capacity(dim);
    let mut unit = Complex64::new(1.0, 0.0);
    for n in 0..dim {
        if n > 0 {
            log_fact += (n as f64).ln();
            unit *= phase;
        }
        let log_mag = if n == 0 {
            -0.5 * r * r
        } else {
            -0.5 * r * r + n as f64 * log_r - 0.5 * log_fact
        };
        amplitudes.push(unit * log_mag.exp());
    }
    let norm_sqr: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
    if !norm_sqr.is_finite() || norm_sqr <= 0.0 {
        return Err(Error::Degenerate(format!(
            "truncated norm of |{a}> in {dim} levels is {norm_sqr:e}"
        )));
    }
    let norm = norm_sqr.sqrt();
    for z in &mut amplitudes {
        *z /= norm;
    }
    Ok(PureState { amplitudes })
}
