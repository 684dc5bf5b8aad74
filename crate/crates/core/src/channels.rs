//! Kraus channels: application, selective measurement outcomes and
//! structural classification.
//!
//! Completeness is the trace-preserving order `sum_n K_n^dag K_n = 1`; the
//! reverse order `sum_n K_n K_n^dag = 1` is unitality, reported separately by
//! [`classify_kraus`].

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::measures::{ibiqc_coherence, von_neumann_entropy};
use crate::states::{make_density, random_diagonal_with, sample_rng, DensityMatrix};

/// Frobenius tolerance on completeness and unitality.
pub const KRAUS_TOL: f64 = 1e-10;

/// Validation tolerance for channel outputs.
pub const CHANNEL_OUTPUT_TOL: f64 = 1e-9;

/// Default probability below which selective outcomes are dropped.
pub const DEFAULT_P_FLOOR: f64 = 1e-12;

/// Entries with magnitude above this count as structurally nonzero.
pub const STRUCTURAL_ZERO_TOL: f64 = 1e-12;

/// Minimum entropy for which an eigenbasis measurement violates selective monotonicity.
pub const PURE_ENTROPY_TOL: f64 = 1e-6;

/// A trace-preserving set of Kraus operators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrausSet {
    label: String,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::InvalidArguments(
                "a channel needs at least one Kraus operator".into(),
            ));
        };
        let dim = first.dim();
        if let Some(bad) = operators.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let deviation = completeness_deviation(&operators);
        if deviation.is_nan() || deviation >= KRAUS_TOL {
            return Err(Error::InvalidKraus { deviation });
        }
        Ok(Self {
            label: label.into(),
            operators,
        })
    }

    /// The single-operator channel `rho -> u rho u^dag`.
    pub fn unitary(u: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        Self::new(vec![u], label)
    }

    /// Projective measurement `{|v_i><v_i|}` onto the columns of `basis`.
    pub fn projective(basis: &ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        let ops = (0..basis.dim())
            .map(|i| {
                let v = basis.column(i);
                ComplexMatrix::outer(&v, &v)
            })
            .collect();
        Self::new(ops, label)
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn completeness_deviation(&self) -> f64 {
        completeness_deviation(&self.operators)
    }

    pub fn classify(&self) -> KrausFlags {
        classify_kraus(&self.operators)
    }
}

/// `||sum K^dag K - 1||_F`.
pub fn completeness_deviation(ops: &[ComplexMatrix]) -> f64 {
    let dim = ops[0].dim();
    let mut acc = ComplexMatrix::zeros(dim);
    for k in ops {
        acc = &acc + &(&k.adjoint() * k);
    }
    (&acc - &ComplexMatrix::identity(dim)).frobenius_norm()
}

/// `||sum K K^dag - 1||_F`.
pub fn unitality_deviation(ops: &[ComplexMatrix]) -> f64 {
    let dim = ops[0].dim();
    let mut acc = ComplexMatrix::zeros(dim);
    for k in ops {
        acc = &acc + &(k * &k.adjoint());
    }
    (&acc - &ComplexMatrix::identity(dim)).frobenius_norm()
}

/// `b b^dag`, exactly Hermitian.
fn gram(b: &ComplexMatrix) -> ComplexMatrix {
    let n = b.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let z: Complex64 = b.row(i).iter().zip(b.row(j)).map(|(x, y)| x * y.conj()).sum();
            if i == j {
                out[(i, i)] = Complex64::new(z.re, 0.0);
            } else {
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
    }
    out
}

/// `V sqrt(Lambda)`, so that `rho = F F^dag`.
fn square_root_factor(rho: &DensityMatrix) -> ComplexMatrix {
    let s = rho.spectrum();
    let mut f = s.eigenvectors.clone();
    let d = rho.dim();
    for (k, &lam) in s.eigenvalues.iter().enumerate() {
        let r = lam.sqrt();
        for i in 0..d {
            f[(i, k)] *= r;
        }
    }
    f
}

fn check_dims(k: &KrausSet, rho: &DensityMatrix) -> Result<()> {
    if k.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: k.dim(),
        });
    }
    Ok(())
}

/// `sum_n K_n rho K_n^dag`.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_dims(k, rho)?;
    let f = square_root_factor(rho);
    let mut out = ComplexMatrix::zeros(rho.dim());
    for op in k.operators() {
        out = &out + &gram(&(op * &f));
    }
    make_density(out, CHANNEL_OUTPUT_TOL)
}

/// One retained branch of a selective measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    /// Index of the Kraus operator that produced this branch.
    pub index: usize,
    pub probability: f64,
    pub state: DensityMatrix,
}

/// Post-measurement branches `(p_n, K_n rho K_n^dag / p_n)` with `p_n >= p_floor`.
pub fn selective_outcomes(k: &KrausSet, rho: &DensityMatrix, p_floor: f64) -> Result<Vec<Outcome>> {
    check_dims(k, rho)?;
    let f = square_root_factor(rho);
    let mut outcomes = Vec::with_capacity(k.operators().len());
    for (index, op) in k.operators().iter().enumerate() {
        let branch = gram(&(op * &f));
        let probability = branch.trace().re;
        if probability.is_nan() || probability < p_floor || probability <= 0.0 {
            continue;
        }
        let state = make_density(branch.scale_real(1.0 / probability), CHANNEL_OUTPUT_TOL)?;
        outcomes.push(Outcome {
            index,
            probability,
            state,
        });
    }
    Ok(outcomes)
}

/// Structural properties of a set of Kraus operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KrausFlags {
    pub trace_preserving: bool,
    pub unital: bool,
    /// Every operator maps diagonal states to diagonal states.
    pub diagonal_incoherent: bool,
}

/// Classifies operators that need not form a valid channel.
///
/// `diagonal_incoherent` requires at most one structurally nonzero entry per
/// column of every operator, cross-checked on ten fixed random diagonal
/// states.
pub fn classify_kraus(ops: &[ComplexMatrix]) -> KrausFlags {
    if ops.is_empty() || ops.iter().any(|k| k.dim() != ops[0].dim()) {
        return KrausFlags {
            trace_preserving: false,
            unital: false,
            diagonal_incoherent: false,
        };
    }
    let dim = ops[0].dim();
    let structural = ops
        .iter()
        .all(|k| (0..dim).all(|j| (0..dim).filter(|&i| k[(i, j)].norm() > STRUCTURAL_ZERO_TOL).count() <= 1));
    let behavioral = structural
        && (0..10u64).all(|probe| {
            let delta = random_diagonal_with(dim, &mut sample_rng(0xd1a6_0000, probe))
                .expect("dim >= 1")
                .to_matrix();
            let mut out = ComplexMatrix::zeros(dim);
            for k in ops {
                out = &out + &delta.conjugate_by(k);
            }
            out.is_diagonal(1e-10)
        });
    KrausFlags {
        trace_preserving: completeness_deviation(ops) < KRAUS_TOL,
        unital: unitality_deviation(ops) < KRAUS_TOL,
        diagonal_incoherent: behavioral,
    }
}

/// Measurement in the eigenbasis of a mixed `rho`, with the amount by which
/// it breaks selective monotonicity of the basis-independent measure.
///
/// Every branch is a pure eigenprojector, so the average output coherence is
/// `log2 d` and the violation equals `S(rho)`.
pub fn selective_counterexample(rho: &DensityMatrix) -> Result<(KrausSet, f64)> {
    let entropy = von_neumann_entropy(rho);
    if entropy <= PURE_ENTROPY_TOL {
        return Err(Error::StatePure { entropy });
    }
    let kraus = KrausSet::projective(&rho.spectrum().eigenvectors, "eigenbasis projective measurement")?;
    let violation = selective_violation(&kraus, rho, ibiqc_coherence)?;
    Ok((kraus, violation))
}

/// `sum_n p_n C(rho_n) - C(rho)` over outcomes above [`DEFAULT_P_FLOOR`].
pub fn selective_violation<F: Fn(&DensityMatrix) -> f64>(k: &KrausSet, rho: &DensityMatrix, measure: F) -> Result<f64> {
    let outcomes = selective_outcomes(k, rho, DEFAULT_P_FLOOR)?;
    let average: f64 = outcomes.iter().map(|o| o.probability * measure(&o.state)).sum();
    Ok(average - measure(rho))
}
