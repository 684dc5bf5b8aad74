//! Seeded generators for random states, unitaries and channels.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`; a
//! second `stream` coordinate selects an independent keystream so that sample
//! `i` of an audit is a pure function of `(seed, i)`.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{make_density, DensityMatrix, DiagonalState, STATE_TOL};
use crate::channels::KrausSet;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

pub type SampleRng = ChaCha8Rng;

pub fn sample_rng(seed: u64, stream: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Families of channels the audit harness can sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelClass {
    /// `K_n = sqrt(p_n) U_n`: trace preserving and unital.
    UnitalMixture,
    /// `K_n = Pi_n D_n` (permutation times diagonal): maps diagonal states to diagonal states.
    DiagonalIncoherent,
    /// Blocks of a random `k d x d` isometry: trace preserving, generically not unital.
    GeneralTp,
}

impl ChannelClass {
    pub fn name(self) -> &'static str {
        match self {
            ChannelClass::UnitalMixture => "unital_mixture",
            ChannelClass::DiagonalIncoherent => "diagonal_incoherent",
            ChannelClass::GeneralTp => "general_tp",
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::InvalidDimension(0))
    } else {
        Ok(())
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    // column-major: one Vec per column
    (0..cols)
        .map(|_| (0..rows).map(|_| complex_gaussian(rng)).collect())
        .collect()
}

/// Orthonormalizes columns in place (modified Gram-Schmidt, two passes).
///
/// The implied R factor has a positive real diagonal, which is the phase
/// convention that makes Q Haar distributed for Ginibre input.
fn orthonormalize(cols: &mut [Vec<Complex64>]) -> Result<()> {
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let v = &mut rest[0];
        for _ in 0..2 {
            for q in done.iter() {
                let proj: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 1e-300 {
            return Err(Error::Degenerate("rank-deficient Gaussian sample".into()));
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    Ok(())
}

/// `GG^dag / tr(GG^dag)` with `G` a complex Ginibre matrix.
pub fn random_density_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(d)?;
    let data = (0..d * d).map(|_| complex_gaussian(rng)).collect();
    let g = ComplexMatrix::from_vec(d, data)?;
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    make_density(w.scale_real(1.0 / tr), STATE_TOL)
}

pub fn random_density(d: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(d, &mut sample_rng(seed, 0))
}

/// Haar-random unitary from the QR factor of a Ginibre matrix.
pub fn haar_unitary_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut cols = ginibre(d, d, rng);
    orthonormalize(&mut cols)?;
    let mut u = ComplexMatrix::zeros(d);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    Ok(u)
}

pub fn haar_unitary(d: usize, seed: u64) -> Result<ComplexMatrix> {
    haar_unitary_with(d, &mut sample_rng(seed, 0))
}

/// Uniform point on the probability simplex (flat Dirichlet).
pub fn dirichlet<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

pub fn random_diagonal_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DiagonalState> {
    check_dim(d)?;
    let probs = dirichlet(d, rng);
    DiagonalState::new(probs)
}

pub fn random_channel_with<R: Rng + ?Sized>(class: ChannelClass, d: usize, k: usize, rng: &mut R) -> Result<KrausSet> {
    check_dim(d)?;
    if k == 0 {
        return Err(Error::InvalidArguments(
            "a channel needs at least one Kraus operator".into(),
        ));
    }
    let operators = match class {
        ChannelClass::UnitalMixture => {
            let weights = if k == 1 { vec![1.0] } else { dirichlet(k, rng) };
            weights
                .into_iter()
                .map(|p| Ok(haar_unitary_with(d, rng)?.scale_real(p.sqrt())))
                .collect::<Result<Vec<_>>>()?
        }
        ChannelClass::DiagonalIncoherent => {
            let mut rows: Vec<usize> = (0..d).collect();
            let mut ops = Vec::with_capacity(k);
            let mut amps = Vec::with_capacity(k);
            for _ in 0..k {
                rows.shuffle(rng);
                ops.push(rows.clone());
                amps.push((0..d).map(|_| complex_gaussian(rng)).collect::<Vec<_>>());
            }
            let column_norms: Vec<f64> = (0..d)
                .map(|j| amps.iter().map(|a| a[j].norm_sqr()).sum::<f64>().sqrt())
                .collect();
            ops.iter()
                .zip(&amps)
                .map(|(perm, a)| {
                    let mut m = ComplexMatrix::zeros(d);
                    for j in 0..d {
                        m[(perm[j], j)] = a[j] / column_norms[j];
                    }
                    m
                })
                .collect()
        }
        ChannelClass::GeneralTp => {
            let mut cols = ginibre(k * d, d, rng);
            orthonormalize(&mut cols)?;
            (0..k)
                .map(|n| {
                    let mut m = ComplexMatrix::zeros(d);
                    for (j, col) in cols.iter().enumerate() {
                        for i in 0..d {
                            m[(i, j)] = col[n * d + i];
                        }
                    }
                    m
                })
                .collect()
        }
    };
    KrausSet::new(operators, format!("{}(d={d}, k={k})", class.name()))
}

pub fn random_channel(class: ChannelClass, d: usize, k: usize, seed: u64) -> Result<KrausSet> {
    random_channel_with(class, d, k, &mut sample_rng(seed, 0))
}
