//! Dense complex matrices and Hermitian spectral routines.

mod eigen;
mod matrix;

pub use eigen::{
    frobenius_distance, hermitian_eig, hermitian_func, trace_distance, xlog2x, Spectrum, HERMITIAN_TOL,
    JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL,
};
pub use matrix::ComplexMatrix;
