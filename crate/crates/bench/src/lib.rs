//! Fixed inputs shared by the criterion benches.

use qcoherence::{random_density, ComplexMatrix, DensityMatrix};

/// Random state of dimension `d` from a fixed seed.
pub fn state(d: usize) -> DensityMatrix {
    random_density(d, 0xbe9c_4000 + d as u64).expect("d >= 1")
}

/// Random Hermitian matrix with entries of order one.
pub fn hermitian(d: usize) -> ComplexMatrix {
    let rho = state(d);
    rho.matrix().scale_real(d as f64)
}
