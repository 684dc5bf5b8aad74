//! # qcoherence
//!
//! Quantum coherence quantifiers on finite-dimensional density matrices:
//!
//! - the l1 norm of coherence and the relative entropy of coherence, both
//!   tied to a reference basis;
//! - the basis-independent measure `log2 d - S(rho)`, the relative entropy
//!   between `rho` and the maximally mixed state;
//! - distance-based coherence `min_delta D(rho, delta)` over diagonal states,
//!   solved numerically;
//! - randomized audits of the resource-theory conditions (unitary
//!   invariance, faithfulness, monotonicity under incoherent channels on
//!   average and selectively, convexity) that keep a reproducible witness of
//!   the worst trial.
//!
//! Everything is dense and intended for small dimensions. Entropies are in
//! bits.

pub mod audit;
pub mod channels;
mod error;
pub mod linalg;
pub mod measures;
pub mod optimize;
pub mod states;

pub use audit::{audit_conditions, AuditConfig, AuditReport, Condition, Verdict, Witness};
pub use channels::{
    apply_channel, classify_kraus, selective_counterexample, selective_outcomes, KrausFlags, KrausSet, Outcome,
};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use measures::{
    ibiqc_coherence, l1_coherence, min_distance_coherence, rel_ent_coherence, relative_entropy, von_neumann_entropy,
    CoherenceReport, IncoherentSet, Measure, Metric,
};
pub use num_complex::Complex64;
pub use states::{
    apply_unitary, glauber_truncated, haar_unitary, make_density, maximally_coherent, maximally_mixed, qubit_pair,
    random_channel, random_density, ChannelClass, DensityMatrix, DiagonalState, PureState,
};
