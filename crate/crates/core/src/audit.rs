//! Randomized audits of the resource-theory conditions for a coherence measure.
//!
//! Each audit draws `samples` independent trials; trial `i` uses the
//! keystream `(seed, i)` only, so reports do not depend on evaluation order.
//! For every trial the defining inequality is turned into a signed excess
//! (positive means the condition is broken) and the report keeps the largest
//! one together with a witness that reproduces it.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{apply_channel, selective_outcomes, KrausSet, CHANNEL_OUTPUT_TOL, DEFAULT_P_FLOOR};
use crate::error::{Error, Result};
use crate::linalg::{trace_distance, ComplexMatrix};
use crate::measures::Measure;
use crate::states::{
    apply_unitary, dirichlet, haar_unitary_with, make_density, maximally_mixed, random_channel_with,
    random_density_with, random_diagonal_with, sample_rng, ChannelClass, DensityMatrix, SampleRng,
};

pub const DEFAULT_AUDIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// Invariance under unitaries.
    C0,
    /// Vanishing exactly on the free states, and only there.
    C1,
    /// `C(Phi(rho)) <= C(rho)`.
    #[serde(rename = "C2_average")]
    C2Average,
    /// `sum_n p_n C(rho_n) <= C(rho)`.
    #[serde(rename = "C2_selective")]
    C2Selective,
    /// Convexity.
    C3,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::C0,
        Condition::C1,
        Condition::C2Average,
        Condition::C2Selective,
        Condition::C3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::C0 => "C0",
            Condition::C1 => "C1",
            Condition::C2Average => "C2_average",
            Condition::C2Selective => "C2_selective",
            Condition::C3 => "C3",
        }
    }

    pub fn needs_channel(self) -> bool {
        matches!(self, Condition::C2Average | Condition::C2Selective)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C0" => Ok(Condition::C0),
            "C1" => Ok(Condition::C1),
            "C2avg" | "C2_average" => Ok(Condition::C2Average),
            "C2sel" | "C2_selective" => Ok(Condition::C2Selective),
            "C3" => Ok(Condition::C3),
            other => Err(Error::InvalidArguments(format!("unknown condition '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsWithinTol,
    Violated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    pub measure: Measure,
    pub condition: Condition,
    /// Channel family for the C2 conditions; ignored otherwise.
    pub op_class: Option<ChannelClass>,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Kraus operators per sampled channel; `None` draws 1 to 4 per trial.
    pub kraus_operators: Option<usize>,
    /// Also test the projective measurement in each sampled state's eigenbasis (C2 only).
    pub probe_eigenbasis: bool,
}

impl AuditConfig {
    pub fn new(measure: Measure, condition: Condition, dim: usize, samples: usize, seed: u64) -> Self {
        Self {
            measure,
            condition,
            op_class: None,
            dim,
            samples,
            seed,
            tol: DEFAULT_AUDIT_TOL,
            kraus_operators: None,
            probe_eigenbasis: false,
        }
    }

    pub fn with_class(mut self, class: ChannelClass) -> Self {
        self.op_class = Some(class);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn probing_eigenbasis(mut self) -> Self {
        self.probe_eigenbasis = true;
        self
    }
}

/// Objects that reproduce the worst trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Unitary {
        state: DensityMatrix,
        unitary: ComplexMatrix,
    },
    /// A free state on which the measure is nonzero.
    FreeState { state: DensityMatrix },
    /// A resourceful state on which the measure reads (almost) zero.
    ResourcefulState {
        state: DensityMatrix,
        distance_to_free_set: f64,
    },
    Channel {
        state: DensityMatrix,
        kraus: KrausSet,
        eigenbasis_probe: bool,
    },
    Mixture {
        weights: Vec<f64>,
        states: Vec<DensityMatrix>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub measure_name: String,
    pub condition: Condition,
    pub operation_class: Option<ChannelClass>,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub probe_eigenbasis: bool,
    /// Largest signed excess over all trials; at or below zero means every trial held exactly.
    pub max_violation: f64,
    pub worst_sample: usize,
    pub witness: Witness,
    /// C1 only: smallest measure value seen on the sampled resourceful states.
    pub min_off_class_value: Option<f64>,
    pub verdict: Verdict,
}

struct Trial {
    excess: f64,
    witness: Witness,
    off_class: Option<f64>,
}

pub fn audit_conditions(cfg: &AuditConfig) -> Result<AuditReport> {
    if cfg.samples == 0 {
        return Err(Error::InvalidArguments("samples must be at least 1".into()));
    }
    if cfg.dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if !cfg.tol.is_finite() || cfg.tol < 0.0 {
        return Err(Error::InvalidArguments(format!(
            "tolerance {} is not a finite non-negative number",
            cfg.tol
        )));
    }
    if cfg.condition.needs_channel() && cfg.op_class.is_none() {
        return Err(Error::InvalidArguments(format!(
            "{} needs an operation class",
            cfg.condition
        )));
    }
    if cfg.probe_eigenbasis && !cfg.condition.needs_channel() {
        return Err(Error::InvalidArguments(
            "eigenbasis probing applies to C2 conditions only".into(),
        ));
    }
    if cfg.kraus_operators == Some(0) {
        return Err(Error::InvalidArguments(
            "a channel needs at least one Kraus operator".into(),
        ));
    }

    let mut worst: Option<(usize, Trial)> = None;
    let mut min_off_class: Option<f64> = None;
    for i in 0..cfg.samples {
        let mut rng = sample_rng(cfg.seed, i as u64);
        let trial = run_trial(cfg, &mut rng)?;
        if let Some(v) = trial.off_class {
            min_off_class = Some(min_off_class.map_or(v, |m: f64| m.min(v)));
        }
        if worst.as_ref().is_none_or(|(_, w)| trial.excess > w.excess) {
            worst = Some((i, trial));
        }
    }
    let (worst_sample, trial) = worst.expect("samples >= 1");
    let verdict = if trial.excess > cfg.tol {
        Verdict::Violated
    } else {
        Verdict::HoldsWithinTol
    };
    Ok(AuditReport {
        measure_name: cfg.measure.name().to_string(),
        condition: cfg.condition,
        operation_class: if cfg.condition.needs_channel() {
            cfg.op_class
        } else {
            None
        },
        dim: cfg.dim,
        samples: cfg.samples,
        seed: cfg.seed,
        tol: cfg.tol,
        probe_eigenbasis: cfg.probe_eigenbasis,
        max_violation: trial.excess,
        worst_sample,
        witness: trial.witness,
        min_off_class_value: min_off_class,
        verdict,
    })
}

fn run_trial(cfg: &AuditConfig, rng: &mut SampleRng) -> Result<Trial> {
    let c = |rho: &DensityMatrix| cfg.measure.evaluate(rho);
    let d = cfg.dim;
    match cfg.condition {
        Condition::C0 => {
            let state = random_density_with(d, rng)?;
            let unitary = haar_unitary_with(d, rng)?;
            let rotated = apply_unitary(&state, &unitary)?;
            Ok(Trial {
                excess: (c(&rotated) - c(&state)).abs(),
                witness: Witness::Unitary { state, unitary },
                off_class: None,
            })
        }
        Condition::C1 => {
            let free = match cfg.measure {
                Measure::Ibiqc => maximally_mixed(d)?,
                Measure::L1 | Measure::Re => random_diagonal_with(d, rng)?.to_density(),
            };
            let on_free = c(&free);
            let state = random_density_with(d, rng)?;
            let value = c(&state);
            let free_part = match cfg.measure {
                Measure::Ibiqc => maximally_mixed(d)?,
                Measure::L1 | Measure::Re => state.diagonal_part().to_density(),
            };
            let distance_to_free_set = trace_distance(state.matrix(), free_part.matrix())?;
            let unfaithful = value <= cfg.tol && distance_to_free_set > cfg.tol;
            // a resourceful state read as free counts with its distance from the free set
            let trial = if unfaithful && distance_to_free_set > on_free {
                Trial {
                    excess: distance_to_free_set,
                    witness: Witness::ResourcefulState {
                        state,
                        distance_to_free_set,
                    },
                    off_class: Some(value),
                }
            } else {
                Trial {
                    excess: on_free,
                    witness: Witness::FreeState { state: free },
                    off_class: Some(value),
                }
            };
            Ok(trial)
        }
        Condition::C2Average | Condition::C2Selective => {
            let class = cfg.op_class.expect("validated");
            let state = random_density_with(d, rng)?;
            let k = match cfg.kraus_operators {
                Some(k) => k,
                None => rng.random_range(1..=4),
            };
            let kraus = random_channel_with(class, d, k, rng)?;
            let before = c(&state);
            let excess_for = |set: &KrausSet| -> Result<f64> {
                let after = match cfg.condition {
                    Condition::C2Average => c(&apply_channel(set, &state)?),
                    _ => selective_outcomes(set, &state, DEFAULT_P_FLOOR)?
                        .iter()
                        .map(|o| o.probability * c(&o.state))
                        .sum(),
                };
                Ok(after - before)
            };
            let mut excess = excess_for(&kraus)?;
            let mut witness_kraus = kraus;
            let mut probe_won = false;
            if cfg.probe_eigenbasis {
                let probe = KrausSet::projective(&state.spectrum().eigenvectors, "eigenbasis projective measurement")?;
                let probed = excess_for(&probe)?;
                if probed > excess {
                    excess = probed;
                    witness_kraus = probe;
                    probe_won = true;
                }
            }
            Ok(Trial {
                excess,
                witness: Witness::Channel {
                    state,
                    kraus: witness_kraus,
                    eigenbasis_probe: probe_won,
                },
                off_class: None,
            })
        }
        Condition::C3 => {
            let m = rng.random_range(2..=4);
            let weights = dirichlet(m, rng);
            let states = (0..m)
                .map(|_| random_density_with(d, rng))
                .collect::<Result<Vec<_>>>()?;
            let mut mix = ComplexMatrix::zeros(d);
            for (w, s) in weights.iter().zip(&states) {
                mix = &mix + &s.matrix().scale_real(*w);
            }
            let mixed = make_density(mix, CHANNEL_OUTPUT_TOL)?;
            let average: f64 = weights.iter().zip(&states).map(|(w, s)| w * c(s)).sum();
            Ok(Trial {
                excess: c(&mixed) - average,
                witness: Witness::Mixture { weights, states },
                off_class: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_validation() {
        let base = AuditConfig::new(Measure::Ibiqc, Condition::C0, 2, 10, 1);
        assert!(audit_conditions(&AuditConfig {
            samples: 0,
            ..base.clone()
        })
        .is_err());
        assert!(audit_conditions(&AuditConfig { dim: 0, ..base.clone() }).is_err());
        assert!(audit_conditions(&base.clone().with_tol(f64::NAN)).is_err());
        assert!(audit_conditions(&base.clone().probing_eigenbasis()).is_err());
        let c2 = AuditConfig::new(Measure::Ibiqc, Condition::C2Average, 2, 10, 1);
        assert!(matches!(audit_conditions(&c2), Err(Error::InvalidArguments(_))));
        let c2 = AuditConfig {
            kraus_operators: Some(0),
            ..c2.with_class(ChannelClass::UnitalMixture)
        };
        assert!(audit_conditions(&c2).is_err());
    }

    #[test]
    fn ibiqc_unitary_invariance_holds() {
        let r = audit_conditions(&AuditConfig::new(Measure::Ibiqc, Condition::C0, 4, 200, 3)).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithinTol);
        assert!(r.max_violation < 1e-9);
        assert_eq!(r.operation_class, None);
    }

    #[test]
    fn basis_dependent_measures_fail_c0() {
        for m in [Measure::L1, Measure::Re] {
            let r = audit_conditions(&AuditConfig::new(m, Condition::C0, 3, 50, 3)).unwrap();
            assert_eq!(r.verdict, Verdict::Violated);
            assert!(matches!(r.witness, Witness::Unitary { .. }));
        }
    }

    #[test]
    fn c1_reports_off_class_minimum() {
        let r = audit_conditions(&AuditConfig::new(Measure::Re, Condition::C1, 3, 100, 5)).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithinTol);
        assert_eq!(r.max_violation, 0.0);
        assert!(r.min_off_class_value.unwrap() > 1e-6);
    }

    #[test]
    fn eigenbasis_probe_breaks_ibiqc_selective() {
        let cfg =
            AuditConfig::new(Measure::Ibiqc, Condition::C2Selective, 2, 50, 11).with_class(ChannelClass::UnitalMixture);
        let plain = audit_conditions(&cfg).unwrap();
        assert_eq!(plain.verdict, Verdict::HoldsWithinTol);
        let probed = audit_conditions(&cfg.probing_eigenbasis()).unwrap();
        assert_eq!(probed.verdict, Verdict::Violated);
        match probed.witness {
            Witness::Channel { eigenbasis_probe, .. } => assert!(eigenbasis_probe),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn general_channels_break_ibiqc_average() {
        let cfg = AuditConfig::new(Measure::Ibiqc, Condition::C2Average, 3, 300, 2).with_class(ChannelClass::GeneralTp);
        let r = audit_conditions(&cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(matches!(
            r.witness,
            Witness::Channel {
                eigenbasis_probe: false,
                ..
            }
        ));
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = AuditConfig::new(Measure::L1, Condition::C3, 3, 40, 9);
        assert_eq!(audit_conditions(&cfg).unwrap(), audit_conditions(&cfg).unwrap());
    }

    #[test]
    fn condition_names_parse() {
        for c in Condition::ALL {
            assert_eq!(c.name().parse::<Condition>().unwrap(), c);
        }
        assert_eq!("C2avg".parse::<Condition>().unwrap(), Condition::C2Average);
        assert_eq!("C2sel".parse::<Condition>().unwrap(), Condition::C2Selective);
        assert!("C4".parse::<Condition>().is_err());
    }
}
