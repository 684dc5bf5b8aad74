//! End-to-end acceptance suite. Runs without the libtest harness so that the
//! one-line verdict of every criterion is always printed.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};
use std::process::{Command, ExitCode};

use qcoherence::measures::diagonal_entropy;
use qcoherence::{
    ibiqc_coherence, maximally_mixed, min_distance_coherence, qubit_pair, random_density, rel_ent_coherence,
    relative_entropy, selective_counterexample, von_neumann_entropy, ChannelClass, Complex64, Condition, DensityMatrix,
    IncoherentSet, Measure, Metric, Verdict,
};
use qcoherence_cli::demos::qubit_closed_form;
use qcoherence_cli::{
    demo_glauber, demo_interference, linspace, sweep_alpha, AuditRequest, InputLight, InterferenceConfig,
};

const SEED: u64 = 20_240_601;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1_alpha_sweep() -> Check {
    let rows = sweep_alpha(&linspace(0.0, PI, 181).unwrap()).map_err(|e| e.to_string())?;
    ensure(rows.len() == 181, || format!("{} rows", rows.len()))?;
    let (mut worst_closed, mut worst_pair) = (0.0f64, 0.0f64);
    for r in &rows {
        let expected = qubit_closed_form(r.alpha);
        for v in [r.ibiqc_z, r.ibiqc_x, r.re_x] {
            worst_closed = worst_closed.max((v - expected).abs());
        }
        worst_pair = worst_pair.max((r.ibiqc_z - r.ibiqc_x).abs());
        ensure(r.re_z == 0.0, || {
            format!("C_re(rho_z) = {:e} at alpha = {}", r.re_z, r.alpha)
        })?;
    }
    ensure(worst_closed < 1e-9, || format!("closed-form error {worst_closed:e}"))?;
    ensure(worst_pair < 1e-12, || format!("z/x mismatch {worst_pair:e}"))?;
    Ok(format!(
        "closed-form error {worst_closed:.1e}, z/x gap {worst_pair:.1e}, C_re(rho_z) = 0"
    ))
}

fn criterion_2_identity() -> Check {
    let dims = [2usize, 3, 4, 6];
    let mut worst = 0.0f64;
    for i in 0..1000u64 {
        let d = dims[i as usize % dims.len()];
        let rho = random_density(d, SEED + i).map_err(|e| e.to_string())?;
        let lhs = relative_entropy(&rho, &maximally_mixed(d).unwrap()).map_err(|e| e.to_string())?;
        worst = worst.max((lhs - ((d as f64).log2() - von_neumann_entropy(&rho))).abs());
    }
    ensure(worst < 1e-9, || format!("worst gap {worst:e}"))?;
    Ok(format!("1000 states, worst gap {worst:.1e}"))
}

fn run_audit(
    measure: Measure,
    condition: Condition,
    class: Option<ChannelClass>,
    probe: bool,
    d: usize,
) -> Result<qcoherence::AuditReport, String> {
    let req = AuditRequest {
        measures: vec![measure],
        conditions: vec![condition],
        classes: class.into_iter().collect(),
        dim: d,
        samples: 1000,
        seed: SEED,
        tol: 1e-9,
        probe_eigenbasis: probe,
        expect: None,
    };
    let mut out = req.run().map_err(|e| e.to_string())?;
    ensure(out.len() == 1, || format!("{} reports", out.len()))?;
    Ok(out.remove(0).report)
}

fn holds(measure: Measure, condition: Condition, class: Option<ChannelClass>, d: usize) -> Result<f64, String> {
    let r = run_audit(measure, condition, class, false, d)?;
    ensure(r.verdict == Verdict::HoldsWithinTol && r.max_violation < 1e-9, || {
        format!(
            "{measure} {condition} {:?} d={d}: max violation {:e}",
            class.map(ChannelClass::name),
            r.max_violation
        )
    })?;
    Ok(r.max_violation)
}

fn criterion_3_condition_audits() -> Check {
    let mut worst = f64::NEG_INFINITY;
    let mut floor = f64::INFINITY;
    let mut count = 0;
    for d in [2usize, 3, 4] {
        worst = worst.max(holds(Measure::Ibiqc, Condition::C0, None, d)?);

        let c1 = run_audit(Measure::Ibiqc, Condition::C1, None, false, d)?;
        ensure(c1.verdict == Verdict::HoldsWithinTol, || {
            format!("d={d}: C1 verdict {:?}", c1.verdict)
        })?;
        ensure(ibiqc_coherence(&maximally_mixed(d).unwrap()) == 0.0, || {
            format!("d={d}: C_IBIQC(delta0) != 0")
        })?;
        let min_off = c1.min_off_class_value.unwrap_or(0.0);
        ensure(min_off > 1e-6, || {
            format!("d={d}: C1 smallest value off delta0 {min_off:e}")
        })?;
        floor = floor.min(min_off);

        worst = worst.max(holds(
            Measure::Ibiqc,
            Condition::C2Average,
            Some(ChannelClass::UnitalMixture),
            d,
        )?);
        for m in Measure::ALL {
            worst = worst.max(holds(m, Condition::C3, None, d)?);
        }
        for m in [Measure::L1, Measure::Re] {
            for c in [Condition::C2Average, Condition::C2Selective] {
                worst = worst.max(holds(m, c, Some(ChannelClass::DiagonalIncoherent), d)?);
            }
        }
        count += 10;
    }
    Ok(format!(
        "{count} audits x 1000 samples hold (d = 2, 3, 4), worst excess {worst:.1e}, C1 floor {floor:.3}"
    ))
}

fn criterion_4_falsification() -> Check {
    let (rz, _) = qubit_pair(FRAC_PI_6).map_err(|e| e.to_string())?;
    let (kraus, violation) = selective_counterexample(&rz).map_err(|e| e.to_string())?;
    ensure((violation - 0.811278).abs() <= 1e-6, || {
        format!("violation {violation}")
    })?;
    let flags = kraus.classify();
    ensure(flags.unital && flags.trace_preserving, || format!("flags {flags:?}"))?;
    let r = run_audit(
        Measure::Ibiqc,
        Condition::C2Selective,
        Some(ChannelClass::UnitalMixture),
        true,
        2,
    )?;
    ensure(r.verdict == Verdict::Violated, || {
        format!("probe audit verdict {:?}", r.verdict)
    })?;
    Ok(format!(
        "violation {violation:.6} bits, unital + TP, probe audit violated (excess {:.3})",
        r.max_violation
    ))
}

/// Trace distance between a qubit state and diag(p, 1-p), in closed form.
fn qubit_trace_distance(rho: &DensityMatrix, p: f64) -> f64 {
    let m = rho.matrix();
    let a = m[(0, 0)].re - p;
    let b = m[(0, 1)].norm();
    // the difference is traceless, so its eigenvalues are +-sqrt(a^2 + |b|^2)
    (a * a + b * b).sqrt()
}

fn criterion_5_optimizer() -> Check {
    let mut worst_re = 0.0f64;
    for i in 0..100u64 {
        let d = 2 + i as usize % 3;
        let rho = random_density(d, SEED ^ (i << 8)).map_err(|e| e.to_string())?;
        let (v, _) = min_distance_coherence(&rho, Metric::RelativeEntropy, IncoherentSet::AllDiagonal)
            .map_err(|e| e.to_string())?;
        worst_re = worst_re.max((v - rel_ent_coherence(&rho)).abs());
    }
    ensure(worst_re < 1e-6, || format!("relative-entropy gap {worst_re:e}"))?;

    let mut worst_tr = 0.0f64;
    for i in 0..20u64 {
        let rho = random_density(2, SEED + 7_000 + i).map_err(|e| e.to_string())?;
        let (v, _) =
            min_distance_coherence(&rho, Metric::Trace, IncoherentSet::AllDiagonal).map_err(|e| e.to_string())?;
        let grid = (0..=10_000)
            .map(|k| qubit_trace_distance(&rho, k as f64 * 1e-4))
            .fold(f64::INFINITY, f64::min);
        worst_tr = worst_tr.max((v - grid).abs());
    }
    ensure(worst_tr < 2e-4, || format!("trace-metric gap to grid {worst_tr:e}"))?;
    Ok(format!(
        "relative entropy gap {worst_re:.1e} (100 states), trace gap to grid {worst_tr:.1e} (20 qubits)"
    ))
}

fn criterion_6_purity_chain() -> Check {
    let mut tightest = f64::INFINITY;
    for i in 0..1000u64 {
        let d = 1 + i as usize % 6;
        let rho = random_density(d, SEED + 50_000 + i).map_err(|e| e.to_string())?;
        let (c, s, l) = (rel_ent_coherence(&rho), diagonal_entropy(&rho), (d as f64).log2());
        ensure(c <= s + 1e-9 && s <= l + 1e-9, || {
            format!("d={d}: C_re {c}, S_diag {s}, log d {l}")
        })?;
        tightest = tightest.min(s - c).min(l - s);
    }
    Ok(format!("1000 states, smallest margin {tightest:.1e}"))
}

fn criterion_7_glauber() -> Check {
    let dims: Vec<usize> = (2..=8).collect();
    let rows = demo_glauber(Complex64::new(1.0, 0.0), &dims).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max((r.c_ibiqc - (r.d as f64).log2()).abs());
        if r.d >= 3 {
            let ratio = r.l1_ratio.unwrap_or(f64::NAN);
            ensure(ratio < 1.0, || format!("d={}: C_l1/(d-1) = {ratio}", r.d))?;
        }
    }
    ensure(worst < 1e-9, || format!("C_IBIQC off log2 d by {worst:e}"))?;
    let max_ratio = rows
        .iter()
        .filter(|r| r.d >= 3)
        .filter_map(|r| r.l1_ratio)
        .fold(0.0, f64::max);
    Ok(format!(
        "C_IBIQC = log2 d within {worst:.1e}; C_l1/(d-1) <= {max_ratio:.4} for d >= 3"
    ))
}

fn criterion_8_interference() -> Check {
    let gamma_grid: Vec<f64> = (0..=180).map(|i| 2.0 * PI * i as f64 / 180.0).collect();
    let visibility = |input: InputLight, plate_angle: f64, polarizer_angle: f64| {
        let cfg = InterferenceConfig {
            input,
            plate_angle,
            polarizer_angle,
            gamma_grid: gamma_grid.clone(),
        };
        demo_interference(&cfg).map(|r| r.visibility).map_err(|e| e.to_string())
    };
    let natural = visibility(InputLight::NaturalLight, 0.3, 1.2)?;
    let diagonal = visibility(InputLight::Linear { psi: FRAC_PI_4 }, 0.0, FRAC_PI_4)?;
    let along = visibility(InputLight::Linear { psi: 0.4 }, 0.4, 1.0)?;
    ensure(natural < 1e-12, || format!("natural light V = {natural:e}"))?;
    ensure(diagonal > 1.0 - 1e-9, || format!("45 degree V = {diagonal}"))?;
    ensure(along < 1e-12, || format!("along-axis V = {along:e}"))?;
    Ok(format!(
        "V natural {natural:.1e}, 45-degree {diagonal:.12}, along-axis {along:.1e}"
    ))
}

fn run_binary(args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_qcoherence"))
        .args(args)
        .stderr(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("{args:?} exited with {status}"))
}

fn criterion_9_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).display().to_string();
    let mut compared = 0;
    for run in ["a", "b"] {
        run_binary(&[
            "audit",
            "--measure",
            "l1,re,ibiqc",
            "--condition",
            "C0,C1,C2avg,C2sel,C3",
            "--d",
            "3",
            "--samples",
            "200",
            "--seed",
            "11",
            "--out",
            &path(&format!("audit_{run}")),
        ])?;
        run_binary(&[
            "audit",
            "--measure",
            "ibiqc",
            "--condition",
            "C2sel",
            "--class",
            "unital",
            "--probe-eigenbasis",
            "--d",
            "2",
            "--samples",
            "500",
            "--seed",
            "11",
            "--out",
            &path(&format!("probe_{run}.json")),
        ])?;
        run_binary(&[
            "sweep",
            "--from",
            "0",
            "--to",
            "3.14159265",
            "--points",
            "181",
            "--out",
            &path(&format!("sweep_{run}.csv")),
        ])?;
    }
    let read = |p: std::path::PathBuf| std::fs::read(&p).map_err(|e| format!("{}: {e}", p.display()));
    let mut names: Vec<_> = std::fs::read_dir(dir.path().join("audit_a"))
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.file_name()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    names.sort();
    ensure(names.len() == 27, || format!("{} audit reports", names.len()))?;
    for name in &names {
        let a = read(dir.path().join("audit_a").join(name))?;
        let b = read(dir.path().join("audit_b").join(name))?;
        ensure(a == b, || format!("{} differs between runs", name.to_string_lossy()))?;
        compared += 1;
    }
    for (a, b) in [("probe_a.json", "probe_b.json"), ("sweep_a.csv", "sweep_b.csv")] {
        ensure(read(dir.path().join(a))? == read(dir.path().join(b))?, || {
            format!("{a} vs {b} differ")
        })?;
        compared += 1;
    }
    Ok(format!("{compared} output files byte-identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 alpha sweep closed forms", criterion_1_alpha_sweep),
        ("2 relative entropy to delta0 identity", criterion_2_identity),
        ("3 condition audits", criterion_3_condition_audits),
        ("4 selective monotonicity counterexample", criterion_4_falsification),
        ("5 distance-coherence optimizer", criterion_5_optimizer),
        ("6 purity inequality chain", criterion_6_purity_chain),
        ("7 Glauber truncations", criterion_7_glauber),
        ("8 interference visibility", criterion_8_interference),
        ("9 determinism", criterion_9_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = std::time::Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS criterion {name}: {detail} [{:.1}s]",
                start.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{:.1}s]", start.elapsed().as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
