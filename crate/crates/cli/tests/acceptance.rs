//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hvcheck_core::functional::{BornFunctional, MaxEigenvalueFunctional};
use hvcheck_core::hilbert::random::{random_state, rng_from_seed, sample_basis, sample_density};
use hvcheck_core::hilbert::{projector_onto, ComplexMatrix, DensityOperator, StateVector};
use hvcheck_core::ks::{build_contexts, cabello18, ks_search, ColoringStatus, VectorSet};
use hvcheck_core::nogo::{projector_valuation_dichotomy, spin_additivity_counterexample, vn_contradiction, ConstantBranch};
use hvcheck_core::reconstruction::{reconstruct_density, verify_vn_axioms_with};
use hvcheck_core::{Complex64, Error, Tolerances};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn round_trip() -> Check {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_min_eig = f64::INFINITY;
    let mut worst_trace = 0.0f64;
    for d in [2, 3, 4, 8] {
        let basis: Vec<StateVector<f64>> = (0..d).map(|k| StateVector::basis(d, k)).collect();
        for s in 0..100u64 {
            let psi: StateVector<f64> = random_state(d, 1000 * d as u64 + s);
            let amps = psi.amplitudes().to_vec();
            let result = reconstruct_density(&BornFunctional::new(psi), &basis).map_err(|e| e.to_string())?;
            let u = &result.candidate;
            let mut trace = Complex64::new(0.0, 0.0);
            for i in 0..d {
                trace += u[(i, i)];
                for j in 0..d {
                    worst = worst.max((u[(i, j)] - amps[i] * amps[j].conj()).norm());
                }
            }
            worst_trace = worst_trace.max((trace - 1.0).norm());
            worst_min_eig = worst_min_eig.min(result.min_eigenvalue);
        }
    }
    ensure(worst <= 1e-9, format!("max entry error {worst:e}"))?;
    ensure(worst_min_eig >= -1e-9, format!("min eigenvalue {worst_min_eig:e}"))?;
    ensure(worst_trace <= 1e-9, format!("trace error {worst_trace:e}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("400 states, max entry error {worst:.1e}, {:?}", start.elapsed()))
}

fn contradiction() -> Check {
    let start = Instant::now();
    for d in 2..=64usize {
        for (branch, implied) in [(ConstantBranch::AllZero, 0.0), (ConstantBranch::AllOne, d as f64)] {
            let r = vn_contradiction(d, branch).map_err(|e| e.to_string())?;
            ensure(r.conflict, format!("no conflict at d={d} {branch:?}"))?;
            ensure(r.implied_trace == implied, format!("implied trace {} at d={d}", r.implied_trace))?;
            ensure(r.required_trace == 1.0, "required trace is not 1")?;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok("d = 2..=64, both branches".into())
}

fn spin_counterexample() -> Check {
    let start = Instant::now();
    let r = spin_additivity_counterexample().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (label, spectrum) in &r.spectra {
        ensure(spectrum.len() == 2, format!("{label} spectrum has {} values", spectrum.len()))?;
        ensure(
            (spectrum[0] + 0.5).abs() <= 1e-10 && (spectrum[1] - 0.5).abs() <= 1e-10,
            format!("{label} spectrum {spectrum:?}"),
        )?;
    }
    ensure(r.records.len() == 8, format!("{} assignments", r.records.len()))?;

    let mut brute = f64::INFINITY;
    for x in [-0.5f64, 0.5] {
        for y in [-0.5f64, 0.5] {
            for b in [-0.5f64, 0.5] {
                brute = brute.min((b - (x + y) / 2f64.sqrt()).abs());
            }
        }
    }
    let expected = 1.0 / 2f64.sqrt() - 0.5;
    ensure((brute - expected).abs() <= 1e-12, "brute-force oracle disagrees with closed form")?;
    ensure((r.min_gap() - expected).abs() <= 1e-12, format!("min gap {}", r.min_gap()))?;
    ensure(elapsed < Duration::from_millis(100), format!("took {elapsed:?}"))?;
    Ok(format!("min gap {:.15}", r.min_gap()))
}

fn dichotomy() -> Check {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = StateVector::new(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)]).map_err(|e| e.to_string())?;
    let p = projector_onto(&StateVector::<f64>::basis(2, 0));
    match projector_valuation_dichotomy(&BornFunctional::new(psi), &[p], Tolerances::default().dichotomy) {
        Err(Error::DichotomyViolation { index: 0, value }) => {
            ensure((value - 0.5).abs() <= 1e-12, format!("value {value}"))?;
            Ok(format!("violation value {value}"))
        }
        other => Err(format!("expected DichotomyViolation, got {other:?}")),
    }
}

fn axiom_probing() -> Check {
    let psi: StateVector<f64> = random_state(3, 5);
    let born = verify_vn_axioms_with(&BornFunctional::new(psi), 200, 11, 1e-9).map_err(|e| e.to_string())?;
    ensure(born.all_pass(), "born functional failed an axiom")?;
    let residuals = [
        born.normalization_residual,
        born.zero_residual,
        born.linearity_max_residual,
        born.commuting_max_residual,
        born.noncommuting_max_residual,
    ];
    ensure(residuals.iter().all(|r| *r <= 1e-9), format!("born residuals {residuals:?}"))?;
    ensure(born.noncommuting_probes >= 50, format!("{} non-commuting probes", born.noncommuting_probes))?;

    let max = verify_vn_axioms_with::<f64, _>(&MaxEigenvalueFunctional::new(3), 200, 11, 1e-9).map_err(|e| e.to_string())?;
    ensure(!max.linearity_pass, "max-eigenvalue functional passed linearity")?;
    ensure(max.linearity_max_residual > 0.1, format!("max-eigenvalue residual {}", max.linearity_max_residual))?;
    Ok(format!(
        "born max residual {:.1e} ({} non-commuting), max-eigenvalue residual {:.3}",
        born.linearity_max_residual, born.noncommuting_probes, max.linearity_max_residual
    ))
}

/// Every vector lies in an even number of contexts while the number of
/// contexts is odd, so no assignment with exactly one 1 per context exists.
fn parity_obstruction(contexts: &[Vec<usize>], n: usize) -> bool {
    let mut counts = vec![0usize; n];
    for c in contexts {
        for &v in c {
            counts[v] += 1;
        }
    }
    contexts.len() % 2 == 1 && counts.iter().all(|c| c % 2 == 0)
}

fn brute_force_colorable(contexts: &[Vec<usize>], n: usize) -> bool {
    (0u64..1 << n).any(|mask| contexts.iter().all(|c| c.iter().filter(|&&v| mask >> v & 1 == 1).count() == 1))
}

fn kochen_specker() -> Check {
    let set: VectorSet<f64> = cabello18();
    let start = Instant::now();
    let contexts = build_contexts(&set, Tolerances::default().orthogonality);
    let outcome = ks_search(&contexts, set.len()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(outcome.status == ColoringStatus::Uncolorable, "fixture reported colorable")?;
    ensure(outcome.coloring.is_none(), "uncolorable outcome carries a coloring")?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    ensure(parity_obstruction(&contexts.contexts, set.len()), "parity oracle does not apply")?;
    ensure(!brute_force_colorable(&contexts.contexts, set.len()), "brute force found a coloring")?;
    Ok(format!(
        "{} vectors, {} contexts, {} nodes, {elapsed:?}",
        set.len(),
        contexts.len(),
        outcome.nodes_explored
    ))
}

fn gleason_sampling() -> Check {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    for d in [2usize, 3, 4] {
        let mut rng = rng_from_seed(77 + d as u64);
        for k in 0..20u64 {
            let rho: ComplexMatrix<f64> = sample_density(d, &mut rng);
            let seed = 100 * d as u64 + k;
            let dev = hvcheck_core::ks::gleason_frame_check_with(&rho, 1000, seed, &tol).map_err(|e| e.to_string())?;

            let mut bases = rng_from_seed(seed);
            let mut oracle = 0.0f64;
            for _ in 0..1000 {
                let basis: Vec<StateVector<f64>> = sample_basis(d, &mut bases);
                let mut sum = Complex64::new(0.0, 0.0);
                for chi in &basis {
                    let a = chi.amplitudes();
                    for i in 0..d {
                        for j in 0..d {
                            sum += a[i].conj() * rho[(i, j)] * a[j];
                        }
                    }
                }
                oracle = oracle.max((sum - 1.0).norm());
            }
            ensure((dev - oracle).abs() <= 1e-12, format!("d={d} check {dev:e} vs oracle {oracle:e}"))?;
            DensityOperator::new(rho).map_err(|e| e.to_string())?;
            worst = worst.max(dev);
        }
    }
    ensure(worst <= 1e-9, format!("max frame deviation {worst:e}"))?;
    Ok(format!("60 densities x 1000 bases, max deviation {worst:.1e}"))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let state = write(dir.path(), "state.json", &format!(r#"{{"dim": 2, "amplitudes": [[{h}, 0.0], [0.0, {h}]]}}"#));
    let density = write(
        dir.path(),
        "rho.json",
        r#"{"dim": 2, "entries": [[[0.75, 0.0], [0.25, -0.1]], [[0.25, 0.1], [0.25, 0.0]]]}"#,
    );
    let observables = write(
        dir.path(),
        "obs.json",
        r#"{"observables": [
            {"label": "X", "dim": 2, "entries": [[[0,0],[1,0]],[[1,0],[0,0]]]},
            {"label": "Z", "dim": 2, "entries": [[[1,0],[0,0]],[[0,0],[-1,0]]]},
            {"label": "S", "dim": 2, "entries": [[[1,0],[1,0]],[[1,0],[-1,0]]]}
        ]}"#,
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["reconstruct", "--functional", "born", "--state", &state, "--seed", "3"],
        vec!["reconstruct", "--functional", "mixed", "--density", &density, "--seed", "3"],
        vec!["reconstruct", "--functional", "trace", "--dim", "4", "--seed", "3"],
        vec!["axioms", "--functional", "born", "--state", &state, "--probes", "50", "--seed", "9"],
        vec!["axioms", "--functional", "max-eigenvalue", "--dim", "3", "--probes", "50", "--seed", "9"],
        vec!["vn-nogo", "--dim", "5", "--branch", "one"],
        vec!["spin-counterexample"],
        vec!["joint-search", "--observables", &observables, "--coefficients", "1,1"],
        vec!["ks", "--set", "cabello18"],
        vec!["gleason", "--density", &density, "--bases", "200", "--seed", "4"],
    ];
    for args in &runs {
        let mut outputs = Vec::new();
        for _ in 0..3 {
            let out = Command::new(env!("CARGO_BIN_EXE_hvcheck")).args(args).output().map_err(|e| e.to_string())?;
            ensure(matches!(out.status.code(), Some(0 | 1)), format!("{args:?} exited with {:?}", out.status.code()))?;
            serde_json::from_slice::<serde_json::Value>(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
            outputs.push(out.stdout);
        }
        ensure(outputs[0] == outputs[1] && outputs[1] == outputs[2], format!("{args:?} output differs between runs"))?;
    }
    Ok(format!("{} invocations x 3 runs identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 density round-trip", round_trip),
        ("2 constant-valuation contradiction", contradiction),
        ("3 spin additivity counterexample", spin_counterexample),
        ("4 dichotomy witness", dichotomy),
        ("5 axiom probing", axiom_probing),
        ("6 kochen-specker fixture", kochen_specker),
        ("7 gleason frame sampling", gleason_sampling),
        ("8 cli determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
