use std::fs;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use hvcheck_core::functional::{
    BornFunctional, DensityFunctional, ExpectationFunctional, MaxEigenvalueFunctional, TraceFunctional,
};
use hvcheck_core::hilbert::io::{MatrixDoc, StateDoc};
use hvcheck_core::hilbert::random::random_basis;
use hvcheck_core::hilbert::{ComplexMatrix, DensityOperator, Observable, StateVector};
use hvcheck_core::ks::{build_contexts, fixture, ks_search, vector_set_from_json, ColoringStatus, VectorSet};
use hvcheck_core::nogo::{
    joint_assignment_search, spin_additivity_counterexample, vn_contradiction, ConstantBranch, JointSearchOutcome,
    NamedObservable, ViolationRecord,
};
use hvcheck_core::reconstruction::{reconstruct_density_with, verify_vn_axioms_with, DEFAULT_TRACE_FORM_PROBES};
use hvcheck_core::{Error, Tolerances};

use crate::report::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionalKind {
    Born,
    Mixed,
    Trace,
    MaxEigenvalue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Branch {
    Zero,
    One,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rebuild the density operator behind an expectation functional.
    Reconstruct {
        #[command(flatten)]
        functional: FunctionalArgs,
        /// Reconstruct in a Haar-random basis drawn from this seed
        /// (canonical basis when absent); also seeds the probe set.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_TRACE_FORM_PROBES)]
        probes: usize,
    },
    /// Probe normalization, real-linearity and projector positivity.
    Axioms {
        #[command(flatten)]
        functional: FunctionalArgs,
        #[arg(long, default_value_t = 200)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Trace contradiction for a constant 0/1 projector valuation.
    VnNogo {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        branch: Branch,
    },
    /// All eight spin-1/2 value assignments against the bisector relation.
    SpinCounterexample,
    /// Search eigenvalue tuples for one obeying a linear operator relation.
    JointSearch {
        /// JSON file: {"observables": [{"label": .., "dim": d, "entries": ..}, ..]}
        #[arg(long)]
        observables: PathBuf,
        /// c1,c2,… with Σ c_k O_k = O_last
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coefficients: Vec<f64>,
    },
    /// Exhaustive Kochen–Specker coloring search.
    Ks {
        /// Fixture name (cabello18) or a vector-set JSON file.
        #[arg(long)]
        set: String,
    },
    /// Frame-function sums of a density operator over random bases.
    Gleason {
        #[arg(long)]
        density: PathBuf,
        #[arg(long)]
        bases: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct FunctionalArgs {
    #[arg(long, value_enum)]
    pub functional: FunctionalKind,
    /// State file for `born`.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Density file for `mixed`.
    #[arg(long)]
    pub density: Option<PathBuf>,
    /// Dimension for `trace` and `max-eigenvalue`.
    #[arg(long)]
    pub dim: Option<usize>,
}

/// Failure before or while running a check.
#[derive(Debug)]
pub enum CommandError {
    /// Bad or inconsistent arguments (exit 2).
    Usage(String),
    /// Unreadable or invalid input data (exit 3).
    Input(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Input(e.to_string())
    }
}

pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub verdict: Verdict,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Reconstruct { .. } => "reconstruct",
            Command::Axioms { .. } => "axioms",
            Command::VnNogo { .. } => "vn-nogo",
            Command::SpinCounterexample => "spin-counterexample",
            Command::JointSearch { .. } => "joint-search",
            Command::Ks { .. } => "ks",
            Command::Gleason { .. } => "gleason",
        }
    }

    pub fn run(&self, tol: &Tolerances) -> Result<Outcome, CommandError> {
        match self {
            Command::Reconstruct { functional, seed, probes } => reconstruct(functional, *seed, *probes, tol),
            Command::Axioms { functional, probes, seed } => axioms(functional, *probes, *seed, tol),
            Command::VnNogo { dim, branch } => vn_nogo(*dim, *branch),
            Command::SpinCounterexample => spin(tol),
            Command::JointSearch { observables, coefficients } => joint_search(observables, coefficients, tol),
            Command::Ks { set } => ks(set, tol),
            Command::Gleason { density, bases, seed } => gleason(density, *bases, *seed, tol),
        }
    }
}

fn read(path: &Path) -> Result<String, CommandError> {
    fs::read_to_string(path).map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn load_state(path: &Path) -> Result<StateVector<f64>, CommandError> {
    let doc: StateDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
    Ok(doc.to_state()?)
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix<f64>, CommandError> {
    let doc: MatrixDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
    Ok(doc.to_matrix()?)
}

/// A resolved functional plus the operator it should reconstruct to, when
/// one is known in closed form.
struct Resolved {
    functional: Box<dyn ExpectationFunctional<f64>>,
    expected: Option<ComplexMatrix<f64>>,
    inputs: Value,
}

fn resolve(args: &FunctionalArgs, tol: &Tolerances) -> Result<Resolved, CommandError> {
    let path_str = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
    let need_dim = |kind: &str| {
        args.dim.ok_or_else(|| CommandError::Usage(format!("--functional {kind} requires --dim")))
    };
    let inputs = json!({
        "functional": args.functional.to_possible_value().unwrap().get_name(),
        "state": path_str(&args.state),
        "density": path_str(&args.density),
        "dim": args.dim,
    });
    let resolved = match args.functional {
        FunctionalKind::Born => {
            let path = args.state.as_ref().ok_or_else(|| CommandError::Usage("--functional born requires --state".into()))?;
            let psi = load_state(path)?;
            check_dim_flag(args.dim, psi.dim())?;
            let expected = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
            Resolved { functional: Box::new(BornFunctional::new(psi)), expected: Some(expected), inputs }
        }
        FunctionalKind::Mixed => {
            let path =
                args.density.as_ref().ok_or_else(|| CommandError::Usage("--functional mixed requires --density".into()))?;
            let rho = DensityOperator::with_tolerances(load_matrix(path)?, tol)?;
            check_dim_flag(args.dim, rho.dim())?;
            let expected = rho.observable().matrix().clone();
            Resolved { functional: Box::new(DensityFunctional::new(rho)), expected: Some(expected), inputs }
        }
        FunctionalKind::Trace => {
            let d = checked_dim(need_dim("trace")?)?;
            let expected = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
            Resolved { functional: Box::new(TraceFunctional::new(d)), expected: Some(expected), inputs }
        }
        FunctionalKind::MaxEigenvalue => {
            let d = checked_dim(need_dim("max-eigenvalue")?)?;
            Resolved { functional: Box::new(MaxEigenvalueFunctional::new(d)), expected: None, inputs }
        }
    };
    Ok(resolved)
}

fn checked_dim(d: usize) -> Result<usize, CommandError> {
    if !(2..=hvcheck_core::hilbert::MAX_DIM).contains(&d) {
        return Err(CommandError::Usage(format!("--dim must lie in 2..={}", hvcheck_core::hilbert::MAX_DIM)));
    }
    Ok(d)
}

fn check_dim_flag(flag: Option<usize>, actual: usize) -> Result<(), CommandError> {
    match flag {
        Some(d) if d != actual => Err(CommandError::Input(format!("--dim {d} does not match input dimension {actual}"))),
        _ => Ok(()),
    }
}

fn reconstruct(args: &FunctionalArgs, seed: Option<u64>, probes: usize, tol: &Tolerances) -> Result<Outcome, CommandError> {
    let r = resolve(args, tol)?;
    let d = r.functional.dim();
    let basis: Vec<StateVector<f64>> = match seed {
        Some(s) => random_basis(d, s),
        None => (0..d).map(|k| StateVector::basis(d, k)).collect(),
    };
    let result = reconstruct_density_with(r.functional.as_ref(), &basis, probes, seed.unwrap_or(0), tol)?;
    let oracle_error = r.expected.as_ref().map(|m| result.candidate.max_abs_diff(m));
    let confirmed = result.is_density(tol) && oracle_error.is_none_or(|e| e <= tol.identity);

    let mut inputs = r.inputs;
    inputs["seed"] = json!(seed);
    inputs["probes"] = json!(probes);
    Ok(Outcome {
        inputs,
        result: json!({
            "label": r.functional.label(),
            "dim": d,
            "basis": if seed.is_some() { "haar-random" } else { "canonical" },
            "candidate": MatrixDoc::from_matrix(&result.candidate),
            "trace_form_max_residual": result.trace_form_max_residual,
            "min_eigenvalue": result.min_eigenvalue,
            "trace_residual": result.trace_residual,
            "hermitian_residue": result.hermitian_residue,
            "probes": result.probes,
            "expected_max_error": oracle_error,
        }),
        verdict: if confirmed { Verdict::Confirmed } else { Verdict::Refuted },
    })
}

fn axioms(args: &FunctionalArgs, probes: usize, seed: u64, tol: &Tolerances) -> Result<Outcome, CommandError> {
    if probes == 0 {
        return Err(CommandError::Usage("--probes must be at least 1".into()));
    }
    let r = resolve(args, tol)?;
    let report = verify_vn_axioms_with(r.functional.as_ref(), probes, seed, tol.axiom)?;
    let mut inputs = r.inputs;
    inputs["probes"] = json!(probes);
    inputs["seed"] = json!(seed);
    Ok(Outcome {
        inputs,
        verdict: if report.all_pass() { Verdict::Confirmed } else { Verdict::Refuted },
        result: serde_json::to_value(report).unwrap(),
    })
}

fn vn_nogo(dim: usize, branch: Branch) -> Result<Outcome, CommandError> {
    let branch = match branch {
        Branch::Zero => ConstantBranch::AllZero,
        Branch::One => ConstantBranch::AllOne,
    };
    let report = vn_contradiction(dim, branch).map_err(|e| CommandError::Usage(e.to_string()))?;
    Ok(Outcome {
        inputs: json!({"dim": dim, "branch": branch}),
        verdict: if report.conflict { Verdict::Confirmed } else { Verdict::Refuted },
        result: serde_json::to_value(report).unwrap(),
    })
}

fn record_row(r: &ViolationRecord, scale: f64) -> Value {
    let mut row = serde_json::Map::new();
    for (label, v) in &r.assignment.entries {
        row.insert(label.clone(), json!(v * scale));
    }
    row.insert("lhs".into(), json!(r.lhs * scale));
    row.insert("rhs".into(), json!(r.rhs * scale));
    row.insert("gap".into(), json!(r.gap * scale));
    Value::Object(row)
}

fn spin(tol: &Tolerances) -> Result<Outcome, CommandError> {
    let report = spin_additivity_counterexample()?;
    let min_gap = report.min_gap();
    let spectra = |scale: f64| {
        let mut m = serde_json::Map::new();
        for (label, values) in &report.spectra {
            m.insert(label.clone(), json!(values.iter().map(|v| v * scale).collect::<Vec<_>>()));
        }
        Value::Object(m)
    };
    let confirmed = report.spectral_residual <= tol.hermitian && min_gap > tol.relation;
    Ok(Outcome {
        inputs: json!({}),
        result: json!({
            "spectral_residual": report.spectral_residual,
            "operator_relation_residual": report.operator_relation_residual,
            "expected_min_gap": std::f64::consts::FRAC_1_SQRT_2 - 0.5,
            "spin_units": {
                "spectra": spectra(1.0),
                "min_gap": min_gap,
            },
            "pauli_units": {
                "spectra": spectra(2.0),
                "min_gap": 2.0 * min_gap,
            },
            "records": report.records.iter().map(|r| record_row(r, 1.0)).collect::<Vec<_>>(),
        }),
        verdict: if confirmed { Verdict::Confirmed } else { Verdict::Refuted },
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObservableFile {
    observables: Vec<LabeledMatrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LabeledMatrix {
    #[serde(default)]
    label: Option<String>,
    #[serde(flatten)]
    matrix: MatrixDoc,
}

fn joint_search(path: &Path, coefficients: &[f64], tol: &Tolerances) -> Result<Outcome, CommandError> {
    let file: ObservableFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
    let n = file.observables.len();
    let observables = file
        .observables
        .into_iter()
        .enumerate()
        .map(|(k, lm)| {
            let label = lm.label.unwrap_or_else(|| if k + 1 == n { "target".into() } else { format!("O{}", k + 1) });
            Ok(NamedObservable::new(label, Observable::new(lm.matrix.to_matrix()?)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(CommandError::Usage("coefficients must be finite".into()));
    }
    let outcome = joint_assignment_search(&observables, coefficients, tol.relation)?;
    let inputs = json!({
        "observables": path.display().to_string(),
        "labels": observables.iter().map(|o| o.label.clone()).collect::<Vec<_>>(),
        "coefficients": coefficients,
    });
    let (verdict, result) = match &outcome {
        JointSearchOutcome::Satisfying(a) => {
            let mut m = serde_json::Map::new();
            for (label, v) in &a.entries {
                m.insert(label.clone(), json!(v));
            }
            (Verdict::Refuted, json!({"status": "satisfying", "assignment": Value::Object(m)}))
        }
        JointSearchOutcome::Violations(records) => (
            Verdict::Confirmed,
            json!({
                "status": "violations",
                "count": records.len(),
                "min_gap": records.first().map(|r| r.gap),
                "records": records.iter().map(|r| record_row(r, 1.0)).collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Outcome { inputs, result, verdict })
}

fn ks(set_name: &str, tol: &Tolerances) -> Result<Outcome, CommandError> {
    let set: VectorSet<f64> = match fixture(set_name) {
        Some(s) => s,
        None => vector_set_from_json(&read(Path::new(set_name))?)?,
    };
    let contexts = build_contexts(&set, tol.orthogonality);
    let labels = set.labels();
    let mut result = json!({
        "dim": set.dim(),
        "vectors": set.len(),
        "contexts": contexts.contexts.iter()
            .map(|c| c.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>(),
        "orthogonal_pairs": contexts.orthogonal_pairs.len(),
    });
    if contexts.is_empty() {
        result["status"] = json!("no-contexts");
        return Ok(Outcome { inputs: json!({"set": set_name}), result, verdict: Verdict::Refuted });
    }
    let outcome = ks_search(&contexts, set.len())?;
    result["status"] = json!(outcome.status);
    result["nodes_explored"] = json!(outcome.nodes_explored);
    result["coloring"] = json!(outcome.coloring);
    Ok(Outcome {
        inputs: json!({"set": set_name}),
        result,
        verdict: if outcome.status == ColoringStatus::Uncolorable { Verdict::Confirmed } else { Verdict::Refuted },
    })
}

fn gleason(path: &Path, bases: usize, seed: u64, tol: &Tolerances) -> Result<Outcome, CommandError> {
    if bases == 0 {
        return Err(CommandError::Usage("--bases must be at least 1".into()));
    }
    let rho = load_matrix(path)?;
    let deviation = hvcheck_core::ks::gleason_frame_check_with(&rho, bases, seed, tol)?;
    Ok(Outcome {
        inputs: json!({"density": path.display().to_string(), "bases": bases, "seed": seed}),
        result: json!({"dim": rho.dim(), "max_deviation": deviation, "tolerance": tol.frame}),
        verdict: if deviation <= tol.frame { Verdict::Confirmed } else { Verdict::Refuted },
    })
}
