//! Dispersion-free valuations and why they fail.
//!
//! Three mechanized arguments live here:
//!
//! * a dispersion-free functional must send every rank-1 projector to 0 or
//!   1 (since `P² = P` and `f(E(O)) = E(f(O))`), which quantum functionals
//!   violate;
//! * a constant 0/1 valuation on all rank-1 projectors forces the
//!   reconstructed operator to be 0 or the identity, with trace 0 or `d`,
//!   never 1;
//! * demanding `v(σ_b) = (v(σ_x) + v(σ_y))/√2` of measured spin values
//!   fails for all eight sign choices, although the operators satisfy it.
//!
//! The hidden variable itself is never modelled: a [`ValueAssignment`] is
//! the valuation a given `(ψ, λ)` would induce, and the pair survives only
//! as a label.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functional::ExpectationFunctional;
use crate::hilbert::{pauli, spectral_decompose, ComplexMatrix, Observable, Projector, StateVector, MAX_DIM};
use crate::scalar::Real;

/// Eigenvalues within this distance are one measurement outcome.
pub const SPECTRUM_MERGE_TOL: f64 = 1e-8;
/// Upper bound on the Cartesian product enumerated by
/// [`joint_assignment_search`].
pub const MAX_JOINT_ASSIGNMENTS: u128 = 1_000_000;

/// Measured values attached to named observables, in observable order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueAssignment {
    pub entries: Vec<(String, f64)>,
}

impl ValueAssignment {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, v)| *v)
    }

    /// Every value must be an eigenvalue of the observable it is attached to.
    pub fn validate<T: Real>(&self, observables: &[NamedObservable<T>]) -> Result<()> {
        if self.entries.len() != observables.len() {
            return Err(Error::DimensionMismatch { expected: observables.len(), found: self.entries.len() });
        }
        for ((label, value), obs) in self.entries.iter().zip(observables) {
            let spectrum = distinct_spectrum(&obs.observable)?;
            if !spectrum.iter().any(|mu| (mu.as_f64() - value).abs() <= SPECTRUM_MERGE_TOL) {
                return Err(Error::InvalidInput(format!("{value} is not an eigenvalue of {label}")));
            }
        }
        Ok(())
    }
}

/// An observable with a display label.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedObservable<T: Real> {
    pub label: String,
    pub observable: Observable<T>,
}

impl<T: Real> NamedObservable<T> {
    pub fn new(label: impl Into<String>, observable: Observable<T>) -> Self {
        NamedObservable { label: label.into(), observable }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantBranch {
    AllZero,
    AllOne,
}

impl ConstantBranch {
    pub fn value(self) -> f64 {
        match self {
            ConstantBranch::AllZero => 0.0,
            ConstantBranch::AllOne => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContradictionReport {
    pub dim: usize,
    pub branch: ConstantBranch,
    pub implied_trace: f64,
    pub required_trace: f64,
    pub conflict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub assignment: ValueAssignment,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// Outcome of [`joint_assignment_search`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "records")]
pub enum JointSearchOutcome {
    Satisfying(ValueAssignment),
    /// Every tuple violates the relation; sorted by ascending gap.
    Violations(Vec<ViolationRecord>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinCounterexample {
    /// Ascending eigenvalues of `σ_x`, `σ_y`, `σ_b` in spin units.
    pub spectra: [(String, Vec<f64>); 3],
    /// Largest deviation of any spectrum from `{−½, +½}`.
    pub spectral_residual: f64,
    /// `‖σ_b − (σ_x + σ_y)/√2‖_max`.
    pub operator_relation_residual: f64,
    /// All eight sign assignments in enumeration order
    /// (`v_x` slowest, `v_b` fastest, `−½` before `+½`).
    pub records: Vec<ViolationRecord>,
}

impl SpinCounterexample {
    pub fn min_gap(&self) -> f64 {
        self.records.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min)
    }
}

/// Checks `v² = v` on each rank-1 projector and classifies the values.
///
/// Returns the classified 0/1 values, or the first projector whose value
/// is neither.
pub fn projector_valuation_dichotomy<T: Real, E: ExpectationFunctional<T> + ?Sized>(
    e: &E,
    projectors: &[Projector<T>],
    tol: f64,
) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(projectors.len());
    for (index, p) in projectors.iter().enumerate() {
        if p.dim() != e.dim() {
            return Err(Error::DimensionMismatch { expected: e.dim(), found: p.dim() });
        }
        if p.rank() != 1 {
            return Err(Error::NotRankOne { rank: p.rank() });
        }
        let v = e.evaluate(p.observable()).as_f64();
        if (v * v - v).abs() > tol {
            return Err(Error::DichotomyViolation { index, value: v });
        }
        out.push(if v > 0.5 { 1 } else { 0 });
    }
    Ok(out)
}

/// Implied operator and trace when every rank-1 projector gets the same
/// value `c ∈ {0, 1}`.
///
/// The reconstruction sum over the canonical basis receives
/// `E(|φ_n⟩⟨φ_m|) = c·δ_nm`: off-diagonal units split into differences of
/// projectors, on which a constant valuation cancels. Hence `U = c·1`.
pub fn vn_contradiction(dim: usize, branch: ConstantBranch) -> Result<ContradictionReport> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::InvalidDimension { dim, reason: "contradiction needs 2 <= d <= 64" });
    }
    let implied = implied_operator::<f64>(dim, branch);
    let implied_trace = implied.trace().re;
    let required_trace = 1.0;
    Ok(ContradictionReport {
        dim,
        branch,
        implied_trace,
        required_trace,
        conflict: (implied_trace - required_trace).abs() > 1e-9,
    })
}

/// `Σ_n c·|e_n⟩⟨e_n|` over the canonical basis.
pub fn implied_operator<T: Real>(dim: usize, branch: ConstantBranch) -> ComplexMatrix<T> {
    let c = T::lit(branch.value());
    let mut u = ComplexMatrix::zeros(dim);
    for n in 0..dim {
        let e = StateVector::<T>::basis(dim, n);
        u = &u + &ComplexMatrix::outer(e.amplitudes(), e.amplitudes()).scale_real(c);
    }
    u
}

/// Spin-½ components `σ_x = X/2`, `σ_y = Y/2` and the bisector
/// `σ_b = (σ_x + σ_y)/√2`.
pub fn spin_operators<T: Real>() -> [NamedObservable<T>; 3] {
    let half = T::lit(0.5);
    let sx = Observable::new(pauli::<T>('x').scale_real(half)).unwrap();
    let sy = Observable::new(pauli::<T>('y').scale_real(half)).unwrap();
    let inv_sqrt2 = T::FRAC_1_SQRT_2();
    let sb = Observable::combine(inv_sqrt2, &sx, inv_sqrt2, &sy);
    [
        NamedObservable::new("sigma_x", sx),
        NamedObservable::new("sigma_y", sy),
        NamedObservable::new("sigma_b", sb),
    ]
}

pub fn spin_additivity_counterexample() -> Result<SpinCounterexample> {
    let ops = spin_operators::<f64>();
    let mut spectral_residual = 0.0f64;
    let mut spectra: Vec<(String, Vec<f64>)> = Vec::with_capacity(3);
    for op in &ops {
        let values = spectral_decompose(&op.observable)?.eigenvalues().to_vec();
        let dev = (values[0] + 0.5).abs().max((values[1] - 0.5).abs());
        spectral_residual = spectral_residual.max(dev);
        spectra.push((op.label.clone(), values));
    }

    let rhs_op = Observable::combine(
        std::f64::consts::FRAC_1_SQRT_2,
        &ops[0].observable,
        std::f64::consts::FRAC_1_SQRT_2,
        &ops[1].observable,
    );
    let operator_relation_residual = rhs_op.max_abs_diff(&ops[2].observable);

    let signs = [-0.5, 0.5];
    let mut records = Vec::with_capacity(8);
    for &vx in &signs {
        for &vy in &signs {
            for &vb in &signs {
                let rhs = (vx + vy) * std::f64::consts::FRAC_1_SQRT_2;
                records.push(ViolationRecord {
                    assignment: ValueAssignment {
                        entries: vec![
                            (ops[0].label.clone(), vx),
                            (ops[1].label.clone(), vy),
                            (ops[2].label.clone(), vb),
                        ],
                    },
                    lhs: vb,
                    rhs,
                    gap: (vb - rhs).abs(),
                });
            }
        }
    }

    let spectra: [(String, Vec<f64>); 3] = spectra.try_into().expect("three operators");
    Ok(SpinCounterexample { spectra, spectral_residual, operator_relation_residual, records })
}

/// Distinct eigenvalues (ascending), merged at [`SPECTRUM_MERGE_TOL`].
pub fn distinct_spectrum<T: Real>(o: &Observable<T>) -> Result<Vec<T>> {
    Ok(spectral_decompose(o)?.levels(T::lit(SPECTRUM_MERGE_TOL)).into_iter().map(|l| l.value).collect())
}

/// Searches the eigenvalue tuples of `O_1, …, O_{n−1}, O_target` for one
/// with `v_target = Σ c_k v_k`.
///
/// The operators themselves must satisfy `Σ c_k O_k = O_target`. Tuples are
/// enumerated lexicographically (first observable slowest, ascending
/// eigenvalues); the first satisfying tuple is returned, otherwise every
/// tuple comes back as a violation sorted by gap then enumeration order.
pub fn joint_assignment_search<T: Real>(
    observables: &[NamedObservable<T>],
    coefficients: &[T],
    tol: f64,
) -> Result<JointSearchOutcome> {
    let n = observables.len();
    if !(2..=12).contains(&n) {
        return Err(Error::InvalidInput(format!("need 2 to 12 observables, got {n}")));
    }
    if coefficients.len() != n - 1 {
        return Err(Error::InvalidInput(format!("expected {} coefficients, got {}", n - 1, coefficients.len())));
    }
    let dim = observables[0].observable.dim();
    if let Some(bad) = observables.iter().find(|o| o.observable.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.observable.dim() });
    }

    let mut combination = ComplexMatrix::<T>::zeros(dim);
    for (o, &c) in observables.iter().zip(coefficients) {
        combination = &combination + &o.observable.scale_real(c);
    }
    let target = &observables[n - 1];
    let residual = combination.max_abs_diff(target.observable.matrix()).as_f64();
    if residual > tol {
        return Err(Error::RelationNotSatisfiedByOperators { residual });
    }

    let spectra: Vec<Vec<f64>> = observables
        .iter()
        .map(|o| Ok(distinct_spectrum(&o.observable)?.into_iter().map(Real::as_f64).collect()))
        .collect::<Result<_>>()?;
    let size = spectra.iter().map(|s| s.len() as u128).product::<u128>();
    if size > MAX_JOINT_ASSIGNMENTS {
        return Err(Error::SearchSpaceTooLarge { size, limit: MAX_JOINT_ASSIGNMENTS });
    }

    let coefficients: Vec<f64> = coefficients.iter().map(|c| c.as_f64()).collect();
    let mut records = Vec::with_capacity(size as usize);
    let mut index = vec![0usize; n];
    loop {
        let values: Vec<f64> = index.iter().zip(&spectra).map(|(&i, s)| s[i]).collect();
        let rhs: f64 = values[..n - 1].iter().zip(&coefficients).map(|(v, c)| v * c).sum();
        let lhs = values[n - 1];
        let gap = (lhs - rhs).abs();
        let assignment = ValueAssignment {
            entries: observables.iter().zip(&values).map(|(o, &v)| (o.label.clone(), v)).collect(),
        };
        if gap <= tol {
            return Ok(JointSearchOutcome::Satisfying(assignment));
        }
        records.push(ViolationRecord { assignment, lhs, rhs, gap });

        // odometer, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                records.sort_by(|a, b| a.gap.total_cmp(&b.gap));
                return Ok(JointSearchOutcome::Violations(records));
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < spectra[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// Largest commutator entry over all pairs; zero for a commuting family.
pub fn max_pairwise_commutator<T: Real>(observables: &[NamedObservable<T>]) -> T {
    let mut worst = T::zero();
    for (i, a) in observables.iter().enumerate() {
        for b in &observables[i + 1..] {
            worst = worst.max(a.observable.commutator(&b.observable).max_abs());
        }
    }
    worst
}

/// True when `⟨χ|U|χ⟩ = c` holds for `χ`, the pointwise form of the
/// constant valuation.
pub fn constant_valuation_holds<T: Real>(u: &ComplexMatrix<T>, chi: &StateVector<T>, branch: ConstantBranch) -> bool {
    let v = u.sandwich(chi.amplitudes(), chi.amplitudes());
    let c = T::lit(branch.value());
    (v.re - c).abs() <= T::lit(1e-9) && v.im.abs() <= T::lit(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{BornFunctional, FnFunctional};
    use crate::hilbert::{projector_onto, random_state};
    use crate::scalar::c;
    use num_traits::Zero;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> StateVector<f64> {
        StateVector::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap()
    }

    #[test]
    fn dichotomy_holds_for_zero_one_functional() {
        // Indicator of e0 lying in the projector's range.
        let e = FnFunctional::new(2, "indicator", |o: &Observable<f64>| if o[(0, 0)].re > 0.5 { 1.0 } else { 0.0 });
        let ps = vec![projector_onto(&StateVector::basis(2, 0)), projector_onto(&StateVector::basis(2, 1))];
        assert_eq!(projector_valuation_dichotomy(&e, &ps, 1e-8).unwrap(), vec![1, 0]);
    }

    #[test]
    fn dichotomy_violated_by_superposition() {
        let e = BornFunctional::new(plus());
        let ps = vec![projector_onto(&StateVector::basis(2, 0))];
        match projector_valuation_dichotomy(&e, &ps, 1e-8) {
            Err(Error::DichotomyViolation { index: 0, value }) => assert!((value - 0.5).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dichotomy_passes_on_own_projector() {
        let psi = random_state::<f64>(3, 4);
        let e = BornFunctional::new(psi.clone());
        assert_eq!(projector_valuation_dichotomy(&e, &[projector_onto(&psi)], 1e-8).unwrap(), vec![1]);
    }

    #[test]
    fn dichotomy_rejects_higher_rank() {
        let e = BornFunctional::new(plus());
        let p = Projector::new(ComplexMatrix::identity(2)).unwrap();
        assert!(matches!(projector_valuation_dichotomy(&e, &[p], 1e-8), Err(Error::NotRankOne { rank: 2 })));
    }

    #[test]
    fn contradiction_examples() {
        let r = vn_contradiction(2, ConstantBranch::AllZero).unwrap();
        assert_eq!(r.implied_trace, 0.0);
        assert!(r.conflict);
        let r = vn_contradiction(4, ConstantBranch::AllOne).unwrap();
        assert_eq!(r.implied_trace, 4.0);
        assert!(r.conflict);
        let r = vn_contradiction(2, ConstantBranch::AllOne).unwrap();
        assert_eq!(r.implied_trace, 2.0);
        assert!(vn_contradiction(1, ConstantBranch::AllOne).is_err());
        assert!(vn_contradiction(65, ConstantBranch::AllOne).is_err());
    }

    #[test]
    fn implied_operator_matches_pointwise_constraint() {
        for branch in [ConstantBranch::AllZero, ConstantBranch::AllOne] {
            let u = implied_operator::<f64>(3, branch);
            for seed in 0..10 {
                assert!(constant_valuation_holds(&u, &random_state(3, seed), branch));
            }
        }
        assert!(implied_operator::<f64>(3, ConstantBranch::AllZero).is_zero());
    }

    #[test]
    fn spin_records() {
        let report = spin_additivity_counterexample().unwrap();
        assert_eq!(report.records.len(), 8);
        assert!(report.spectral_residual < 1e-10);
        assert!(report.operator_relation_residual < 1e-15);
        let find = |vx: f64, vy: f64, vb: f64| {
            report
                .records
                .iter()
                .find(|r| r.assignment.values().collect::<Vec<_>>() == vec![vx, vy, vb])
                .unwrap()
                .clone()
        };
        let r = find(0.5, 0.5, 0.5);
        assert_eq!(r.lhs, 0.5);
        assert!((r.rhs - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((r.gap - 0.20710678118654752).abs() < 1e-12);
        let r = find(0.5, -0.5, 0.5);
        assert_eq!(r.rhs, 0.0);
        assert_eq!(r.gap, 0.5);
    }

    #[test]
    fn joint_search_commuting_pair() {
        let o = Observable::new(crate::hilbert::pauli::<f64>('z')).unwrap();
        let obs = vec![
            NamedObservable::new("a", o.clone()),
            NamedObservable::new("b", o.clone()),
            NamedObservable::new("t", o.scaled(2.0)),
        ];
        // (−1, −1, −2) is first in lexicographic order
        match joint_assignment_search(&obs, &[1.0, 1.0], 1e-8).unwrap() {
            JointSearchOutcome::Satisfying(a) => assert_eq!(a.values().collect::<Vec<_>>(), vec![-1.0, -1.0, -2.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn joint_search_identity_average() {
        let id = Observable::<f64>::identity(3);
        let obs = vec![
            NamedObservable::new("a", id.clone()),
            NamedObservable::new("b", id.clone()),
            NamedObservable::new("t", id),
        ];
        match joint_assignment_search(&obs, &[0.5, 0.5], 1e-8).unwrap() {
            JointSearchOutcome::Satisfying(a) => assert_eq!(a.values().collect::<Vec<_>>(), vec![1.0, 1.0, 1.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn joint_search_spin_triple() {
        let ops = spin_operators::<f64>();
        let outcome = joint_assignment_search(&ops, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2], 1e-8).unwrap();
        let JointSearchOutcome::Violations(records) = outcome else { panic!("expected violations") };
        assert_eq!(records.len(), 8);
        assert!(records.windows(2).all(|w| w[0].gap <= w[1].gap));
        assert!((records[0].gap - (FRAC_1_SQRT_2 - 0.5)).abs() < 1e-12);
        for r in &records {
            r.assignment.validate(&ops).unwrap();
        }
    }

    #[test]
    fn joint_search_errors() {
        let z = Observable::new(crate::hilbert::pauli::<f64>('z')).unwrap();
        let x = Observable::new(crate::hilbert::pauli::<f64>('x')).unwrap();
        let obs = vec![NamedObservable::new("z", z.clone()), NamedObservable::new("x", x)];
        assert!(matches!(
            joint_assignment_search(&obs, &[1.0], 1e-8),
            Err(Error::RelationNotSatisfiedByOperators { .. })
        ));
        assert!(joint_assignment_search(&obs[..1], &[], 1e-8).is_err());
        assert!(joint_assignment_search(&obs, &[1.0, 2.0], 1e-8).is_err());

        // 12 observables with 4 distinct eigenvalues each: 4^12 > 10^6
        let d4 = Observable::<f64>::diagonal(&[1.0, 2.0, 3.0, 4.0]);
        let mut many: Vec<_> = (0..11).map(|k| NamedObservable::new(format!("o{k}"), d4.clone())).collect();
        many.push(NamedObservable::new("t", d4.scaled(11.0)));
        assert!(matches!(
            joint_assignment_search(&many, &[1.0; 11], 1e-8),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn value_assignment_validation() {
        let ops = spin_operators::<f64>();
        let bad = ValueAssignment {
            entries: vec![("sigma_x".into(), 1.0), ("sigma_y".into(), 0.5), ("sigma_b".into(), 0.5)],
        };
        assert!(bad.validate(&ops).is_err());
        assert!(max_pairwise_commutator(&ops) > 0.1);
        assert!(max_pairwise_commutator(&ops[..1]).is_zero());
    }
}
