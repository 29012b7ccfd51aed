//! Recovering a density operator from an expectation functional.
//!
//! A functional that is normalized, real-linear and non-negative on
//! projectors is extended to arbitrary operators through the Hermitian
//! split, and the operator
//!
//! ```text
//! U = Σ_{n,m} E(|φ_m⟩⟨φ_n|) · |φ_n⟩⟨φ_m|
//! ```
//!
//! then satisfies `E(A) = Tr(U·A)` for every `A`. In finite dimension the
//! sum over a complete orthonormal basis already spans every operator, so
//! the identity is exact; random probes certify it numerically.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functional::ExpectationFunctional;
use crate::hilbert::random::{rng_from_seed, sample_hermitian, sample_matrix, sample_state, sample_unitary};
use crate::hilbert::{
    eigenvalues, hermitian_split, orthonormality_residual, projector_onto, ComplexMatrix, Observable, StateVector,
};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Probe observables used to certify the trace form when none are given.
pub const DEFAULT_TRACE_FORM_PROBES: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult<T: Real> {
    /// The reconstructed operator, before Hermitization.
    pub candidate: ComplexMatrix<T>,
    /// Max `|E(A) − Tr(U·A)|` over the probe set.
    pub trace_form_max_residual: f64,
    /// Smallest eigenvalue of `(U + U†)/2`.
    pub min_eigenvalue: f64,
    /// `|Tr U − 1|`.
    pub trace_residual: f64,
    /// Max `|U − U†|` entry discarded before eigensolving.
    pub hermitian_residue: f64,
    pub probes: usize,
}

impl<T: Real> ReconstructionResult<T> {
    /// Positivity and unit trace at `tol.identity`, trace form at `tol.axiom`.
    pub fn is_density(&self, tol: &Tolerances) -> bool {
        self.min_eigenvalue >= -tol.identity
            && self.trace_residual <= tol.identity
            && self.trace_form_max_residual <= tol.axiom
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub label: String,
    pub tolerance: f64,
    /// `|E(1) − 1|`.
    pub normalization_residual: f64,
    /// `|E(0)|`, the `α = β = 0` case of linearity.
    pub zero_residual: f64,
    pub linearity_max_residual: f64,
    pub commuting_max_residual: f64,
    pub noncommuting_max_residual: f64,
    pub commuting_probes: usize,
    pub noncommuting_probes: usize,
    /// Probe index attaining `linearity_max_residual`.
    pub worst_linearity_probe: Option<usize>,
    pub projector_min_value: f64,
    pub projector_probes: usize,
    pub normalization_pass: bool,
    pub linearity_pass: bool,
    pub positivity_pass: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.normalization_pass && self.linearity_pass && self.positivity_pass
    }
}

fn check_dim<T: Real, E: ExpectationFunctional<T> + ?Sized>(e: &E, dim: usize) -> Result<()> {
    if e.dim() != dim {
        return Err(Error::DimensionMismatch { expected: e.dim(), found: dim });
    }
    Ok(())
}

/// `E(A) = E(A₊) + i·E(A₋)`.
///
/// A zero Hermitian part is mapped to 0 without querying the functional,
/// so Hermitian inputs reproduce `E.evaluate` exactly.
pub fn extend_complex<T: Real, E: ExpectationFunctional<T> + ?Sized>(e: &E, a: &ComplexMatrix<T>) -> Result<Complex<T>> {
    check_dim(e, a.dim())?;
    let (plus, minus) = hermitian_split(a);
    let re = if plus.is_zero() { T::zero() } else { e.evaluate(&plus) };
    let im = if minus.is_zero() { T::zero() } else { e.evaluate(&minus) };
    Ok(Complex::new(re, im))
}

pub fn reconstruct_density<T: Real, E: ExpectationFunctional<T> + ?Sized>(
    e: &E,
    basis: &[StateVector<T>],
) -> Result<ReconstructionResult<T>> {
    reconstruct_density_with(e, basis, DEFAULT_TRACE_FORM_PROBES, 0, &Tolerances::default())
}

/// Reconstruction with an explicit probe count, probe seed and basis
/// tolerance.
pub fn reconstruct_density_with<T: Real, E: ExpectationFunctional<T> + ?Sized>(
    e: &E,
    basis: &[StateVector<T>],
    probes: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<ReconstructionResult<T>> {
    let d = e.dim();
    if basis.len() != d {
        return Err(Error::IncompleteBasis { found: basis.len(), dim: d });
    }
    if let Some(bad) = basis.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
    }
    let residual = orthonormality_residual(basis);
    if residual > T::lit(tol.basis) {
        return Err(Error::NonOrthonormalBasis { residual: residual.as_f64() });
    }

    let candidate = assemble(e, basis)?;

    let mut rng = rng_from_seed(seed);
    let mut trace_form = T::zero();
    for _ in 0..probes {
        let a = sample_hermitian::<T, _>(d, &mut rng);
        let direct = Complex::new(e.evaluate(&a), T::zero());
        trace_form = trace_form.max((direct - trace_of_product(&candidate, a.matrix())).norm());

        let b = sample_matrix::<T, _>(d, &mut rng);
        let extended = extend_complex(e, &b)?;
        trace_form = trace_form.max((extended - trace_of_product(&candidate, &b)).norm());
    }

    let hermitized = Observable::new(candidate.hermitian_part())?;
    let min_eigenvalue = eigenvalues(&hermitized)?[0];
    let trace_residual = (candidate.trace() - Complex::one()).norm();

    Ok(ReconstructionResult {
        hermitian_residue: candidate.hermitian_residual().as_f64(),
        candidate,
        trace_form_max_residual: trace_form.as_f64(),
        min_eigenvalue: min_eigenvalue.as_f64(),
        trace_residual: trace_residual.as_f64(),
        probes,
    })
}

/// `U = Σ_{n,m} E(|φ_m⟩⟨φ_n|) |φ_n⟩⟨φ_m|`, so that `⟨φ_m|U|φ_n⟩ = E(|φ_n⟩⟨φ_m|)`.
fn assemble<T: Real, E: ExpectationFunctional<T> + ?Sized>(
    e: &E,
    basis: &[StateVector<T>],
) -> Result<ComplexMatrix<T>> {
    let d = e.dim();
    let mut u = ComplexMatrix::zeros(d);
    for phi_n in basis {
        for phi_m in basis {
            let unit = ComplexMatrix::outer(phi_m.amplitudes(), phi_n.amplitudes());
            let weight = extend_complex(e, &unit)?;
            if weight.is_zero() {
                continue;
            }
            let term = ComplexMatrix::outer(phi_n.amplitudes(), phi_m.amplitudes()).scale(weight);
            u = &u + &term;
        }
    }
    Ok(u)
}

/// `Tr(A·B)` without forming the product.
pub fn trace_of_product<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Complex<T> {
    let d = a.dim();
    let mut acc = Complex::zero();
    for j in 0..d {
        for k in 0..d {
            acc = acc + a[(j, k)] * b[(k, j)];
        }
    }
    acc
}

pub fn verify_vn_axioms<T: Real, E: ExpectationFunctional<T> + ?Sized>(
    e: &E,
    probes: usize,
    seed: u64,
) -> Result<AxiomReport> {
    verify_vn_axioms_with(e, probes, seed, Tolerances::default().axiom)
}

/// Probes normalization once, real-linearity on `probes` random tuples and
/// projector positivity on `probes` random rank-1 projectors.
///
/// Even-numbered linearity probes draw a commuting pair (shared random
/// eigenbasis); odd-numbered ones draw two independent observables. Each
/// pair is then classified by its actual commutator.
pub fn verify_vn_axioms_with<T: Real, E: ExpectationFunctional<T> + ?Sized>(
    e: &E,
    probes: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    if probes == 0 {
        return Err(Error::InvalidInput("at least one probe is required".into()));
    }
    let d = e.dim();
    let mut rng = rng_from_seed(seed);

    let normalization_residual = (e.evaluate(&Observable::identity(d)) - T::one()).abs().as_f64();
    let zero_residual = e.evaluate(&Observable::zeros(d)).abs().as_f64();

    let mut commuting_max = 0.0f64;
    let mut noncommuting_max = 0.0f64;
    let mut commuting_probes = 0;
    let mut noncommuting_probes = 0;
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..probes {
        let (a, b) = if i % 2 == 0 { commuting_pair::<T, _>(d, &mut rng) } else {
            (sample_hermitian::<T, _>(d, &mut rng), sample_hermitian::<T, _>(d, &mut rng))
        };
        let alpha = T::lit(rng.random_range(-2.0..2.0));
        let beta = T::lit(rng.random_range(-2.0..2.0));

        let combined = Observable::combine(alpha, &a, beta, &b);
        let residual = (e.evaluate(&combined) - alpha * e.evaluate(&a) - beta * e.evaluate(&b)).abs().as_f64();

        let scale = a.frobenius_norm().max(b.frobenius_norm()).max(T::one());
        let commutes = a.commutator(&b).max_abs() <= T::lit(1e-9) * scale * scale;
        if commutes {
            commuting_probes += 1;
            commuting_max = commuting_max.max(residual);
        } else {
            noncommuting_probes += 1;
            noncommuting_max = noncommuting_max.max(residual);
        }
        if worst.is_none_or(|(_, r)| residual > r) {
            worst = Some((i, residual));
        }
    }

    let mut projector_min = f64::INFINITY;
    for _ in 0..probes {
        let chi = sample_state::<T, _>(d, &mut rng);
        projector_min = projector_min.min(e.evaluate(projector_onto(&chi).observable()).as_f64());
    }

    let linearity_max = commuting_max.max(noncommuting_max).max(zero_residual);
    Ok(AxiomReport {
        label: e.label().to_string(),
        tolerance: tol,
        normalization_residual,
        zero_residual,
        linearity_max_residual: linearity_max,
        commuting_max_residual: commuting_max,
        noncommuting_max_residual: noncommuting_max,
        commuting_probes,
        noncommuting_probes,
        worst_linearity_probe: worst.map(|(i, _)| i),
        projector_min_value: projector_min,
        projector_probes: probes,
        normalization_pass: normalization_residual <= tol,
        linearity_pass: linearity_max <= tol,
        positivity_pass: projector_min >= -tol,
    })
}

fn commuting_pair<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> (Observable<T>, Observable<T>) {
    let u = sample_unitary::<T, R>(d, rng);
    let ut = u.adjoint();
    let mut diag = || {
        let values: Vec<T> = (0..d).map(|_| T::lit(rng.random_range(-2.0..2.0))).collect();
        Observable::new(&(&u * &ComplexMatrix::diagonal(&values)) * &ut).expect("unitary conjugate is hermitian")
    };
    let a = diag();
    let b = diag();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{BornFunctional, FnFunctional, MaxEigenvalueFunctional, TraceFunctional};
    use crate::hilbert::{pauli, random_state};
    use crate::scalar::c;

    fn canonical(d: usize) -> Vec<StateVector<f64>> {
        (0..d).map(|k| StateVector::basis(d, k)).collect()
    }

    fn plus_functional() -> BornFunctional<f64> {
        let s = 0.5f64.sqrt();
        BornFunctional::new(StateVector::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap())
    }

    #[test]
    fn extend_hermitian_is_plain_evaluation() {
        let e = BornFunctional::new(random_state::<f64>(2, 5));
        let x = Observable::new(pauli('x')).unwrap();
        let z = extend_complex(&e, &pauli('x')).unwrap();
        assert_eq!(z.re, e.evaluate(&x));
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn extend_i_times_hermitian() {
        let e = BornFunctional::new(random_state::<f64>(2, 6));
        let y = pauli::<f64>('y');
        let z = extend_complex(&e, &y.scale(c(0.0, 1.0))).unwrap();
        assert_eq!(z.re, 0.0);
        assert_eq!(z.im, e.evaluate(&Observable::new(y).unwrap()));
    }

    #[test]
    fn extend_off_diagonal_unit() {
        // ⟨+|0⟩⟨1|+⟩ = 1/2
        let a = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let z = extend_complex(&plus_functional(), &a).unwrap();
        assert!((z - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn extend_dimension_mismatch() {
        let err = extend_complex(&plus_functional(), &ComplexMatrix::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn reconstruct_maximally_mixed() {
        let r = reconstruct_density(&TraceFunctional::new(3), &canonical(3)).unwrap();
        assert!(r.candidate.max_abs_diff(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0)) < 1e-15);
        assert!(r.is_density(&Tolerances::default()));
    }

    #[test]
    fn reconstruct_rejects_bad_bases() {
        let e = TraceFunctional::new(2);
        let short = vec![StateVector::<f64>::basis(2, 0)];
        assert!(matches!(reconstruct_density(&e, &short), Err(Error::IncompleteBasis { .. })));
        let dup = vec![StateVector::<f64>::basis(2, 0), StateVector::basis(2, 0)];
        assert!(matches!(reconstruct_density(&e, &dup), Err(Error::NonOrthonormalBasis { .. })));
        let wrong = vec![StateVector::<f64>::basis(3, 0), StateVector::basis(3, 1)];
        assert!(matches!(reconstruct_density(&e, &wrong), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reconstruct_complex_state_is_not_transposed() {
        // A state with genuinely complex amplitudes distinguishes |ψ⟩⟨ψ| from
        // its transpose.
        let s = 0.5f64.sqrt();
        let psi = StateVector::new(vec![c(s, 0.0), c(0.0, s)]).unwrap();
        let r = reconstruct_density(&BornFunctional::new(psi.clone()), &canonical(2)).unwrap();
        let expected = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
        assert!(r.candidate.max_abs_diff(&expected) < 1e-15);
        assert!((r.candidate[(0, 1)] - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn axioms_trace_functional_pass() {
        let report = verify_vn_axioms::<f64, _>(&TraceFunctional::new(3), 40, 1).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.commuting_probes + report.noncommuting_probes, 40);
        assert_eq!(report.noncommuting_probes, 20);
    }

    #[test]
    fn axioms_max_eigenvalue_fails_linearity() {
        let report = verify_vn_axioms::<f64, _>(&MaxEigenvalueFunctional::new(2), 40, 1).unwrap();
        assert!(report.normalization_pass);
        assert!(report.positivity_pass);
        assert!(!report.linearity_pass);
        assert!(report.linearity_max_residual > 0.1);
    }

    #[test]
    fn axioms_detect_nonzero_at_zero() {
        let shifted = FnFunctional::new(2, "shifted", |o: &Observable<f64>| o.trace().re / 2.0 + 0.5);
        let report = verify_vn_axioms(&shifted, 4, 0).unwrap();
        assert_eq!(report.zero_residual, 0.5);
        assert!(!report.linearity_pass);
        assert!(verify_vn_axioms(&shifted, 0, 0).is_err());
    }

    #[test]
    fn axioms_deterministic_per_seed() {
        let e = BornFunctional::new(random_state::<f64>(3, 2));
        assert_eq!(verify_vn_axioms(&e, 10, 4).unwrap(), verify_vn_axioms(&e, 10, 4).unwrap());
    }
}
