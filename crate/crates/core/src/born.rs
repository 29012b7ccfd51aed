//! Born-rule statistics for a pure state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{apply_polynomial, spectral_decompose, Observable, Polynomial, StateVector};
use crate::scalar::Real;

/// Imaginary parts of `⟨ψ|O|ψ⟩` up to this size are rounding noise.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;
/// Eigenvalues closer than this count as one measurement outcome.
pub const OUTCOME_MERGE_TOL: f64 = 1e-8;

/// Distinct eigenvalues (ascending) with their Born probabilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution<T: Real> {
    pub outcomes: Vec<(T, T)>,
}

impl<T: Real> OutcomeDistribution<T> {
    pub fn total(&self) -> T {
        self.outcomes.iter().map(|&(_, p)| p).sum()
    }

    /// `Σ μ·p(μ)`.
    pub fn mean(&self) -> T {
        self.outcomes.iter().map(|&(mu, p)| mu * p).sum()
    }

    pub fn probability_of(&self, value: T, tol: T) -> Option<T> {
        self.outcomes.iter().find(|(mu, _)| (*mu - value).abs() <= tol).map(|&(_, p)| p)
    }
}

fn check_dims<T: Real>(psi: &StateVector<T>, o: &Observable<T>) -> Result<()> {
    if psi.dim() != o.dim() {
        return Err(Error::DimensionMismatch { expected: o.dim(), found: psi.dim() });
    }
    Ok(())
}

/// `⟨ψ|O|ψ⟩`.
pub fn expectation<T: Real>(psi: &StateVector<T>, o: &Observable<T>) -> Result<T> {
    check_dims(psi, o)?;
    let z = o.sandwich(psi.amplitudes(), psi.amplitudes());
    let scale = o.max_abs().max(T::one());
    if z.im.abs() > T::lit(IMAGINARY_RESIDUE_TOL) * scale {
        return Err(Error::NonRealExpectation { imaginary: z.im.as_f64() });
    }
    Ok(z.re)
}

/// Probability `‖P_μ ψ‖²` for every distinct eigenvalue `μ`.
pub fn outcome_probabilities<T: Real>(psi: &StateVector<T>, o: &Observable<T>) -> Result<OutcomeDistribution<T>> {
    check_dims(psi, o)?;
    let sd = spectral_decompose(o)?;
    let weights: Vec<T> = sd.eigenvectors().iter().map(|phi| phi.inner(psi).norm_sqr()).collect();
    let outcomes = sd
        .levels(T::lit(OUTCOME_MERGE_TOL))
        .into_iter()
        .map(|level| {
            let p: T = level.members.iter().map(|&k| weights[k]).sum();
            (level.value, p.max(T::zero()))
        })
        .collect();
    Ok(OutcomeDistribution { outcomes })
}

/// Variance `⟨O²⟩ − ⟨O⟩²`, clamped at zero.
pub fn dispersion<T: Real>(psi: &StateVector<T>, o: &Observable<T>) -> Result<T> {
    check_dims(psi, o)?;
    let mean = expectation(psi, o)?;
    // ‖Oψ‖² is ⟨O²⟩ without forming O².
    let second: T = o.apply(psi.amplitudes()).iter().map(|z| z.norm_sqr()).sum();
    let var = second - mean * mean;
    Ok(if var < T::zero() { T::zero() } else { var })
}

/// `|f(⟨O⟩) − ⟨f(O)⟩|`: zero for every `f` only when `ψ` is dispersion-free
/// for `O`.
pub fn function_compatibility_gap<T: Real>(psi: &StateVector<T>, o: &Observable<T>, f: &Polynomial<T>) -> Result<T> {
    check_dims(psi, o)?;
    let lhs = f.eval(expectation(psi, o)?);
    let rhs = expectation(psi, &apply_polynomial(o, f)?)?;
    Ok((lhs - rhs).abs())
}

/// True when `ψ` carries no dispersion for `O` up to `tol`.
pub fn is_dispersion_free<T: Real>(psi: &StateVector<T>, o: &Observable<T>, tol: T) -> Result<bool> {
    let v = dispersion(psi, o)?;
    Ok(v.is_zero() || v <= tol)
}
