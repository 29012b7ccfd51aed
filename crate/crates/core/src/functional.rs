//! Expectation functionals: maps from observables to reals at a fixed state.

use crate::born;
use crate::hilbert::{eigenvalues, DensityOperator, Observable, StateVector};
use crate::scalar::Real;

/// A candidate `E(ψ, ·)` with the state curried away.
///
/// Implementations must be deterministic. Callers check dimensions before
/// evaluating, so `evaluate` only ever sees observables of size `dim()`.
pub trait ExpectationFunctional<T: Real> {
    fn dim(&self) -> usize;

    fn label(&self) -> &str;

    fn evaluate(&self, observable: &Observable<T>) -> T;
}

/// `O ↦ ⟨ψ|O|ψ⟩`.
#[derive(Debug, Clone)]
pub struct BornFunctional<T: Real> {
    state: StateVector<T>,
    label: String,
}

impl<T: Real> BornFunctional<T> {
    pub fn new(state: StateVector<T>) -> Self {
        BornFunctional { label: format!("born(d={})", state.dim()), state }
    }

    pub fn state(&self) -> &StateVector<T> {
        &self.state
    }
}

impl<T: Real> ExpectationFunctional<T> for BornFunctional<T> {
    fn dim(&self) -> usize {
        self.state.dim()
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, observable: &Observable<T>) -> T {
        born::expectation(&self.state, observable).expect("dimension checked by caller")
    }
}

/// `O ↦ Re Tr(ρO)`.
#[derive(Debug, Clone)]
pub struct DensityFunctional<T: Real> {
    density: DensityOperator<T>,
    label: String,
}

impl<T: Real> DensityFunctional<T> {
    pub fn new(density: DensityOperator<T>) -> Self {
        DensityFunctional { label: format!("mixed(d={})", density.dim()), density }
    }

    pub fn density(&self) -> &DensityOperator<T> {
        &self.density
    }
}

impl<T: Real> ExpectationFunctional<T> for DensityFunctional<T> {
    fn dim(&self) -> usize {
        self.density.dim()
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, observable: &Observable<T>) -> T {
        let d = self.dim();
        let mut acc = T::zero();
        for j in 0..d {
            for k in 0..d {
                acc = acc + (self.density[(j, k)] * observable[(k, j)]).re;
            }
        }
        acc
    }
}

/// `O ↦ Tr(O)/d`, the maximally mixed state.
#[derive(Debug, Clone)]
pub struct TraceFunctional {
    dim: usize,
    label: String,
}

impl TraceFunctional {
    pub fn new(dim: usize) -> Self {
        TraceFunctional { dim, label: format!("trace(d={dim})") }
    }
}

impl<T: Real> ExpectationFunctional<T> for TraceFunctional {
    fn dim(&self) -> usize {
        self.dim
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, observable: &Observable<T>) -> T {
        observable.trace().re / T::from_usize(self.dim).unwrap()
    }
}

/// `O ↦ λ_max(O)`. Normalized and non-negative on projectors, but not linear.
#[derive(Debug, Clone)]
pub struct MaxEigenvalueFunctional {
    dim: usize,
    label: String,
}

impl MaxEigenvalueFunctional {
    pub fn new(dim: usize) -> Self {
        MaxEigenvalueFunctional { dim, label: format!("max-eigenvalue(d={dim})") }
    }
}

impl<T: Real> ExpectationFunctional<T> for MaxEigenvalueFunctional {
    fn dim(&self) -> usize {
        self.dim
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, observable: &Observable<T>) -> T {
        *eigenvalues(observable).expect("hermitian input converges").last().unwrap()
    }
}

/// Adapter for closures.
pub struct FnFunctional<F> {
    dim: usize,
    label: String,
    f: F,
}

impl<F> FnFunctional<F> {
    pub fn new(dim: usize, label: impl Into<String>, f: F) -> Self {
        FnFunctional { dim, label: label.into(), f }
    }
}

impl<T: Real, F: Fn(&Observable<T>) -> T> ExpectationFunctional<T> for FnFunctional<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, observable: &Observable<T>) -> T {
        (self.f)(observable)
    }
}
