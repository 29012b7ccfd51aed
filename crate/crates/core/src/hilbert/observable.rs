use std::ops::Deref;

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hermitian matrix.
///
/// Construction accepts inputs within `T::HERM_TOL` of Hermitian and stores
/// the exact Hermitian part, so expectations come out real up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Observable<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerance(matrix, T::lit(T::HERM_TOL))
    }

    pub fn with_tolerance(matrix: ComplexMatrix<T>, tol: T) -> Result<Self> {
        let residual = matrix.hermitian_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual: residual.as_f64() });
        }
        Ok(Observable { matrix: matrix.hermitian_part() })
    }

    /// Wraps a matrix that is Hermitian by construction.
    pub(crate) fn from_hermitian(matrix: ComplexMatrix<T>) -> Self {
        debug_assert!(matrix.hermitian_residual() <= T::lit(T::HERM_TOL));
        Observable { matrix }
    }

    #[cfg(test)]
    pub(crate) fn from_hermitian_unchecked_for_test(matrix: ComplexMatrix<T>) -> Self {
        Observable { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Observable { matrix: ComplexMatrix::identity(dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Observable { matrix: ComplexMatrix::zeros(dim) }
    }

    pub fn diagonal(values: &[T]) -> Self {
        Observable { matrix: ComplexMatrix::diagonal(values) }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// Real linear combination `αA + βB`.
    pub fn combine(alpha: T, a: &Self, beta: T, b: &Self) -> Self {
        let m = &a.matrix.scale_real(alpha) + &b.matrix.scale_real(beta);
        Observable { matrix: m }
    }

    pub fn scaled(&self, factor: T) -> Self {
        Observable { matrix: self.matrix.scale_real(factor) }
    }

    /// `O²`, re-symmetrized.
    pub fn squared(&self) -> Self {
        Observable { matrix: (&self.matrix * &self.matrix).hermitian_part() }
    }
}

impl<T: Real> Deref for Observable<T> {
    type Target = ComplexMatrix<T>;

    fn deref(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }
}

/// Hermitian idempotent with known rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector<T: Real> {
    observable: Observable<T>,
    rank: usize,
}

impl<T: Real> Projector<T> {
    /// Validates Hermiticity, idempotence and an integral trace.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let observable = Observable::new(matrix)?;
        let tol = T::lit(T::HERM_TOL);
        let square = &observable.matrix * &observable.matrix;
        let residual = square.max_abs_diff(&observable.matrix);
        if residual > tol {
            return Err(Error::NotProjector { residual: residual.as_f64() });
        }
        let tr = observable.matrix.trace().re;
        let rank = tr.round();
        if (tr - rank).abs() > T::lit(1e-8).max(tol) {
            return Err(Error::NotProjector { residual: (tr - rank).abs().as_f64() });
        }
        let rank = rank.to_usize().unwrap_or(0);
        Ok(Projector { observable, rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn observable(&self) -> &Observable<T> {
        &self.observable
    }
}

impl<T: Real> Deref for Projector<T> {
    type Target = Observable<T>;

    fn deref(&self) -> &Observable<T> {
        &self.observable
    }
}

/// `|χ⟩⟨χ|`.
pub fn projector_onto<T: Real>(chi: &StateVector<T>) -> Projector<T> {
    let m = ComplexMatrix::outer(chi.amplitudes(), chi.amplitudes());
    Projector { observable: Observable { matrix: m.hermitian_part() }, rank: 1 }
}

/// `A = A₊ + i·A₋` with `A₊ = (A + A†)/2`, `A₋ = (A − A†)/(2i)`.
pub fn hermitian_split<T: Real>(a: &ComplexMatrix<T>) -> (Observable<T>, Observable<T>) {
    (
        Observable { matrix: a.hermitian_part() },
        Observable { matrix: a.antihermitian_part() },
    )
}

/// Inverse of [`hermitian_split`].
pub fn hermitian_recombine<T: Real>(plus: &Observable<T>, minus: &Observable<T>) -> ComplexMatrix<T> {
    let i = Complex::new(T::zero(), T::one());
    &plus.matrix + &minus.matrix.scale(i)
}
