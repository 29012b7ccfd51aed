use std::ops::Deref;

use super::matrix::ComplexMatrix;
use super::observable::Observable;
use super::spectral::eigenvalues;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Positive, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Real> {
    observable: Observable<T>,
    min_eigenvalue: T,
}

impl<T: Real> DensityOperator<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    /// Requires Hermitian within `tol.hermitian`, eigenvalues ≥ −`tol.positivity`
    /// and `|Tr ρ − 1| ≤ tol.identity`.
    pub fn with_tolerances(matrix: ComplexMatrix<T>, tol: &Tolerances) -> Result<Self> {
        let d = matrix.dim();
        if d < 2 {
            return Err(Error::InvalidDensity(format!("dimension {d} is below 2")));
        }
        let herm_tol = T::lit(tol.hermitian.max(T::HERM_TOL));
        let observable = Observable::with_tolerance(matrix, herm_tol)
            .map_err(|e| Error::InvalidDensity(e.to_string()))?;
        let tr = observable.trace();
        if (tr.re - T::one()).abs() > T::lit(tol.identity) || tr.im.abs() > T::lit(tol.identity) {
            return Err(Error::InvalidDensity(format!("trace {} differs from 1", tr.re)));
        }
        let min_eigenvalue = eigenvalues(&observable)?[0];
        if min_eigenvalue < -T::lit(tol.positivity) {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eigenvalue}")));
        }
        Ok(DensityOperator { observable, min_eigenvalue })
    }

    pub fn observable(&self) -> &Observable<T> {
        &self.observable
    }

    pub fn min_eigenvalue(&self) -> T {
        self.min_eigenvalue
    }
}

impl<T: Real> Deref for DensityOperator<T> {
    type Target = ComplexMatrix<T>;

    fn deref(&self) -> &ComplexMatrix<T> {
        self.observable.matrix()
    }
}
