use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::{inner, norm};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// Unit vector in `ℂ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Accepts amplitudes whose norm is within `T::NORM_TOL` of 1.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension { dim: 0, reason: "state needs at least one amplitude" });
        }
        if let Some(index) = amplitudes.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite { index });
        }
        let n = norm(&amplitudes);
        if (n - T::one()).abs() > T::lit(T::NORM_TOL) {
            return Err(Error::NotNormalized { norm: n.as_f64() });
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if let Some(index) = amplitudes.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite { index });
        }
        let n = norm(&amplitudes);
        if n <= T::zero() {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Self::new(amplitudes.into_iter().map(|z| z / n).collect())
    }

    /// Canonical basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![Complex::zero(); dim];
        amplitudes[k] = Complex::one();
        StateVector { amplitudes }
    }

    /// Skips the norm check; callers guarantee unit norm.
    pub(crate) fn from_unit(amplitudes: Vec<Complex<T>>) -> Self {
        StateVector { amplitudes }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }
}

impl<T: Real> AsRef<[Complex<T>]> for StateVector<T> {
    fn as_ref(&self) -> &[Complex<T>] {
        &self.amplitudes
    }
}

/// Max `|⟨a|b⟩ − δ_ab|` over all pairs.
pub fn orthonormality_residual<T: Real>(basis: &[StateVector<T>]) -> T {
    let mut worst = T::zero();
    for (j, a) in basis.iter().enumerate() {
        for (k, b) in basis.iter().enumerate().skip(j) {
            let target = if j == k { Complex::one() } else { Complex::zero() };
            worst = worst.max((a.inner(b) - target).norm());
        }
    }
    worst
}
