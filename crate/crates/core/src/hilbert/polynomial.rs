use super::observable::Observable;
use super::spectral::spectral_decompose;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Real> {
    coefficients: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coefficients: Vec<T>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one coefficient".into()));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("polynomial coefficients must be finite".into()));
        }
        Ok(Polynomial { coefficients })
    }

    pub fn constant(c: T) -> Self {
        Polynomial { coefficients: vec![c] }
    }

    /// `f(x) = x`.
    pub fn identity() -> Self {
        Polynomial { coefficients: vec![T::zero(), T::one()] }
    }

    /// `f(x) = x²`.
    pub fn square() -> Self {
        Polynomial { coefficients: vec![T::zero(), T::zero(), T::one()] }
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        self.coefficients.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    /// Product polynomial.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![T::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial { coefficients: out }
    }
}

/// `f(O) = Σ_k f(μ_k) |φ_k⟩⟨φ_k|`.
pub fn apply_polynomial<T: Real>(o: &Observable<T>, f: &Polynomial<T>) -> Result<Observable<T>> {
    let sd = spectral_decompose(o)?;
    Ok(Observable::from_hermitian(sd.reassemble_with(|mu| f.eval(mu)).hermitian_part()))
}
