use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hilbert::random::{rng_from_seed, sample_basis};
use crate::hilbert::{ComplexMatrix, DensityOperator};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Max over `bases` Haar-random orthonormal bases of
/// `|Σ_k ⟨χ_k|ρ|χ_k⟩ − 1|`.
///
/// A quantum state induces a frame function on unit vectors; this samples
/// how far its basis sums stray from 1.
pub fn gleason_frame_check<T: Real>(rho: &ComplexMatrix<T>, bases: usize, seed: u64) -> Result<T> {
    gleason_frame_check_with(rho, bases, seed, &Tolerances::default())
}

pub fn gleason_frame_check_with<T: Real>(
    rho: &ComplexMatrix<T>,
    bases: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<T> {
    if bases == 0 {
        return Err(Error::InvalidInput("at least one basis is required".into()));
    }
    let density = DensityOperator::with_tolerances(rho.clone(), tol).map_err(|e| match e {
        Error::InvalidDensity(_) => e,
        other => Error::InvalidDensity(other.to_string()),
    })?;
    Ok(frame_deviation(&density, bases, seed))
}

pub fn frame_deviation<T: Real>(rho: &DensityOperator<T>, bases: usize, seed: u64) -> T {
    let mut rng = rng_from_seed(seed);
    let d = rho.dim();
    let mut worst = T::zero();
    for _ in 0..bases {
        let basis = sample_basis::<T, _>(d, &mut rng);
        let sum = basis
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, chi| acc + rho.sandwich(chi.amplitudes(), chi.amplitudes()));
        worst = worst.max((sum - Complex::one()).norm());
    }
    worst
}
