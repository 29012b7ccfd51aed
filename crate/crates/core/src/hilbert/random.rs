//! Seeded generators for states, observables, bases and density operators.
//!
//! All randomness flows through `ChaCha8Rng`, whose stream is fixed across
//! platforms and crate releases, so a seed pins the output.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{inner, norm, ComplexMatrix};
use super::observable::Observable;
use super::state::StateVector;
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn gaussian_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Haar-uniform unit vector: `2d` standard Gaussians packed as `d` complex
/// amplitudes, then normalized.
pub fn random_state<T: Real>(dim: usize, seed: u64) -> StateVector<T> {
    sample_state(dim, &mut rng_from_seed(seed))
}

pub fn sample_state<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector<T> {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let v: Vec<Complex<T>> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        let n = norm(&v);
        if n > T::lit(1e-6) {
            return StateVector::from_unit(v.into_iter().map(|z| z / n).collect());
        }
    }
}

/// GUE-style observable `(G + G†)/2` with standard complex Gaussian `G`.
pub fn sample_hermitian<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Observable<T> {
    Observable::from_hermitian(sample_matrix(dim, rng).hermitian_part())
}

pub fn random_hermitian<T: Real>(dim: usize, seed: u64) -> Observable<T> {
    sample_hermitian(dim, &mut rng_from_seed(seed))
}

/// Matrix of independent standard complex Gaussians.
pub fn sample_matrix<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let entries = (0..dim * dim).map(|_| gaussian_complex(rng)).collect();
    ComplexMatrix::from_flat(dim, entries).expect("gaussian entries are finite")
}

/// Haar-random orthonormal basis: Gram–Schmidt on the columns of a complex
/// Gaussian matrix.
pub fn sample_basis<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<StateVector<T>> {
    loop {
        let g = sample_matrix::<T, R>(dim, rng);
        if let Some(basis) = gram_schmidt((0..dim).map(|k| g.column(k)).collect()) {
            return basis;
        }
    }
}

pub fn random_basis<T: Real>(dim: usize, seed: u64) -> Vec<StateVector<T>> {
    sample_basis(dim, &mut rng_from_seed(seed))
}

/// Unitary whose columns form a Haar-random basis.
pub fn sample_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let basis = sample_basis::<T, R>(dim, rng);
    let mut u = ComplexMatrix::zeros(dim);
    for (k, phi) in basis.iter().enumerate() {
        for (j, &z) in phi.amplitudes().iter().enumerate() {
            u[(j, k)] = z;
        }
    }
    u
}

/// Random mixed state: convex combination of `dim` Haar states with
/// weights drawn uniformly from the simplex.
pub fn sample_density<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let raw: Vec<f64> = (0..dim).map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
    let total: f64 = raw.iter().sum();
    let mut rho = ComplexMatrix::zeros(dim);
    for w in raw {
        let psi = sample_state::<T, R>(dim, rng);
        let term = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()).scale_real(T::lit(w / total));
        rho = &rho + &term;
    }
    rho.hermitian_part()
}

/// Modified Gram–Schmidt with reorthogonalization; `None` on rank loss.
fn gram_schmidt<T: Real>(columns: Vec<Vec<Complex<T>>>) -> Option<Vec<StateVector<T>>> {
    let mut out: Vec<Vec<Complex<T>>> = Vec::with_capacity(columns.len());
    for mut w in columns {
        for _ in 0..2 {
            for u in &out {
                let proj = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi = *wi - *ui * proj;
                }
            }
        }
        let n = norm(&w);
        if n <= T::lit(1e-8) {
            return None;
        }
        out.push(w.into_iter().map(|z| z / n).collect());
    }
    Some(out.into_iter().map(StateVector::from_unit).collect())
}
