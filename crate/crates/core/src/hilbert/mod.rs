//! Dense complex linear algebra over a finite-dimensional Hilbert space.

mod density;
pub mod io;
mod matrix;
mod observable;
mod polynomial;
pub mod random;
mod spectral;
mod state;

pub use density::DensityOperator;
pub use matrix::{inner, norm, ComplexMatrix};
pub use observable::{hermitian_recombine, hermitian_split, projector_onto, Observable, Projector};
pub use polynomial::{apply_polynomial, Polynomial};
pub use random::random_state;
pub use spectral::{eigenvalues, spectral_decompose, EigenLevel, SpectralDecomposition};
pub use state::{orthonormality_residual, StateVector};

use crate::scalar::{c, Real};

/// Largest dimension accepted from external input.
pub const MAX_DIM: usize = 64;

/// Pauli matrix for axis `'x'`, `'y'` or `'z'`.
pub fn pauli<T: Real>(axis: char) -> ComplexMatrix<T> {
    let rows = match axis {
        'x' => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]],
        'y' => vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]],
        'z' => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
        other => panic!("unknown Pauli axis {other:?}"),
    };
    ComplexMatrix::from_rows(rows).expect("2x2 literal")
}

/// Euclidean distance from `ψ` to the span of the orthonormal `vectors`.
pub fn distance_to_span<T: Real>(psi: &StateVector<T>, vectors: &[&StateVector<T>]) -> T {
    let captured: T = vectors.iter().map(|v| v.inner(psi).norm_sqr()).sum();
    (T::one() - captured).max(T::zero()).sqrt()
}
