//! Finite-dimensional checks of the classic hidden-variable no-go
//! arguments.
//!
//! * [`hilbert`]: dense complex matrices, states, observables, a Hermitian
//!   eigensolver and polynomial functional calculus.
//! * [`born`]: Born-rule probabilities, expectations and dispersion.
//! * [`reconstruction`]: density-operator recovery from an expectation
//!   functional and axiom probing.
//! * [`nogo`]: dispersion-free contradictions and the spin-½ additivity
//!   counterexample.
//! * [`ks`]: Kochen–Specker coloring search and Gleason frame sampling.
//!
//! All numeric code is generic over [`Real`]; the aliases below fix the
//! common `f64` and `f32` instantiations.

pub mod born;
pub mod error;
pub mod functional;
pub mod hilbert;
pub mod ks;
pub mod nogo;
pub mod reconstruction;
mod scalar;
pub mod tolerance;

pub use error::{Error, Result};
pub use scalar::{ComplexScalar, Real};
pub use tolerance::Tolerances;

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;

pub type Matrix = hilbert::ComplexMatrix<f64>;
pub type Matrix32 = hilbert::ComplexMatrix<f32>;
pub type State = hilbert::StateVector<f64>;
pub type State32 = hilbert::StateVector<f32>;
pub type Obs = hilbert::Observable<f64>;
pub type Obs32 = hilbert::Observable<f32>;
pub type Density = hilbert::DensityOperator<f64>;
pub type Density32 = hilbert::DensityOperator<f32>;
pub type Poly = hilbert::Polynomial<f64>;
pub type Poly32 = hilbert::Polynomial<f32>;
pub type Spectrum = hilbert::SpectralDecomposition<f64>;
pub type Vectors = ks::VectorSet<f64>;
