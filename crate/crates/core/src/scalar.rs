//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real field the linear algebra is written against.
///
/// The associated constants are the construction-time tolerances for the
/// precision at hand. `f64` carries the documented values; `f32` gets
/// values that its 24-bit mantissa can actually meet.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation of `‖ψ‖` from 1 when building a state.
    const NORM_TOL: f64;
    /// Allowed max-entry magnitude of `M − M†` for an observable.
    const HERM_TOL: f64;
    /// Eigenvalues closer than this are treated as one degenerate level.
    const DEGENERACY_TOL: f64;

    /// Converts an `f64` literal into this precision.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const NORM_TOL: f64 = 1e-12;
    const HERM_TOL: f64 = 1e-10;
    const DEGENERACY_TOL: f64 = 1e-8;
}

impl Real for f32 {
    const NORM_TOL: f64 = 1e-5;
    const HERM_TOL: f64 = 1e-5;
    const DEGENERACY_TOL: f64 = 1e-4;
}

/// Complex scalar over a [`Real`] field.
pub type ComplexScalar<T> = Complex<T>;

pub(crate) fn is_finite<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[inline]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}
