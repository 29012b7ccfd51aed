use num_complex::Complex;

use super::vectors::VectorSet;
use crate::scalar::Real;

/// Unnormalized coordinates of the 18-vector, 9-basis set in `ℂ⁴`
/// (Cabello, Estebaranz, García-Alcaine). Each vector sits in exactly two
/// of the nine bases.
const CABELLO_18: [[i8; 4]; 18] = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [1, 1, 0, 0],
    [1, -1, 0, 0],
    [0, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, -1, 0],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [0, 0, 1, 1],
    [1, 1, 1, 1],
    [0, 1, 0, -1],
    [1, 0, 0, 1],
    [1, 0, 0, -1],
    [0, 1, -1, 0],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
    [-1, 1, 1, 1],
];

pub fn cabello18<T: Real>() -> VectorSet<T> {
    let vectors = CABELLO_18
        .iter()
        .map(|v| v.iter().map(|&x| Complex::new(T::lit(f64::from(x)), T::zero())).collect())
        .collect();
    let labels = CABELLO_18
        .iter()
        .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    VectorSet::normalized(4, vectors, labels).expect("fixture vectors are distinct and nonzero")
}

/// Looks up an embedded vector set by name.
pub fn fixture<T: Real>(name: &str) -> Option<VectorSet<T>> {
    match name {
        "cabello18" => Some(cabello18()),
        _ => None,
    }
}
