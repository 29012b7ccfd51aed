//! JSON encoding of matrices and states.
//!
//! ```text
//! matrix := {"dim": d, "entries": [row_0, …, row_{d-1}]}
//! row    := [z_0, …, z_{d-1}]
//! state  := {"dim": d, "amplitudes": [z_0, …, z_{d-1}]}
//! z      := [re, im]
//! ```
//!
//! `d` must lie in `1..=MAX_DIM`, every row must have exactly `d` entries,
//! and all numbers must be finite. Unknown keys are rejected.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::state::StateVector;
use super::MAX_DIM;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub dim: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Parse(format!("dim {dim} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

fn to_complex<T: Real>(pair: [f64; 2], index: usize) -> Result<Complex<T>> {
    if !pair[0].is_finite() || !pair[1].is_finite() {
        return Err(Error::Parse(format!("non-finite number at entry {index}")));
    }
    Ok(Complex::new(T::lit(pair[0]), T::lit(pair[1])))
}

fn to_pair<T: Real>(z: &Complex<T>) -> [f64; 2] {
    [z.re.as_f64(), z.im.as_f64()]
}

impl MatrixDoc {
    pub fn from_matrix<T: Real>(m: &ComplexMatrix<T>) -> Self {
        MatrixDoc { dim: m.dim(), entries: m.rows().map(|r| r.iter().map(to_pair).collect()).collect() }
    }

    pub fn to_matrix<T: Real>(&self) -> Result<ComplexMatrix<T>> {
        check_dim(self.dim)?;
        if self.entries.len() != self.dim {
            return Err(Error::Parse(format!("expected {} rows, found {}", self.dim, self.entries.len())));
        }
        let mut flat = Vec::with_capacity(self.dim * self.dim);
        for (row, r) in self.entries.iter().enumerate() {
            if r.len() != self.dim {
                return Err(Error::Parse(format!("row {row} has {} entries, expected {}", r.len(), self.dim)));
            }
            for &pair in r {
                flat.push(to_complex(pair, flat.len())?);
            }
        }
        ComplexMatrix::from_flat(self.dim, flat)
    }
}

impl StateDoc {
    pub fn from_state<T: Real>(s: &StateVector<T>) -> Self {
        StateDoc { dim: s.dim(), amplitudes: s.amplitudes().iter().map(to_pair).collect() }
    }

    pub fn to_state<T: Real>(&self) -> Result<StateVector<T>> {
        check_dim(self.dim)?;
        if self.amplitudes.len() != self.dim {
            return Err(Error::Parse(format!("expected {} amplitudes, found {}", self.dim, self.amplitudes.len())));
        }
        let amps = self.amplitudes.iter().enumerate().map(|(k, &p)| to_complex(p, k)).collect::<Result<Vec<_>>>()?;
        StateVector::new(amps)
    }
}

pub fn matrix_from_json<T: Real>(text: &str) -> Result<ComplexMatrix<T>> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_matrix()
}

pub fn matrix_to_json<T: Real>(m: &ComplexMatrix<T>) -> String {
    serde_json::to_string(&MatrixDoc::from_matrix(m)).expect("finite matrix serializes")
}

pub fn state_from_json<T: Real>(text: &str) -> Result<StateVector<T>> {
    let doc: StateDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_state()
}

pub fn state_to_json<T: Real>(s: &StateVector<T>) -> String {
    serde_json::to_string(&StateDoc::from_state(s)).expect("finite state serializes")
}
