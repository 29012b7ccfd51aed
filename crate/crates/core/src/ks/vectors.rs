use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{inner, norm};
use crate::scalar::{is_finite, Real};

const UNIT_TOL: f64 = 1e-9;

/// Unit vectors in `ℂ^d`, `d ≥ 3`, pairwise distinct up to global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet<T: Real> {
    dim: usize,
    vectors: Vec<Vec<Complex<T>>>,
    labels: Vec<String>,
}

impl<T: Real> VectorSet<T> {
    pub fn new(dim: usize, vectors: Vec<Vec<Complex<T>>>, labels: Vec<String>) -> Result<Self> {
        if dim < 3 {
            return Err(Error::InvalidDimension { dim, reason: "vector sets need d >= 3" });
        }
        if labels.len() != vectors.len() {
            return Err(Error::InvalidInput(format!("{} labels for {} vectors", labels.len(), vectors.len())));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if let Some(index) = v.iter().position(|z| !is_finite(z)) {
                return Err(Error::NonFinite { index });
            }
            let n = norm(v);
            if (n - T::one()).abs() > T::lit(UNIT_TOL) {
                return Err(Error::InvalidInput(format!("vector {} has norm {n}", labels[i])));
            }
        }
        for i in 0..vectors.len() {
            for j in i + 1..vectors.len() {
                if inner(&vectors[i], &vectors[j]).norm() >= T::one() - T::lit(UNIT_TOL) {
                    return Err(Error::InvalidInput(format!(
                        "vectors {} and {} coincide up to phase",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(VectorSet { dim, vectors, labels })
    }

    /// Rescales each nonzero vector to unit norm before validating.
    pub fn normalized(dim: usize, vectors: Vec<Vec<Complex<T>>>, labels: Vec<String>) -> Result<Self> {
        let vectors = vectors
            .into_iter()
            .map(|v| {
                let n = norm(&v);
                if n.is_nan() || n <= T::zero() || !n.is_finite() {
                    return Err(Error::InvalidInput("zero or non-finite vector".into()));
                }
                Ok(v.into_iter().map(|z| z / n).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, vectors, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex<T>>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Reorders vectors: position `k` of the result holds input `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        VectorSet {
            dim: self.dim,
            vectors: order.iter().map(|&i| self.vectors[i].clone()).collect(),
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Multiplies vector `k` by `phases[k]` (unit modulus).
    pub fn rephased(&self, phases: &[Complex<T>]) -> Self {
        VectorSet {
            dim: self.dim,
            vectors: self.vectors.iter().zip(phases).map(|(v, &p)| v.iter().map(|&z| z * p).collect()).collect(),
            labels: self.labels.clone(),
        }
    }
}

/// One coordinate: a bare real or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryDoc {
    Real(f64),
    Complex([f64; 2]),
}

/// ```text
/// {"dim": d, "vectors": [[x, …], …], "labels": ["…", …]}
/// ```
///
/// Coordinates are reals or `[re, im]` pairs; vectors are normalized on
/// load; `labels` may be omitted (defaults to `v1, v2, …`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSetDoc {
    pub dim: usize,
    pub vectors: Vec<Vec<EntryDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl VectorSetDoc {
    pub fn to_set<T: Real>(&self) -> Result<VectorSet<T>> {
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for v in &self.vectors {
            let mut out = Vec::with_capacity(v.len());
            for e in v {
                let (re, im) = match *e {
                    EntryDoc::Real(x) => (x, 0.0),
                    EntryDoc::Complex([re, im]) => (re, im),
                };
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Parse("non-finite vector entry".into()));
                }
                out.push(Complex::new(T::lit(re), T::lit(im)));
            }
            vectors.push(out);
        }
        let labels = match &self.labels {
            Some(l) => l.clone(),
            None => (1..=vectors.len()).map(|k| format!("v{k}")).collect(),
        };
        VectorSet::normalized(self.dim, vectors, labels)
    }
}

pub fn vector_set_from_json<T: Real>(text: &str) -> Result<VectorSet<T>> {
    let doc: VectorSetDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_set()
}
