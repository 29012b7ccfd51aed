//! Hermitian eigendecomposition.
//!
//! Cyclic complex Jacobi rotations drive the off-diagonal part to zero.
//! Output is then canonicalized so that identical inputs give identical
//! eigenvectors, degenerate levels included:
//!
//! 1. eigenvalues sorted ascending, near-equal ones (within
//!    `T::DEGENERACY_TOL`, relative to the spectral radius once it exceeds 1)
//!    grouped into one level and replaced by their mean;
//! 2. inside a degenerate level the basis is rebuilt by Gram–Schmidt on the
//!    projections of `e₀, e₁, …` onto the eigenspace;
//! 3. every eigenvector is rotated so its largest-magnitude component is
//!    real and positive (first such index on ties).

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{inner, norm, ComplexMatrix};
use super::observable::Observable;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Ascending eigenvalues with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T: Real> {
    eigenvalues: Vec<T>,
    eigenvectors: Vec<StateVector<T>>,
}

/// One eigenvalue with its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenLevel<T: Real> {
    pub value: T,
    /// Indices into the decomposition's eigenvector list.
    pub members: Vec<usize>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[StateVector<T>] {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Distinct eigenvalues, merging neighbours closer than `tol`.
    pub fn levels(&self, tol: T) -> Vec<EigenLevel<T>> {
        let mut levels: Vec<EigenLevel<T>> = Vec::new();
        for (k, &mu) in self.eigenvalues.iter().enumerate() {
            match levels.last_mut() {
                Some(level) if (mu - self.eigenvalues[*level.members.last().unwrap()]).abs() <= tol => {
                    level.members.push(k);
                }
                _ => levels.push(EigenLevel { value: mu, members: vec![k] }),
            }
        }
        for level in &mut levels {
            let n = T::from_usize(level.members.len()).unwrap();
            level.value = level.members.iter().map(|&k| self.eigenvalues[k]).sum::<T>() / n;
        }
        levels
    }

    /// `Σ_k g(μ_k) |φ_k⟩⟨φ_k|`.
    pub fn reassemble_with(&self, g: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d);
        for (mu, phi) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let w = g(*mu);
            if w.is_zero() {
                continue;
            }
            let amps = phi.amplitudes();
            for j in 0..d {
                for k in 0..d {
                    out[(j, k)] = out[(j, k)] + amps[j] * amps[k].conj() * w;
                }
            }
        }
        out
    }

    pub fn reassemble(&self) -> ComplexMatrix<T> {
        self.reassemble_with(|mu| mu)
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> T {
        *self.eigenvalues.last().unwrap()
    }
}

pub fn spectral_decompose<T: Real>(o: &Observable<T>) -> Result<SpectralDecomposition<T>> {
    let (values, vectors) = jacobi_eigen(o.matrix())?;
    Ok(canonicalize(values, vectors))
}

/// Eigenvalues only; skips the eigenvector canonicalization.
pub fn eigenvalues<T: Real>(o: &Observable<T>) -> Result<Vec<T>> {
    let (mut values, _) = jacobi_eigen(o.matrix())?;
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(values)
}

/// Returns eigenvalues (unordered) and the columns of the accumulated
/// unitary as eigenvectors.
type EigenPairs<T> = (Vec<T>, Vec<Vec<Complex<T>>>);

fn jacobi_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<EigenPairs<T>> {
    let d = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(d);
    let scale = a.frobenius_norm();
    let threshold = T::epsilon() * scale;

    let mut converged = scale.is_zero() || d == 1;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps, off_diagonal: off_diagonal(&a).as_f64() });
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                if a[(p, q)].norm() > threshold {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        converged = (0..d).all(|p| (p + 1..d).all(|q| a[(p, q)].norm() <= threshold));
    }

    let values = (0..d).map(|k| a[(k, k)].re).collect();
    let vectors = (0..d).map(|k| v.column(k)).collect();
    Ok((values, vectors))
}

fn off_diagonal<T: Real>(a: &ComplexMatrix<T>) -> T {
    let d = a.dim();
    let mut s = T::zero();
    for p in 0..d {
        for q in 0..d {
            if p != q {
                s = s + a[(p, q)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One rotation `A ← U†AU`, `V ← VU` annihilating `A[p][q]`.
///
/// With `A[p][q] = r·e^{iφ}`, the unitary is the identity except
/// `U[p][p] = U[q][q] = c`, `U[p][q] = s·e^{iφ}`, `U[q][p] = −s·e^{−iφ}`.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let d = a.dim();
    let apq = a[(p, q)];
    let r = apq.norm();
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let two = T::lit(2.0);
    let theta = (aqq - app) / (two * r);
    let t = if theta >= T::zero() {
        T::one() / (theta + (theta * theta + T::one()).sqrt())
    } else {
        -T::one() / (-theta + (theta * theta + T::one()).sqrt())
    };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;

    let s_phase = phase * sn; // s·e^{iφ}
    let s_phase_conj = s_phase.conj(); // s·e^{−iφ}

    // columns: M ← M·U
    for k in 0..d {
        let mp = a[(k, p)];
        let mq = a[(k, q)];
        a[(k, p)] = mp * cs - mq * s_phase_conj;
        a[(k, q)] = mp * s_phase + mq * cs;

        let vp = v[(k, p)];
        let vq = v[(k, q)];
        v[(k, p)] = vp * cs - vq * s_phase_conj;
        v[(k, q)] = vp * s_phase + vq * cs;
    }
    // rows: M ← U†·M
    for k in 0..d {
        let mp = a[(p, k)];
        let mq = a[(q, k)];
        a[(p, k)] = mp * cs - mq * s_phase;
        a[(q, k)] = mp * s_phase_conj + mq * cs;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
}

fn canonicalize<T: Real>(values: Vec<T>, vectors: Vec<Vec<Complex<T>>>) -> SpectralDecomposition<T> {
    let d = values.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap().then(i.cmp(&j)));
    let sorted: Vec<T> = order.iter().map(|&i| values[i]).collect();
    let vectors: Vec<Vec<Complex<T>>> = order.iter().map(|&i| vectors[i].clone()).collect();

    let radius = sorted.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let tol = T::lit(T::DEGENERACY_TOL) * radius.max(T::one());

    let mut eigenvalues = Vec::with_capacity(d);
    let mut eigenvectors = Vec::with_capacity(d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && sorted[end] - sorted[end - 1] <= tol {
            end += 1;
        }
        let size = T::from_usize(end - start).unwrap();
        let mean = sorted[start..end].iter().copied().sum::<T>() / size;
        let block = if end - start == 1 {
            vec![vectors[start].clone()]
        } else {
            canonical_subspace_basis(&vectors[start..end])
        };
        for mut phi in block {
            fix_phase(&mut phi);
            eigenvalues.push(mean);
            eigenvectors.push(StateVector::from_unit(phi));
        }
        start = end;
    }
    SpectralDecomposition { eigenvalues, eigenvectors }
}

/// Gram–Schmidt over the projections of `e₀, e₁, …` onto `span(block)`.
fn canonical_subspace_basis<T: Real>(block: &[Vec<Complex<T>>]) -> Vec<Vec<Complex<T>>> {
    let d = block[0].len();
    let k = block.len();
    let accept = T::lit(1e-6);
    let mut chosen: Vec<Vec<Complex<T>>> = Vec::with_capacity(k);

    let try_add = |mut w: Vec<Complex<T>>, chosen: &mut Vec<Vec<Complex<T>>>| {
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for u in chosen.iter() {
                let proj = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi = *wi - *ui * proj;
                }
            }
        }
        let n = norm(&w);
        if n > accept {
            chosen.push(w.into_iter().map(|z| z / n).collect());
        }
    };

    for j in 0..d {
        if chosen.len() == k {
            break;
        }
        // P e_j = Σ_u u · conj(u_j)
        let mut w = vec![Complex::zero(); d];
        for u in block {
            let coef = u[j].conj();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi = *wi + *ui * coef;
            }
        }
        try_add(w, &mut chosen);
    }
    // Only reachable when every projection is tiny after orthogonalization.
    for u in block {
        if chosen.len() == k {
            break;
        }
        try_add(u.clone(), &mut chosen);
    }
    chosen
}

fn fix_phase<T: Real>(phi: &mut [Complex<T>]) {
    let max = phi.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    if max.is_zero() {
        return;
    }
    let cutoff = max * (T::one() - T::lit(1e-9).max(T::epsilon() * T::lit(64.0)));
    let pivot = phi.iter().position(|z| z.norm() >= cutoff).unwrap();
    let z = phi[pivot];
    let rot = z.conj() / z.norm();
    for x in phi.iter_mut() {
        *x = *x * rot;
    }
    phi[pivot] = Complex::new(phi[pivot].re, T::zero());
}
