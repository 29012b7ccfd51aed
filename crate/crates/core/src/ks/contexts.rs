use serde::Serialize;

use super::vectors::VectorSet;
use crate::hilbert::inner;
use crate::scalar::Real;

/// Complete orthonormal bases drawn from a vector set, plus the full
/// orthogonality relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextList {
    pub vector_count: usize,
    /// Index tuples, ascending within each tuple, lexicographic overall.
    pub contexts: Vec<Vec<usize>>,
    /// Every orthogonal pair `(i, j)` with `i < j`, including pairs that
    /// never share a context.
    pub orthogonal_pairs: Vec<(usize, usize)>,
}

impl ContextList {
    /// Contexts without extra orthogonality information.
    pub fn from_contexts(vector_count: usize, contexts: Vec<Vec<usize>>) -> Self {
        ContextList { vector_count, contexts, orthogonal_pairs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    /// Number of contexts each vector belongs to.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vector_count];
        for ctx in &self.contexts {
            for &v in ctx {
                counts[v] += 1;
            }
        }
        counts
    }
}

/// Enumerates every `d`-clique of the orthogonality graph (`|⟨u|v⟩| ≤ tol`).
///
/// In dimension `d` no `d + 1` nonzero vectors are mutually orthogonal, so
/// every `d`-clique is maximal and spans the space.
pub fn build_contexts<T: Real>(set: &VectorSet<T>, tol: f64) -> ContextList {
    let n = set.len();
    let d = set.dim();
    let tol = T::lit(tol);
    let v = set.vectors();

    let mut adjacent = vec![vec![false; n]; n];
    let mut orthogonal_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if inner(&v[i], &v[j]).norm() <= tol {
                adjacent[i][j] = true;
                adjacent[j][i] = true;
                orthogonal_pairs.push((i, j));
            }
        }
    }

    let mut contexts = Vec::new();
    let mut current = Vec::with_capacity(d);
    let all: Vec<usize> = (0..n).collect();
    extend_clique(&adjacent, d, &mut current, &all, &mut contexts);
    ContextList { vector_count: n, contexts, orthogonal_pairs }
}

fn extend_clique(
    adjacent: &[Vec<bool>],
    size: usize,
    current: &mut Vec<usize>,
    candidates: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    let needed = size - current.len();
    for (pos, &c) in candidates.iter().enumerate() {
        if candidates.len() - pos < needed {
            break;
        }
        let next: Vec<usize> = candidates[pos + 1..].iter().copied().filter(|&w| adjacent[c][w]).collect();
        current.push(c);
        extend_clique(adjacent, size, current, &next, out);
        current.pop();
    }
}
