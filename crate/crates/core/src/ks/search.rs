//! Exhaustive 0/1 coloring search over orthogonality contexts.
//!
//! A Kochen–Specker coloring marks exactly one vector per context with 1
//! and never marks two orthogonal vectors. The search branches on the
//! lowest unassigned vector, trying 0 before 1, and runs unit propagation
//! after every decision. With that order the first coloring found is the
//! lexicographically least one.

use serde::Serialize;

use super::contexts::ContextList;
use crate::error::{Error, Result};

/// Vertex limit: assignments live in one `u64` bitmask.
pub const MAX_KS_VECTORS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringStatus {
    Colorable,
    Uncolorable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringOutcome {
    pub status: ColoringStatus,
    pub coloring: Option<Vec<u8>>,
    /// Decision nodes visited, root included.
    pub nodes_explored: u64,
}

struct Problem {
    contexts: Vec<u64>,
    /// Vectors that may not share the value 1 with vector `i`.
    exclusive: Vec<u64>,
    all: u64,
}

#[derive(Clone, Copy)]
struct Partial {
    ones: u64,
    zeros: u64,
}

pub fn ks_search(contexts: &ContextList, vector_count: usize) -> Result<ColoringOutcome> {
    if vector_count > MAX_KS_VECTORS {
        return Err(Error::SearchSpaceTooLarge { size: vector_count as u128, limit: MAX_KS_VECTORS as u128 });
    }
    if contexts.contexts.is_empty() {
        return Err(Error::InvalidInput("no contexts to color".into()));
    }
    let problem = Problem::new(contexts, vector_count)?;
    let mut nodes = 0;
    let found = problem.search(Partial { ones: 0, zeros: 0 }, &mut nodes);
    Ok(match found {
        Some(ones) => ColoringOutcome {
            status: ColoringStatus::Colorable,
            coloring: Some((0..vector_count).map(|i| ((ones >> i) & 1) as u8).collect()),
            nodes_explored: nodes,
        },
        None => ColoringOutcome { status: ColoringStatus::Uncolorable, coloring: None, nodes_explored: nodes },
    })
}

impl Problem {
    fn new(list: &ContextList, n: usize) -> Result<Self> {
        let mut exclusive = vec![0u64; n];
        let mut contexts = Vec::with_capacity(list.contexts.len());
        let link = |i: usize, j: usize, exclusive: &mut Vec<u64>| -> Result<()> {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!("vector index {} out of range", i.max(j))));
            }
            if i != j {
                exclusive[i] |= 1 << j;
                exclusive[j] |= 1 << i;
            }
            Ok(())
        };
        for ctx in &list.contexts {
            let mut mask = 0u64;
            for &i in ctx {
                if i >= n {
                    return Err(Error::InvalidInput(format!("vector index {i} out of range")));
                }
                mask |= 1 << i;
                for &j in ctx {
                    link(i, j, &mut exclusive)?;
                }
            }
            contexts.push(mask);
        }
        for &(i, j) in &list.orthogonal_pairs {
            link(i, j, &mut exclusive)?;
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Problem { contexts, exclusive, all })
    }

    /// Unit propagation to a fixpoint; `None` on conflict.
    fn propagate(&self, mut p: Partial) -> Option<Partial> {
        loop {
            let before = (p.ones, p.zeros);
            let mut pending = p.ones;
            while pending != 0 {
                let i = pending.trailing_zeros() as usize;
                pending &= pending - 1;
                if self.exclusive[i] & p.ones != 0 {
                    return None;
                }
                p.zeros |= self.exclusive[i];
            }
            for &mask in &self.contexts {
                let ones = mask & p.ones;
                match ones.count_ones() {
                    0 => {
                        let open = mask & !p.zeros;
                        match open.count_ones() {
                            0 => return None,
                            1 => p.ones |= open,
                            _ => {}
                        }
                    }
                    1 => p.zeros |= mask & !p.ones,
                    _ => return None,
                }
            }
            if p.ones & p.zeros != 0 {
                return None;
            }
            if (p.ones, p.zeros) == before {
                return Some(p);
            }
        }
    }

    fn search(&self, p: Partial, nodes: &mut u64) -> Option<u64> {
        *nodes += 1;
        let p = self.propagate(p)?;
        let free = self.all & !(p.ones | p.zeros);
        if free == 0 {
            return Some(p.ones);
        }
        let bit = free & free.wrapping_neg();
        if let Some(found) = self.search(Partial { ones: p.ones, zeros: p.zeros | bit }, nodes) {
            return Some(found);
        }
        self.search(Partial { ones: p.ones | bit, zeros: p.zeros }, nodes)
    }
}

/// Exact check of both coloring rules.
pub fn validate_coloring(contexts: &ContextList, coloring: &[u8]) -> bool {
    if coloring.len() != contexts.vector_count || coloring.iter().any(|&c| c > 1) {
        return false;
    }
    let one_per_context =
        contexts.contexts.iter().all(|ctx| ctx.iter().map(|&i| coloring[i] as usize).sum::<usize>() == 1);
    let exclusive_pairs = contexts.orthogonal_pairs.iter().all(|&(i, j)| coloring[i] + coloring[j] <= 1);
    one_per_context && exclusive_pairs
}
