//! Plane trees with a fixed number of vertices, sampled from a critical
//! offspring law conditioned on total progeny, and their coding walks.
//!
//! A tree on n vertices is stored in depth-first (lexicographic) order.
//! Its coding walk W satisfies W(0) = 0, W(k+1) = W(k) + c(u(k)) - 1,
//! stays nonnegative before step n, and ends at -1.

use crate::error::{Error, Result};
use crate::offspring::OffspringLaw;
use rand::Rng;

/// Attempt budget for the rejection sampler.
pub const REJECTION_CAP: u64 = 1_000_000;

/// A rooted plane tree in depth-first vertex order; vertex 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    counts: Vec<u32>,
    parent: Vec<usize>,
    child_offsets: Vec<usize>,
    children: Vec<usize>,
}

impl PlaneTree {
    /// Build a tree from children counts listed in depth-first order.
    pub fn from_counts(counts: Vec<u32>) -> Result<Self> {
        let n = counts.len();
        if n == 0 {
            return Err(Error::InvalidPath("empty count sequence".into()));
        }
        let mut walk = 0i64;
        for (k, &c) in counts.iter().enumerate() {
            walk += c as i64 - 1;
            if k + 1 < n && walk < 0 {
                return Err(Error::InvalidPath(format!(
                    "walk hits {walk} at step {} of {n}",
                    k + 1
                )));
            }
        }
        if walk != -1 {
            return Err(Error::InvalidPath(format!("walk ends at {walk}, not -1")));
        }

        let mut parent = vec![usize::MAX; n];
        let mut stack: Vec<(usize, u32)> = Vec::with_capacity(32);
        stack.push((0, counts[0]));
        for v in 1..n {
            while stack.last().expect("walk stays nonnegative").1 == 0 {
                stack.pop();
            }
            let top = stack.last_mut().expect("walk stays nonnegative");
            parent[v] = top.0;
            top.1 -= 1;
            stack.push((v, counts[v]));
        }

        let mut child_offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        child_offsets.push(0);
        for &c in &counts {
            acc += c as usize;
            child_offsets.push(acc);
        }
        let mut cursor = child_offsets.clone();
        let mut children = vec![0usize; n - 1];
        for (v, &p) in parent.iter().enumerate().skip(1) {
            children[cursor[p]] = v;
            cursor[p] += 1;
        }

        Ok(PlaneTree {
            counts,
            parent,
            child_offsets,
            children,
        })
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Parent of v in depth-first indexing; None for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        if v == 0 {
            None
        } else {
            Some(self.parent[v])
        }
    }

    /// Children of v, in depth-first (left to right) order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[self.child_offsets[v]..self.child_offsets[v + 1]]
    }

    /// Depth-first coding walk, n + 1 values from 0 down to -1.
    pub fn lukasiewicz(&self) -> Vec<i64> {
        let mut path = Vec::with_capacity(self.n() + 1);
        let mut w = 0i64;
        path.push(w);
        for &c in &self.counts {
            w += c as i64 - 1;
            path.push(w);
        }
        path
    }
}

/// Children counts read back from a coding walk.
pub fn tree_from_lukasiewicz(path: &[i64]) -> Result<PlaneTree> {
    if path.len() < 2 {
        return Err(Error::InvalidPath("need at least two values".into()));
    }
    if path[0] != 0 {
        return Err(Error::InvalidPath(format!("starts at {}, not 0", path[0])));
    }
    let mut counts = Vec::with_capacity(path.len() - 1);
    for w in path.windows(2) {
        let inc = w[1] - w[0];
        if inc < -1 {
            return Err(Error::InvalidPath(format!("increment {inc} below -1")));
        }
        counts.push((inc + 1) as u32);
    }
    PlaneTree::from_counts(counts)
}

/// Index of the element right after the first global minimum of the
/// partial sums of (c_i - 1); rotating the sequence to start there is the
/// unique cyclic shift that codes a tree.
fn rotation_point(counts: &[u32]) -> usize {
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut argmin = 0usize;
    for (i, &c) in counts.iter().enumerate() {
        sum += c as i64 - 1;
        if sum < min {
            min = sum;
            argmin = i + 1;
        }
    }
    argmin % counts.len()
}

/// Sample a tree with exactly n vertices from the offspring law, by
/// rejection on the total progeny plus the cycle rotation.
pub fn sample_conditioned_gw<R: Rng + ?Sized>(
    law: &OffspringLaw,
    n: usize,
    rng: &mut R,
) -> Result<PlaneTree> {
    sample_conditioned_gw_capped(law, n, rng, REJECTION_CAP)
}

/// Same as [`sample_conditioned_gw`] with an explicit attempt budget.
pub fn sample_conditioned_gw_capped<R: Rng + ?Sized>(
    law: &OffspringLaw,
    n: usize,
    rng: &mut R,
    cap: u64,
) -> Result<PlaneTree> {
    let counts = sample_conditioned_counts(law, n, rng, cap)?;
    let rot = rotation_point(&counts);
    let mut rotated = Vec::with_capacity(n);
    rotated.extend_from_slice(&counts[rot..]);
    rotated.extend_from_slice(&counts[..rot]);
    PlaneTree::from_counts(rotated)
}

/// n i.i.d. draws conditioned on summing to n - 1, by rejection with an
/// early abort once the partial sum overshoots. Shared by the tree sampler
/// (which additionally rotates) and the lattice-bridge sampler (which does
/// not).
pub(crate) fn sample_conditioned_counts<R: Rng + ?Sized>(
    law: &OffspringLaw,
    n: usize,
    rng: &mut R,
    cap: u64,
) -> Result<Vec<u32>> {
    if n == 0 || n > u32::MAX as usize {
        return Err(Error::InvalidConfig(format!("sample size {n} out of range")));
    }
    let period = law.period();
    if !(n as u64 - 1).is_multiple_of(period) {
        return Err(Error::ConditioningImpossible {
            law: law.tag().into(),
            n,
            period,
        });
    }
    let target = (n - 1) as u64;
    let mut counts: Vec<u32> = vec![0; n];
    'attempt: for _ in 0..cap {
        let mut sum = 0u64;
        for slot in counts.iter_mut() {
            let c = law.sample(rng);
            sum += c;
            if sum > target {
                continue 'attempt;
            }
            *slot = c as u32;
        }
        if sum != target {
            continue;
        }
        return Ok(counts);
    }
    Err(Error::ConditioningTooRare {
        law: law.tag().into(),
        n,
        attempts: cap,
    })
}

/// All plane trees with exactly n vertices, in lexicographic order of
/// their count sequences. Guarded to small n: the count is Catalan(n-1).
pub fn enumerate_trees(n: usize) -> Result<Vec<PlaneTree>> {
    const MAX: usize = 12;
    if n == 0 || n > MAX {
        return Err(Error::EnumerationTooLarge { n, max: MAX });
    }
    let mut out = Vec::new();
    let mut counts = vec![0u32; n];
    fn rec(counts: &mut Vec<u32>, k: usize, walk: i64, budget: i64, out: &mut Vec<PlaneTree>) {
        let n = counts.len();
        if k == n {
            out.push(PlaneTree::from_counts(counts.clone()).expect("valid by construction"));
            return;
        }
        for c in 0..=budget {
            let w2 = walk + c - 1;
            if k + 1 < n && w2 < 0 {
                continue;
            }
            counts[k] = c as u32;
            rec(counts, k + 1, w2, budget - c, out);
        }
    }
    rec(&mut counts, 0, 0, (n - 1) as i64, &mut out);
    Ok(out)
}
