//! From coding walks to fragment masses.
//!
//! Deleting heavy edges splits the tree into forest components. Along the
//! greedy exploration order the components occupy consecutive stretches,
//! and a new component starts exactly when the thresholded walk reaches a
//! strict running minimum. Everything here is built on that one kernel.

use crate::error::{Error, Result};
use crate::gwtree::PlaneTree;
use crate::prim::{prim_order, threshold_path, EdgeWeights};

/// Indices k >= 1 with path[k] strictly below every earlier value.
pub fn strict_record_epochs<T: PartialOrd + Copy>(path: &[T]) -> Vec<usize> {
    assert!(!path.is_empty(), "empty path");
    let mut min = path[0];
    let mut epochs = Vec::new();
    for (k, &x) in path.iter().enumerate().skip(1) {
        if x < min {
            epochs.push(k);
            min = x;
        }
    }
    epochs
}

/// Gaps between consecutive strict records, with the stretch after the last
/// record (if any) closed at the final index. The gaps sum to len - 1.
pub fn record_gap_sizes<T: PartialOrd + Copy>(path: &[T]) -> Vec<usize> {
    let last = path.len() - 1;
    let mut epochs = strict_record_epochs(path);
    if epochs.last() != Some(&last) && last > 0 {
        epochs.push(last);
    }
    let mut gaps = Vec::with_capacity(epochs.len());
    let mut prev = 0usize;
    for e in epochs {
        gaps.push(e - prev);
        prev = e;
    }
    gaps
}

/// Component sizes of the forest coded by a thresholded walk, in
/// exploration order. The walk has n + 1 values for n vertices.
pub fn ladder_components(path: &[i64]) -> Vec<usize> {
    assert!(path.len() >= 2, "walk must cover at least one vertex");
    assert_eq!(path[0], 0, "walk must start at zero");
    record_gap_sizes(path)
}

/// Fragment sizes and normalized masses sorted largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedMasses {
    sizes: Vec<usize>,
    masses: Vec<f64>,
    total: usize,
}

impl RankedMasses {
    pub fn from_sizes(sizes: &[usize], total: usize) -> Result<Self> {
        if total == 0 {
            return Err(Error::InvalidMasses("zero total mass".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidMasses("zero-size fragment".into()));
        }
        let got: usize = sizes.iter().sum();
        if got != total {
            return Err(Error::SizeSumMismatch {
                got,
                expected: total,
            });
        }
        let mut sizes = sizes.to_vec();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let masses = sizes.iter().map(|&s| s as f64 / total as f64).collect();
        Ok(RankedMasses {
            sizes,
            masses,
            total,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Masses in decreasing order; they sum to 1 up to rounding.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn fragment_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> f64 {
        self.masses[0]
    }

    /// Second-largest mass, zero when there is a single fragment.
    pub fn second(&self) -> f64 {
        self.masses.get(1).copied().unwrap_or(0.0)
    }

    /// Number of fragments with mass strictly above eps.
    pub fn count_above(&self, eps: f64) -> usize {
        self.masses.iter().take_while(|&&m| m > eps).count()
    }
}

/// Ranked fragment masses read off a thresholded walk.
pub fn ranked_masses(path: &[i64]) -> Result<RankedMasses> {
    let sizes = ladder_components(path);
    RankedMasses::from_sizes(&sizes, path.len() - 1)
}

/// Component sizes of the forest that keeps edges with weight <= s,
/// computed by union-find directly on the tree. Sorted largest first.
/// Slow reference for validating the walk-based extraction.
pub fn components_oracle(tree: &PlaneTree, weights: &EdgeWeights, s: f64) -> Vec<usize> {
    let n = tree.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for v in 1..n {
        if weights.weight(v) <= s {
            let a = find(&mut parent, v);
            let b = find(&mut parent, tree.parent(v).unwrap());
            parent[a] = b;
        }
    }
    let mut count = vec![0usize; n];
    for v in 0..n {
        count[find(&mut parent, v)] += 1;
    }
    let mut sizes: Vec<usize> = count.into_iter().filter(|&c| c > 0).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Fragment masses of one tree observed at several times. Time t maps to
/// the threshold s = 1 - bn t / n; past t = n / bn every vertex is its own
/// fragment.
#[derive(Debug, Clone)]
pub struct FragmentationTrajectory {
    pub n: usize,
    pub bn: f64,
    pub times: Vec<f64>,
    pub masses: Vec<RankedMasses>,
}

pub fn fragmentation_process(
    tree: &PlaneTree,
    weights: &EdgeWeights,
    bn: f64,
    times: &[f64],
) -> Result<FragmentationTrajectory> {
    assert!(bn > 0.0, "normalization must be positive");
    let n = tree.n();
    let order = prim_order(tree, weights)?;
    let mut masses = Vec::with_capacity(times.len());
    for &t in times {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        let s = 1.0 - bn * t / n as f64;
        let ranked = if s < 0.0 {
            RankedMasses::from_sizes(&vec![1; n], n)?
        } else {
            ranked_masses(&threshold_path(tree, weights, &order, s)?)?
        };
        masses.push(ranked);
    }
    Ok(FragmentationTrajectory {
        n,
        bn,
        times: times.to_vec(),
        masses,
    })
}
