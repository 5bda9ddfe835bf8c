//! The continuum side on a finite grid: Gaussian and lattice bridges over
//! [0, 1], the rotation of a bridge into an excursion, ladder masses of
//! drifted excursions, and exponential edge cutting of a finite tree.
//!
//! All paths live on the grid j/m, j = 0..=m. Masses are integer gap
//! counts over m, so partition identities hold exactly.

use crate::error::{Error, Result};
use crate::fragmentation::{record_gap_sizes, RankedMasses};
use crate::gwtree::{sample_conditioned_counts, PlaneTree, REJECTION_CAP};
use crate::offspring::OffspringLaw;
use crate::prim::EdgeWeights;
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Bridge,
    Excursion,
    Drifted,
}

/// A function on the grid 0, 1/m, ..., 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPath {
    m: usize,
    values: Vec<f64>,
    kind: PathKind,
}

impl GridPath {
    /// Wrap raw values, checking the invariant of the claimed kind:
    /// bridges start and end at zero, excursions are nonnegative on top.
    pub fn from_values(values: Vec<f64>, kind: PathKind) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidPath("grid needs at least 2 steps".into()));
        }
        let m = values.len() - 1;
        match kind {
            PathKind::Bridge | PathKind::Excursion => {
                if values[0] != 0.0 || values[m] != 0.0 {
                    return Err(Error::InvalidPath("endpoints must be zero".into()));
                }
                if kind == PathKind::Excursion && values.iter().any(|&x| x < 0.0) {
                    return Err(Error::InvalidPath("excursion must be nonnegative".into()));
                }
            }
            PathKind::Drifted => {}
        }
        Ok(GridPath { m, values, kind })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }
}

/// Gaussian bridge: cumulative sums of N(0, 1/m) increments minus the
/// straight line to the endpoint.
pub fn brownian_bridge<R: Rng + ?Sized>(m: usize, rng: &mut R) -> GridPath {
    assert!(m >= 2, "grid too coarse");
    let scale = (1.0 / m as f64).sqrt();
    let mut values = Vec::with_capacity(m + 1);
    let mut s = 0.0;
    values.push(0.0);
    for _ in 0..m {
        let z: f64 = rng.sample(StandardNormal);
        s += scale * z;
        values.push(s);
    }
    let last = s;
    for (j, x) in values.iter_mut().enumerate() {
        *x -= j as f64 / m as f64 * last;
    }
    values[m] = 0.0;
    GridPath {
        m,
        values,
        kind: PathKind::Bridge,
    }
}

/// Bridge proxy for the stable case: m centered offspring increments
/// conditioned to sum to -1, divided by B_m, then linearly de-trended by
/// (j/m)/B_m so the endpoint sits at zero. The perturbation is O(1/B_m).
pub fn lattice_bridge<R: Rng + ?Sized>(
    law: &OffspringLaw,
    m: usize,
    rng: &mut R,
) -> Result<GridPath> {
    assert!(m >= 2, "grid too coarse");
    let counts = sample_conditioned_counts(law, m, rng, REJECTION_CAP)?;
    let bm = law.bn(m);
    let mut values = Vec::with_capacity(m + 1);
    values.push(0.0);
    let mut s = 0i64;
    for (j, &c) in counts.iter().enumerate() {
        s += c as i64 - 1;
        values.push((s as f64 + (j + 1) as f64 / m as f64) / bm);
    }
    debug_assert_eq!(s, -1);
    debug_assert_eq!(values[m], 0.0);
    Ok(GridPath {
        m,
        values,
        kind: PathKind::Bridge,
    })
}

/// Index of the first global minimum.
pub fn argmin_index(values: &[f64]) -> usize {
    assert!(!values.is_empty());
    let mut best = 0;
    for (j, &x) in values.iter().enumerate().skip(1) {
        if x < values[best] {
            best = j;
        }
    }
    best
}

/// Rotate a bridge to start at its first global minimum and shift it up:
/// the result is a nonnegative excursion with zero endpoints.
pub fn vervaat(bridge: &GridPath) -> Result<GridPath> {
    if bridge.kind != PathKind::Bridge {
        return Err(Error::InvalidPath("rotation expects a bridge".into()));
    }
    let m = bridge.m;
    let x = &bridge.values;
    let jmin = argmin_index(x);
    let low = x[jmin];
    let mut values = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let j = jmin + i;
        let v = if j <= m { x[j] } else { x[j - m] };
        values.push(v - low);
    }
    debug_assert!(values.iter().all(|&v| v >= 0.0));
    debug_assert_eq!(values[0], 0.0);
    debug_assert_eq!(values[m], 0.0);
    Ok(GridPath {
        m,
        values,
        kind: PathKind::Excursion,
    })
}

/// Tilt an excursion down by slope t: y(j) = x(j) - t j / m.
pub fn drift(excursion: &GridPath, t: f64) -> Result<GridPath> {
    if excursion.kind != PathKind::Excursion {
        return Err(Error::InvalidPath("drift expects an excursion".into()));
    }
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let m = excursion.m;
    let values = excursion
        .values
        .iter()
        .enumerate()
        .map(|(j, &x)| x - t * j as f64 / m as f64)
        .collect();
    Ok(GridPath {
        m,
        values,
        kind: PathKind::Drifted,
    })
}

/// Masses of the intervals between strict running-minimum records of the
/// drifted excursion, in grid units over m, ranked. They sum to 1 exactly.
pub fn drift_ladder_masses(excursion: &GridPath, t: f64) -> Result<RankedMasses> {
    let y = drift(excursion, t)?;
    let gaps = record_gap_sizes(&y.values);
    RankedMasses::from_sizes(&gaps, y.m)
}

/// Cut every edge of the tree independently with probability
/// 1 - exp(-t B_n / n), the chance that an exponential clock on an edge of
/// rescaled length B_n / n has rung by time t. Returns ranked component
/// masses over n.
pub fn poisson_cut_masses<R: Rng + ?Sized>(
    tree: &PlaneTree,
    law: &OffspringLaw,
    t: f64,
    rng: &mut R,
) -> Result<RankedMasses> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let n = tree.n();
    if n == 1 {
        return RankedMasses::from_sizes(&[1], 1);
    }
    let keep = (-t * law.bn(n) / n as f64).exp();
    let weights = EdgeWeights::sample(n, rng);
    let sizes = crate::fragmentation::components_oracle(tree, &weights, keep);
    RankedMasses::from_sizes(&sizes, n)
}
