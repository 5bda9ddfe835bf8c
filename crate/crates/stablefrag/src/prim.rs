//! Greedy minimum-weight exploration of a weighted plane tree and the
//! coding walks it induces.
//!
//! Each non-root vertex carries the weight of the edge to its parent.
//! Starting from the root, the exploration repeatedly crosses the cheapest
//! edge on the frontier. The resulting vertex order does not change when
//! edges above a threshold are deleted, which is why one order serves all
//! thresholds: only the children counts are re-evaluated per threshold.

use crate::error::{Error, Result};
use crate::gwtree::PlaneTree;
use rand::Rng;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::BTreeSet;

/// Parent-edge weights for vertices 1..n, all distinct, in [0, 1].
#[derive(Debug, Clone)]
pub struct EdgeWeights {
    w: Vec<f64>,
}

impl EdgeWeights {
    /// weights[i] is the weight of the edge from vertex i + 1 to its parent.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights
            .iter()
            .any(|x| !x.is_finite() || !(0.0..=1.0).contains(x))
        {
            return Err(Error::InvalidConfig(
                "edge weights must lie in [0, 1]".into(),
            ));
        }
        let mut sorted = weights.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWeights);
        }
        Ok(EdgeWeights { w: weights })
    }

    /// Draw i.i.d. uniform weights for a tree with n vertices.
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let w: Vec<f64> = (1..n).map(|_| rng.gen::<f64>()).collect();
        debug_assert!(
            {
                let mut s = w.clone();
                s.sort_by(f64::total_cmp);
                s.windows(2).all(|p| p[0] != p[1])
            },
            "64-bit uniforms collided"
        );
        EdgeWeights { w }
    }

    pub fn edge_count(&self) -> usize {
        self.w.len()
    }

    /// Weight of the parent edge of vertex v >= 1.
    #[inline]
    pub fn weight(&self, v: usize) -> f64 {
        self.w[v - 1]
    }

    fn check(&self, tree: &PlaneTree) -> Result<()> {
        if self.w.len() + 1 != tree.n() {
            return Err(Error::WeightCountMismatch {
                got: self.w.len(),
                expected: tree.n() - 1,
            });
        }
        Ok(())
    }
}

/// Exploration order and its inverse: `order[k]` is the k-th vertex
/// visited, `rank[v]` the position of vertex v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimOrder {
    pub order: Vec<usize>,
    pub rank: Vec<usize>,
}

struct FrontierEdge {
    w: f64,
    v: usize,
}

impl PartialEq for FrontierEdge {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for FrontierEdge {}
impl PartialOrd for FrontierEdge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FrontierEdge {
    // Reversed so that the max-heap pops the cheapest edge first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .w
            .total_cmp(&self.w)
            .then_with(|| other.v.cmp(&self.v))
    }
}

/// Vertex order of the greedy minimum-weight exploration from the root.
pub fn prim_order(tree: &PlaneTree, weights: &EdgeWeights) -> Result<PrimOrder> {
    weights.check(tree)?;
    let n = tree.n();
    let mut order = Vec::with_capacity(n);
    let mut rank = vec![usize::MAX; n];
    let mut heap: BinaryHeap<FrontierEdge> = BinaryHeap::with_capacity(64);
    let push_children = |heap: &mut BinaryHeap<FrontierEdge>, v: usize| {
        for &c in tree.children(v) {
            heap.push(FrontierEdge {
                w: weights.weight(c),
                v: c,
            });
        }
    };
    rank[0] = 0;
    order.push(0);
    push_children(&mut heap, 0);
    while let Some(FrontierEdge { v, .. }) = heap.pop() {
        rank[v] = order.len();
        order.push(v);
        push_children(&mut heap, v);
    }
    debug_assert_eq!(order.len(), n);
    Ok(PrimOrder { order, rank })
}

/// Coding walk along the exploration order with full children counts:
/// W(0) = 0, W(k+1) = W(k) + c(v(k)) - 1.
pub fn prim_path(tree: &PlaneTree, weights: &EdgeWeights) -> Result<Vec<i64>> {
    let order = prim_order(tree, weights)?;
    threshold_path(tree, weights, &order, 1.0)
}

/// Walk along a precomputed exploration order counting only children whose
/// edge weight is at most s. At s = 1 this is the plain exploration walk.
pub fn threshold_path(
    tree: &PlaneTree,
    weights: &EdgeWeights,
    order: &PrimOrder,
    s: f64,
) -> Result<Vec<i64>> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::ThresholdOutOfRange(s));
    }
    weights.check(tree)?;
    let n = tree.n();
    let mut path = Vec::with_capacity(n + 1);
    let mut w = 0i64;
    path.push(w);
    for &v in &order.order {
        let kept = tree
            .children(v)
            .iter()
            .filter(|&&c| weights.weight(c) <= s)
            .count() as i64;
        w += kept - 1;
        path.push(w);
    }
    Ok(path)
}

/// Convenience wrapper: exploration order plus thresholded walk in one call.
pub fn frag_prim_path(tree: &PlaneTree, weights: &EdgeWeights, s: f64) -> Result<Vec<i64>> {
    let order = prim_order(tree, weights)?;
    threshold_path(tree, weights, &order, s)
}

/// Thinned walk: increment k contributes #{j <= xi(k) + 1 : U_k(j) <= t} - 1.
/// `increments[k]` must be >= -1 and `uniforms[k]` must hold exactly
/// increments[k] + 1 values.
pub fn modified_walk(increments: &[i64], uniforms: &[Vec<f64>], t: f64) -> Result<Vec<i64>> {
    if increments.len() != uniforms.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} increments vs {} uniform rows",
            increments.len(),
            uniforms.len()
        )));
    }
    let mut path = Vec::with_capacity(increments.len() + 1);
    let mut x = 0i64;
    path.push(x);
    for (k, (&xi, row)) in increments.iter().zip(uniforms).enumerate() {
        if xi < -1 {
            return Err(Error::InvalidPath(format!("increment {xi} below -1")));
        }
        if row.len() as i64 != xi + 1 {
            return Err(Error::DimensionMismatch(format!(
                "row {k}: expected {} uniforms, got {}",
                xi + 1,
                row.len()
            )));
        }
        let kept = row.iter().filter(|&&u| u <= t).count() as i64;
        x += kept - 1;
        path.push(x);
    }
    Ok(path)
}

/// Literal set-based exploration of the forest obtained by deleting edges
/// heavier than s: repeatedly visit the smallest-ranked vertex adjacent to
/// the visited set within the forest, falling back to the smallest-ranked
/// unvisited vertex when the frontier is empty. Returns the visit order,
/// the thresholded walk read along it, and the frontier-size path
/// (n + 2 values, zero exactly where components end).
///
/// Slow reference used to validate [`threshold_path`]; quadratic-ish, meant
/// for small n.
pub fn forest_exploration(
    tree: &PlaneTree,
    weights: &EdgeWeights,
    order: &PrimOrder,
    s: f64,
) -> Result<(Vec<usize>, Vec<i64>, Vec<i64>)> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::ThresholdOutOfRange(s));
    }
    weights.check(tree)?;
    let n = tree.n();
    let mut visited = vec![false; n];
    let mut frontier: BTreeSet<usize> = BTreeSet::new();
    let mut next_rank = 0usize;
    let mut v_order = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n + 2);
    let mut walk = Vec::with_capacity(n + 1);
    let mut w = 0i64;
    z.push(0);
    walk.push(0);
    for _ in 0..n {
        let v = if let Some(&r) = frontier.iter().next() {
            frontier.remove(&r);
            order.order[r]
        } else {
            while visited[order.order[next_rank]] {
                next_rank += 1;
            }
            order.order[next_rank]
        };
        visited[v] = true;
        v_order.push(v);
        let mut kept = 0i64;
        if let Some(p) = tree.parent(v) {
            if !visited[p] && weights.weight(v) <= s {
                frontier.insert(order.rank[p]);
            }
        }
        for &c in tree.children(v) {
            if weights.weight(c) <= s {
                kept += 1;
                if !visited[c] {
                    frontier.insert(order.rank[c]);
                }
            }
        }
        w += kept - 1;
        walk.push(w);
        z.push(frontier.len() as i64);
    }
    z.push(0);
    Ok((v_order, walk, z))
}
