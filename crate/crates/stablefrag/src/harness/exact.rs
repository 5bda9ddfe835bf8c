//! Exact finite-n distributional identities, checked by full enumeration
//! with no Monte Carlo.
//!
//! Identity 1: the walk read along the greedy minimum-weight order has the
//! same law as the depth-first walk. Weights matter only through ranks, so
//! averaging over all rank orderings of the n - 1 edges is exact.
//!
//! Identity 2: thresholding at t along the greedy order has the same law
//! as independently thinning each depth-first increment, Binomial(c, t).
//! On the left side the kept edges are exactly the K lowest-ranked ones
//! with K Binomial(n - 1, t), independent of the rank ordering.

use crate::error::Result;
use crate::harness::enumerate::enumerate_conditioned_trees;
use crate::offspring::OffspringLaw;
use crate::prim::{prim_order, prim_path, threshold_path, EdgeWeights};
use std::collections::HashMap;

/// All orderings of 0..k by Heap's algorithm.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..n {
            rec(n - 1, a, out);
            if n.is_multiple_of(2) {
                a.swap(i, n - 1);
            } else {
                a.swap(0, n - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    rec(k, &mut a, &mut out);
    out
}

/// Edge weights realizing a rank ordering: edge e gets (rank + 1)/n.
fn weights_from_ranks(ranks: &[usize], n: usize) -> EdgeWeights {
    let w: Vec<f64> = ranks.iter().map(|&r| (r + 1) as f64 / n as f64).collect();
    EdgeWeights::new(w).expect("ranks are distinct")
}

fn add(map: &mut HashMap<Vec<i64>, f64>, key: Vec<i64>, p: f64) {
    *map.entry(key).or_insert(0.0) += p;
}

fn max_abs_diff(a: &HashMap<Vec<i64>, f64>, b: &HashMap<Vec<i64>, f64>) -> f64 {
    let mut worst = 0.0f64;
    for (key, &pa) in a {
        let pb = b.get(key).copied().unwrap_or(0.0);
        worst = worst.max((pa - pb).abs());
    }
    for (key, &pb) in b {
        if !a.contains_key(key) {
            worst = worst.max(pb);
        }
    }
    worst
}

/// Max pointwise gap between the path laws of the greedy-order walk and
/// the depth-first walk at size n. Zero up to rounding when the identity
/// holds.
pub fn path_law_distance(law: &OffspringLaw, n: usize) -> Result<f64> {
    let trees = enumerate_conditioned_trees(law, n)?;
    let perms = permutations(n - 1);
    let perm_p = 1.0 / perms.len() as f64;
    let mut depth_first = HashMap::new();
    let mut greedy = HashMap::new();
    for (tree, p) in &trees {
        add(&mut depth_first, tree.lukasiewicz(), *p);
        for ranks in &perms {
            let weights = weights_from_ranks(ranks, n);
            add(&mut greedy, prim_path(tree, &weights)?, p * perm_p);
        }
    }
    Ok(max_abs_diff(&depth_first, &greedy))
}

fn binomial_pmf(c: usize, j: usize, t: f64) -> f64 {
    let mut choose = 1.0;
    for i in 0..j {
        choose = choose * (c - i) as f64 / (i + 1) as f64;
    }
    choose * t.powi(j as i32) * (1.0 - t).powi((c - j) as i32)
}

/// Max pointwise gap between the law of the thresholded greedy walk and
/// the law of the independently thinned depth-first walk, at size n and
/// threshold t.
pub fn thinned_path_law_distance(law: &OffspringLaw, n: usize, t: f64) -> Result<f64> {
    assert!((0.0..=1.0).contains(&t));
    let trees = enumerate_conditioned_trees(law, n)?;
    let k = n - 1;
    let perms = permutations(k);
    let perm_p = 1.0 / perms.len() as f64;

    // Left side: ranks uniform, kept set = the kk lowest ranks with
    // kk ~ Binomial(n - 1, t); the threshold (kk + 1/2)/n realizes it.
    let mut lhs = HashMap::new();
    for (tree, p) in &trees {
        for ranks in &perms {
            let weights = weights_from_ranks(ranks, n);
            let order = prim_order(tree, &weights)?;
            for kk in 0..=k {
                let s = (kk as f64 + 0.5) / n as f64;
                let path = threshold_path(tree, &weights, &order, s)?;
                add(&mut lhs, path, p * perm_p * binomial_pmf(k, kk, t));
            }
        }
    }

    // Right side: thin each depth-first children count independently.
    let mut rhs = HashMap::new();
    for (tree, p) in &trees {
        let counts: Vec<usize> = (0..n).map(|v| tree.count(v) as usize).collect();
        let mut kept = vec![0usize; n];
        fn rec(
            counts: &[usize],
            kept: &mut Vec<usize>,
            v: usize,
            prob: f64,
            t: f64,
            rhs: &mut HashMap<Vec<i64>, f64>,
        ) {
            if v == counts.len() {
                let mut path = Vec::with_capacity(counts.len() + 1);
                let mut x = 0i64;
                path.push(x);
                for &kc in kept.iter() {
                    x += kc as i64 - 1;
                    path.push(x);
                }
                add(rhs, path, prob);
                return;
            }
            for j in 0..=counts[v] {
                kept[v] = j;
                rec(counts, kept, v + 1, prob * binomial_pmf(counts[v], j, t), t, rhs);
            }
        }
        rec(&counts, &mut kept, 0, *p, t, &mut rhs);
    }

    Ok(max_abs_diff(&lhs, &rhs))
}
