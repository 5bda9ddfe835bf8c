//! A fixed 17-vertex weighted tree with hand-checked exploration orders,
//! coding walks, frontier counts and fragment masses. Used as a worked
//! example throughout the test suite and reproduced byte-for-byte by the
//! `reproduce-figure` subcommand against golden files.

use crate::fragmentation::{ladder_components, ranked_masses};
use crate::gwtree::PlaneTree;
use crate::prim::{frag_prim_path, prim_order, prim_path, EdgeWeights};

pub const EXAMPLE_N: usize = 17;
pub const EXAMPLE_THRESHOLD: f64 = 0.92;

/// Children counts in depth-first order.
pub fn example_counts() -> [u32; 17] {
    [3, 2, 0, 3, 0, 0, 0, 1, 0, 4, 0, 1, 2, 0, 0, 0, 0]
}

/// Parent-edge weights of vertices 1..=16.
pub fn example_edge_values() -> [f64; 16] {
    [
        0.70, 0.59, 0.98, 0.38, 0.12, 0.25, 0.77, 0.43, 0.93, 0.88, 0.29, 0.31, 0.62, 0.17, 0.81,
        0.55,
    ]
}

pub fn example_tree() -> PlaneTree {
    PlaneTree::from_counts(example_counts().to_vec()).expect("fixture counts form a tree")
}

pub fn example_weights() -> EdgeWeights {
    EdgeWeights::new(example_edge_values().to_vec()).expect("fixture weights are distinct")
}

/// Depth-first coding walk, n + 1 values.
pub fn expected_lex_walk() -> [i64; 18] {
    [0, 2, 3, 2, 4, 3, 2, 1, 1, 0, 3, 2, 2, 3, 2, 1, 0, -1]
}

/// Walk along the greedy minimum-weight order, all children counted.
pub fn expected_prim_walk() -> [i64; 18] {
    [0, 2, 3, 2, 2, 1, 4, 4, 5, 4, 3, 2, 1, 0, 2, 1, 0, -1]
}

/// Walk along the greedy order counting only edges with weight <= 0.92.
pub fn expected_threshold_walk() -> [i64; 18] {
    [0, 1, 1, 0, 0, -1, 2, 2, 3, 2, 1, 0, -1, -2, 0, -1, -2, -3]
}

/// Position of each depth-first vertex in the greedy exploration order.
pub fn expected_prim_ranks() -> [usize; 17] {
    [0, 1, 2, 13, 16, 14, 15, 3, 4, 5, 12, 6, 7, 10, 8, 11, 9]
}

/// Frontier sizes of the set-based forest exploration at s = 0.92,
/// n + 2 values; zeros mark component boundaries.
pub fn expected_neighborhood_counts() -> [i64; 19] {
    [0, 2, 2, 1, 1, 0, 4, 4, 5, 4, 3, 2, 1, 0, 3, 2, 1, 0, 0]
}

/// Component sizes at s = 0.92 in exploration order.
pub fn expected_component_sizes() -> [usize; 3] {
    [5, 8, 4]
}

/// Fragment masses at s = 0.92, largest first.
pub fn expected_masses() -> [f64; 3] {
    [8.0 / 17.0, 5.0 / 17.0, 4.0 / 17.0]
}

/// Vertex table: depth-first index, children count, parent and parent-edge
/// weight (blank for the root).
pub fn tree_csv() -> String {
    let tree = example_tree();
    let weights = example_weights();
    let mut out = String::from("vertex,children,parent,weight\n");
    for v in 0..tree.n() {
        match tree.parent(v) {
            Some(p) => out.push_str(&format!(
                "{},{},{},{}\n",
                v,
                tree.count(v),
                p,
                weights.weight(v)
            )),
            None => out.push_str(&format!("{},{},,\n", v, tree.count(v))),
        }
    }
    out
}

/// Greedy exploration order: rank and the vertex visited at that rank.
pub fn prim_order_csv() -> String {
    let tree = example_tree();
    let weights = example_weights();
    let order = prim_order(&tree, &weights).expect("fixture order");
    let mut out = String::from("rank,vertex\n");
    for (k, &v) in order.order.iter().enumerate() {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

/// The three coding walks side by side: depth-first, greedy, and greedy
/// thresholded at s = 0.92.
pub fn paths_csv() -> String {
    let tree = example_tree();
    let weights = example_weights();
    let lex = tree.lukasiewicz();
    let prim = prim_path(&tree, &weights).expect("fixture walk");
    let frag = frag_prim_path(&tree, &weights, EXAMPLE_THRESHOLD).expect("fixture walk");
    let mut out = String::from("k,w_lex,w_prim,w_frag\n");
    for k in 0..lex.len() {
        out.push_str(&format!("{},{},{},{}\n", k, lex[k], prim[k], frag[k]));
    }
    out
}

/// Component sizes at s = 0.92 in exploration order.
pub fn components_csv() -> String {
    let frag = frag_prim_path(&example_tree(), &example_weights(), EXAMPLE_THRESHOLD)
        .expect("fixture walk");
    let mut out = String::from("component,size\n");
    for (k, size) in ladder_components(&frag).into_iter().enumerate() {
        out.push_str(&format!("{},{}\n", k + 1, size));
    }
    out
}

/// Fragment masses at s = 0.92, largest first.
pub fn masses_csv() -> String {
    let frag = frag_prim_path(&example_tree(), &example_weights(), EXAMPLE_THRESHOLD)
        .expect("fixture walk");
    let ranked = ranked_masses(&frag).expect("fixture masses");
    let mut out = String::from("rank,size,mass\n");
    for (k, (&size, &mass)) in ranked.sizes().iter().zip(ranked.masses()).enumerate() {
        out.push_str(&format!("{},{},{}\n", k + 1, size, mass));
    }
    out
}
