//! Exact distribution of the conditioned tree over all shapes of a given
//! size: the probability of a tree is proportional to the product of the
//! offspring probabilities of its children counts.

use crate::error::{Error, Result};
use crate::gwtree::{enumerate_trees, PlaneTree};
use crate::offspring::OffspringLaw;

const MAX_N: usize = 8;

/// All plane trees with n vertices paired with their exact conditional
/// probabilities under the offspring law. Guarded to n <= 8.
pub fn enumerate_conditioned_trees(
    law: &OffspringLaw,
    n: usize,
) -> Result<Vec<(PlaneTree, f64)>> {
    if n == 0 || n > MAX_N {
        return Err(Error::EnumerationTooLarge { n, max: MAX_N });
    }
    let trees = enumerate_trees(n)?;
    let mut weighted: Vec<(PlaneTree, f64)> = Vec::with_capacity(trees.len());
    let mut total = 0.0;
    for tree in trees {
        let w: f64 = (0..n).map(|v| law.pmf(tree.count(v) as u64)).product();
        total += w;
        weighted.push((tree, w));
    }
    if total <= 0.0 {
        return Err(Error::ConditioningImpossible {
            law: law.tag().into(),
            n,
            period: law.period(),
        });
    }
    for (_, w) in &mut weighted {
        *w /= total;
    }
    Ok(weighted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_certain() {
        let law = OffspringLaw::poisson_one();
        let out = enumerate_conditioned_trees(&law, 1).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1, 1.0);
    }

    #[test]
    fn geometric_half_n3_is_uniform() {
        let law = OffspringLaw::geometric_half();
        let out = enumerate_conditioned_trees(&law, 3).unwrap();
        assert_eq!(out.len(), 2);
        for (_, p) in &out {
            assert!((p - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn poisson_n4_matches_hand_weights() {
        // Tree weights are e^{-4}/c! products; the shape with a 3-child
        // root carries 1/6, binary-root shapes 1/2 each relative to the
        // path shapes, giving (1/16, 3/16, 3/16, 3/16, 6/16) after
        // normalization in some order.
        let law = OffspringLaw::poisson_one();
        let out = enumerate_conditioned_trees(&law, 4).unwrap();
        assert_eq!(out.len(), 5);
        let mut probs: Vec<f64> = out.iter().map(|(_, p)| *p).collect();
        probs.sort_by(f64::total_cmp);
        let expected = [1.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0, 6.0 / 16.0];
        for (a, b) in probs.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn probabilities_normalize_for_every_law() {
        for law in [
            OffspringLaw::geometric_half(),
            OffspringLaw::poisson_one(),
            OffspringLaw::stable_tail(1.5).unwrap(),
        ] {
            for n in 1..=8 {
                let out = enumerate_conditioned_trees(&law, n).unwrap();
                let sum: f64 = out.iter().map(|(_, p)| p).sum();
                assert!((sum - 1.0).abs() < 1e-12, "{} n={n}: {sum}", law.tag());
                assert!(out.iter().all(|(_, p)| *p > 0.0));
            }
        }
        assert!(enumerate_conditioned_trees(&OffspringLaw::poisson_one(), 9).is_err());
    }

    #[test]
    fn periodic_law_with_no_tree_errors() {
        // Support {0, 2}: trees exist only for odd n.
        let law = OffspringLaw::finite_table(&[0.5, 0.0, 0.5]).unwrap();
        assert!(enumerate_conditioned_trees(&law, 4).is_err());
        let ok = enumerate_conditioned_trees(&law, 5).unwrap();
        let sum: f64 = ok.iter().map(|(_, p)| p).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
}
