//! End-to-end acceptance gate: exact fixtures, exact law equalities at
//! small sizes, cross-size and cross-pipeline statistical convergence,
//! structural invariants, and quadrature identities. Each test prints one
//! PASS line (visible with --nocapture); failures carry the numbers.

use stablefrag::continuum::{brownian_bridge, drift, drift_ladder_masses, lattice_bridge, vervaat};
use stablefrag::figure;
use stablefrag::fragmentation::{components_oracle, ladder_components, ranked_masses};
use stablefrag::gwtree::sample_conditioned_gw;
use stablefrag::harness::config::{ExperimentConfig, PipelineKind};
use stablefrag::harness::convergence::run_convergence;
use stablefrag::harness::exact::{path_law_distance, thinned_path_law_distance};
use stablefrag::harness::rng::replicate_rng;
use stablefrag::harness::stats::chi_square_uniform_p;
use stablefrag::intensity::{intensity_mass_moment, levy_intensity, stable_density, StableDensity};
use stablefrag::offspring::OffspringLaw;
use stablefrag::prim::{frag_prim_path, prim_path, EdgeWeights};
use rand::Rng;

const SEED: u64 = 20260814;

fn convergence_config(
    law: &str,
    pipelines: [PipelineKind; 2],
    sizes: Vec<usize>,
    times: Vec<f64>,
    reps: usize,
) -> ExperimentConfig {
    ExperimentConfig {
        law: law.into(),
        pipelines: pipelines.to_vec(),
        sizes,
        m: None,
        times,
        reps,
        seed: SEED,
        threshold: 0.05,
        out: None,
    }
}

#[test]
fn a01_worked_example_walks_and_masses_match_goldens() {
    let tree = figure::example_tree();
    let weights = figure::example_weights();
    assert_eq!(tree.lukasiewicz(), figure::expected_lex_walk());
    assert_eq!(prim_path(&tree, &weights).unwrap(), figure::expected_prim_walk());
    let frag = frag_prim_path(&tree, &weights, figure::EXAMPLE_THRESHOLD).unwrap();
    assert_eq!(frag, figure::expected_threshold_walk());
    let ranked = ranked_masses(&frag).unwrap();
    assert_eq!(ranked.masses(), figure::expected_masses());
    let goldens = [
        ("figure_tree.csv", include_str!("golden/figure_tree.csv"), figure::tree_csv()),
        (
            "figure_prim_order.csv",
            include_str!("golden/figure_prim_order.csv"),
            figure::prim_order_csv(),
        ),
        ("figure_paths.csv", include_str!("golden/figure_paths.csv"), figure::paths_csv()),
        (
            "figure_components.csv",
            include_str!("golden/figure_components.csv"),
            figure::components_csv(),
        ),
        ("figure_masses.csv", include_str!("golden/figure_masses.csv"), figure::masses_csv()),
    ];
    for (name, golden, produced) in goldens {
        assert_eq!(produced, golden, "{name} drifted from golden bytes");
    }
    println!("PASS worked example: walks, masses, and 5 golden tables byte-exact");
}

#[test]
fn a02_ladder_components_equal_union_find_on_random_instances() {
    let laws = [
        OffspringLaw::geometric_half(),
        OffspringLaw::poisson_one(),
        OffspringLaw::stable_tail(1.5).unwrap(),
        OffspringLaw::stable_tail(1.2).unwrap(),
    ];
    let mut checked = 0usize;
    for rep in 0..1000u64 {
        let mut rng = replicate_rng(SEED, 2, rep);
        let law = &laws[rep as usize % laws.len()];
        let n = rng.gen_range(2..=200);
        let tree = sample_conditioned_gw(law, n, &mut rng).unwrap();
        let weights = EdgeWeights::sample(n, &mut rng);
        let s: f64 = rng.gen();
        let path = frag_prim_path(&tree, &weights, s).unwrap();
        let mut from_ladder = ladder_components(&path);
        let mut from_union_find = components_oracle(&tree, &weights, s);
        from_ladder.sort_unstable();
        from_union_find.sort_unstable();
        assert_eq!(
            from_ladder, from_union_find,
            "component multisets differ (law {}, n {n}, s {s})",
            law.tag()
        );
        checked += 1;
    }
    println!("PASS component extraction: {checked} random instances, ladder == union-find");
}

#[test]
fn a03_greedy_walk_law_equals_depth_first_walk_law() {
    let law = OffspringLaw::geometric_half();
    for n in [3, 4, 5] {
        let dist = path_law_distance(&law, n).unwrap();
        assert!(dist < 1e-12, "n {n}: path-law distance {dist}");
    }
    println!("PASS walk laws: greedy order matches depth-first order to 1e-12 for n in 3..=5");
}

#[test]
fn a04_thinned_walk_law_equals_binomial_modified_walk() {
    let law = OffspringLaw::geometric_half();
    for n in [3, 4] {
        let dist = thinned_path_law_distance(&law, n, 0.5).unwrap();
        assert!(dist < 1e-12, "n {n}: thinned path-law distance {dist}");
    }
    println!("PASS thinned walk laws: edge deletion matches binomial thinning to 1e-12");
}

// Known red at these sizes for the heavy-tailed law: the edge-deletion
// probability t B_n / n decays like n^(-1/3) at tail index 1.5, so the
// pre-asymptotic gap between n=1000 and n=8000 at t >= 1 (KS 0.06-0.10)
// systematically exceeds the 0.05 gate, while adjacent sizes (4000 vs
// 8000: KS 0.023/0.042) and the finite-variance law (max KS 0.033) sit
// under it. The sizes and gate are kept as stated rather than tuned.
#[test]
fn a05_largest_mass_law_stabilizes_across_sizes() {
    let mut failures = Vec::new();
    for law in ["geometric-half", "stable-tail:1.5"] {
        let config = convergence_config(
            law,
            [PipelineKind::BernoulliFragment, PipelineKind::BernoulliFragment],
            vec![1000, 8000],
            vec![0.5, 1.0, 2.0],
            5000,
        );
        let report = run_convergence(&config).unwrap();
        let summary: Vec<String> = report
            .times
            .iter()
            .map(|tc| format!("t={} ks={:.4}", tc.t, tc.ks_largest))
            .collect();
        println!(
            "{} size stability {law}: n 1000 vs 8000, {}",
            if report.pass { "PASS" } else { "FAIL" },
            summary.join(", ")
        );
        for tc in &report.times {
            if !tc.pass {
                failures.push(format!("{law} t={}: ks={:.4}", tc.t, tc.ks_largest));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "largest-mass KS gate (0.05, 5000 reps) exceeded: {}",
        failures.join("; ")
    );
}

#[test]
fn a06_tree_fragmentation_matches_brownian_excursion_ladder() {
    let config = convergence_config(
        "geometric-half",
        [PipelineKind::BernoulliFragment, PipelineKind::BrownianExcursion],
        vec![8192],
        vec![1.0],
        5000,
    );
    let report = run_convergence(&config).unwrap();
    assert!(
        report.pass,
        "tree vs excursion KS {:?}",
        report.times.iter().map(|tc| tc.ks_largest).collect::<Vec<_>>()
    );
    println!(
        "PASS continuum coupling: tree n=8192 vs excursion m=8192, ks={:.4}",
        report.times[0].ks_largest
    );
}

#[test]
fn a07_exponential_cuts_match_bernoulli_deletion() {
    let config = convergence_config(
        "geometric-half",
        [PipelineKind::PoissonCut, PipelineKind::BernoulliFragment],
        vec![4096],
        vec![0.5, 1.0],
        5000,
    );
    let report = run_convergence(&config).unwrap();
    for tc in &report.times {
        assert!(tc.pass, "t {}: cut vs deletion KS {}", tc.t, tc.ks_largest);
    }
    let summary: Vec<String> = report
        .times
        .iter()
        .map(|tc| format!("t={} ks={:.4}", tc.t, tc.ks_largest))
        .collect();
    println!("PASS cut coupling: n=4096, {}", summary.join(", "));
}

#[test]
fn a08_ladder_epochs_nest_in_time_and_masses_conserve() {
    use stablefrag::fragmentation::strict_record_epochs;
    let times = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
    let geometric = OffspringLaw::geometric_half();
    let stable = OffspringLaw::stable_tail(1.5).unwrap();
    let mut paths_checked = 0usize;
    for rep in 0..40u64 {
        let mut rng = replicate_rng(SEED, 3, rep);
        let m = 1024;
        let excursions = [
            vervaat(&brownian_bridge(m, &mut rng)).unwrap(),
            vervaat(&lattice_bridge(&geometric, m, &mut rng).unwrap()).unwrap(),
            vervaat(&lattice_bridge(&stable, m, &mut rng).unwrap()).unwrap(),
        ];
        for excursion in &excursions {
            let mut previous: Option<Vec<usize>> = None;
            for &t in &times {
                let drifted = drift(excursion, t).unwrap();
                let epochs = strict_record_epochs(drifted.values());
                if let Some(earlier) = &previous {
                    let later: std::collections::HashSet<usize> =
                        epochs.iter().copied().collect();
                    for e in earlier {
                        assert!(later.contains(e), "epoch {e} lost between drift times");
                    }
                }
                previous = Some(epochs);
                let masses = drift_ladder_masses(excursion, t).unwrap();
                assert_eq!(
                    masses.sizes().iter().sum::<usize>(),
                    masses.total(),
                    "fragment sizes must add up to the whole path"
                );
                assert!((masses.masses().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
            paths_checked += 1;
        }
    }
    println!("PASS ladder structure: {paths_checked} drifted paths, epochs nest, sizes conserve");
}

#[test]
fn a09_density_and_intensity_identities_hold() {
    for alpha in [1.2, 1.5, 1.8, 2.0] {
        let d = StableDensity::new(alpha).unwrap();
        let total = d.normalization().unwrap();
        assert!((total - 1.0).abs() < 1e-6, "alpha {alpha}: mass {total}");
    }
    let d = StableDensity::new(1.5).unwrap();
    let left = d.left_mass().unwrap();
    assert!((left - 1.0 / 1.5).abs() < 1e-5, "left mass {left}");
    for alpha in [1.5, 2.0] {
        for t in [0.5, 1.0, 2.0] {
            let moment = intensity_mass_moment(alpha, t).unwrap();
            let target = 1.0 / ((alpha - 1.0) * t);
            assert!(
                (moment - target).abs() < 1e-4,
                "alpha {alpha} t {t}: moment {moment} vs {target}"
            );
        }
    }
    // Quadrature against closed forms at the Gaussian end.
    let inv_sqrt_2pi = 0.3989422804014327f64;
    let d0 = stable_density(2.0, 1.0, 0.0).unwrap();
    assert!((d0 - inv_sqrt_2pi).abs() < 1e-12);
    let d1 = stable_density(2.0, 1.0, 1.0).unwrap();
    assert!((d1 - inv_sqrt_2pi * (-0.5f64).exp()).abs() < 1e-12);
    for (t, z) in [(0.5f64, 0.7f64), (1.0, 1.3), (2.0, 0.2)] {
        let got = levy_intensity(2.0, t, z).unwrap();
        let want = inv_sqrt_2pi * z.powf(-1.5) * (-t * t * z / 2.0).exp();
        assert!((got - want).abs() < 1e-12, "t {t} z {z}: {got} vs {want}");
    }
    println!("PASS intensity identities: mass, left tail, first moment, gaussian closed forms");
}

#[test]
fn a10_bridge_argmin_location_is_uniform() {
    let m = 2048;
    let reps = 10_000u64;
    let bins = 20;
    let mut locations = Vec::with_capacity(reps as usize);
    for rep in 0..reps {
        let mut rng = replicate_rng(SEED, 4, rep);
        let bridge = brownian_bridge(m, &mut rng);
        let jmin = stablefrag::continuum::argmin_index(bridge.values());
        locations.push(jmin as f64 / m as f64);
    }
    let p = chi_square_uniform_p(&locations, bins).unwrap();
    assert!(p > 0.001, "argmin uniformity p-value {p}");
    println!("PASS bridge argmin uniform: chi-square p={p:.4} over {bins} bins");
}
