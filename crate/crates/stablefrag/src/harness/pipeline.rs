//! The four mass-producing pipelines behind the CLI and the convergence
//! comparisons. Each replicate owns an RNG stream, so collection order and
//! thread count never change the output.

use crate::continuum::{brownian_bridge, drift_ladder_masses, lattice_bridge, poisson_cut_masses, vervaat};
use crate::error::Result;
use crate::fragmentation::{fragmentation_process, RankedMasses};
use crate::gwtree::sample_conditioned_gw;
use crate::harness::config::PipelineKind;
use crate::harness::rng::replicate_rng;
use crate::offspring::OffspringLaw;
use crate::prim::EdgeWeights;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// The three marginal statistics compared across pipelines.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MassStats {
    pub largest: f64,
    pub second: f64,
    pub count_above: f64,
}

impl MassStats {
    pub fn of(ranked: &RankedMasses) -> Self {
        MassStats {
            largest: ranked.largest(),
            second: ranked.second(),
            count_above: ranked.count_above(0.01) as f64,
        }
    }
}

/// One replicate of a pipeline observed at every requested time.
pub fn replicate_masses<R: Rng + ?Sized>(
    kind: PipelineKind,
    law: &OffspringLaw,
    size: usize,
    times: &[f64],
    rng: &mut R,
) -> Result<Vec<RankedMasses>> {
    match kind {
        PipelineKind::BernoulliFragment => {
            let tree = sample_conditioned_gw(law, size, rng)?;
            let weights = EdgeWeights::sample(size, rng);
            let traj = fragmentation_process(&tree, &weights, law.bn(size), times)?;
            Ok(traj.masses)
        }
        PipelineKind::PoissonCut => {
            let tree = sample_conditioned_gw(law, size, rng)?;
            times
                .iter()
                .map(|&t| poisson_cut_masses(&tree, law, t, rng))
                .collect()
        }
        PipelineKind::DriftLadder => {
            let excursion = vervaat(&lattice_bridge(law, size, rng)?)?;
            times
                .iter()
                .map(|&t| drift_ladder_masses(&excursion, t))
                .collect()
        }
        PipelineKind::BrownianExcursion => {
            let excursion = vervaat(&brownian_bridge(size, rng))?;
            times
                .iter()
                .map(|&t| drift_ladder_masses(&excursion, t))
                .collect()
        }
    }
}

/// Marginal statistics for `reps` replicates, indexed `[time][replicate]`.
/// Replicates run in parallel on the current rayon pool.
pub fn collect_stats(
    kind: PipelineKind,
    law: &OffspringLaw,
    size: usize,
    times: &[f64],
    reps: usize,
    seed: u64,
    side: u64,
) -> Result<Vec<Vec<MassStats>>> {
    let per_rep: Vec<Vec<MassStats>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replicate_rng(seed, side, rep as u64);
            let masses = replicate_masses(kind, law, size, times, &mut rng)?;
            Ok(masses.iter().map(MassStats::of).collect::<Vec<_>>())
        })
        .collect::<Result<_>>()?;
    let mut by_time = vec![Vec::with_capacity(reps); times.len()];
    for rep_stats in per_rep {
        for (ti, stat) in rep_stats.into_iter().enumerate() {
            by_time[ti].push(stat);
        }
    }
    Ok(by_time)
}
