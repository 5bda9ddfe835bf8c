//! Two-pipeline comparison: run both sides on independent streams and
//! report per-time KS distances of the marginal mass statistics. The gate
//! is the largest-mass KS; the other two are diagnostics.

use crate::error::Result;
use crate::harness::config::ExperimentConfig;
use crate::harness::pipeline::{collect_stats, MassStats};
use crate::harness::stats::ks_two_sample;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct TimeComparison {
    pub t: f64,
    pub ks_largest: f64,
    pub ks_second: f64,
    pub ks_count: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub times: Vec<TimeComparison>,
    pub sample_size: usize,
    pub threshold: f64,
    pub pass: bool,
    pub runtime_secs: f64,
}

fn column(stats: &[MassStats], pick: fn(&MassStats) -> f64) -> Vec<f64> {
    stats.iter().map(pick).collect()
}

pub fn run_convergence(config: &ExperimentConfig) -> Result<ComparisonReport> {
    config.validate()?;
    let started = Instant::now();
    let law = config.law()?;
    let mut sides = Vec::with_capacity(2);
    for i in 0..2 {
        sides.push(collect_stats(
            config.pipelines[i],
            &law,
            config.side_size(i),
            &config.times,
            config.reps,
            config.seed,
            i as u64,
        )?);
    }
    let mut times = Vec::with_capacity(config.times.len());
    let mut pass = true;
    for (ti, &t) in config.times.iter().enumerate() {
        let (a, b) = (&sides[0][ti], &sides[1][ti]);
        let ks_largest = ks_two_sample(&column(a, |s| s.largest), &column(b, |s| s.largest))?;
        let ks_second = ks_two_sample(&column(a, |s| s.second), &column(b, |s| s.second))?;
        let ks_count =
            ks_two_sample(&column(a, |s| s.count_above), &column(b, |s| s.count_above))?;
        let ok = ks_largest < config.threshold;
        pass &= ok;
        times.push(TimeComparison {
            t,
            ks_largest,
            ks_second,
            ks_count,
            pass: ok,
        });
    }
    Ok(ComparisonReport {
        times,
        sample_size: config.reps,
        threshold: config.threshold,
        pass,
        runtime_secs: started.elapsed().as_secs_f64(),
    })
}
