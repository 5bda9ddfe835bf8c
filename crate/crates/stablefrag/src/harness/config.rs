//! Experiment configuration, parsed from JSON.

use crate::error::{Error, Result};
use crate::offspring::OffspringLaw;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineKind {
    /// Conditioned tree, uniform edge weights, threshold 1 - B_n t / n.
    BernoulliFragment,
    /// Conditioned tree, each edge cut with probability 1 - exp(-B_n t / n).
    PoissonCut,
    /// Conditioned lattice bridge, rotation, drifted ladder masses.
    DriftLadder,
    /// Gaussian bridge, rotation, drifted ladder masses.
    BrownianExcursion,
}

impl PipelineKind {
    pub fn is_tree_based(self) -> bool {
        matches!(
            self,
            PipelineKind::BernoulliFragment | PipelineKind::PoissonCut
        )
    }
}

fn default_threshold() -> f64 {
    0.05
}

/// A two-sided convergence experiment. `sizes` gives each side its tree
/// size n or grid resolution m (one entry is broadcast to both sides);
/// `m`, when set, overrides the size of grid-based sides.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub law: String,
    pub pipelines: Vec<PipelineKind>,
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    pub times: Vec<f64>,
    pub reps: usize,
    pub seed: u64,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default)]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pipelines.len() != 2 {
            return Err(Error::InvalidConfig(format!(
                "expected exactly 2 pipelines, got {}",
                self.pipelines.len()
            )));
        }
        if self.sizes.is_empty() || self.sizes.len() > 2 {
            return Err(Error::InvalidConfig(
                "sizes must have one or two entries".into(),
            ));
        }
        if self.sizes.iter().chain(&self.m).any(|&s| s < 2) {
            return Err(Error::InvalidConfig("sizes must be at least 2".into()));
        }
        if self.reps == 0 {
            return Err(Error::InvalidConfig("need at least one replicate".into()));
        }
        for &t in &self.times {
            if t.is_nan() || t < 0.0 {
                return Err(Error::NegativeTime(t));
            }
        }
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::InvalidConfig("threshold must be in (0, 1]".into()));
        }
        self.law()?;
        Ok(())
    }

    pub fn law(&self) -> Result<OffspringLaw> {
        OffspringLaw::from_tag(&self.law)
    }

    /// Size for one side: grid pipelines prefer the `m` override.
    pub fn side_size(&self, side: usize) -> usize {
        let base = self.sizes[side.min(self.sizes.len() - 1)];
        if self.pipelines[side].is_tree_based() {
            base
        } else {
            self.m.unwrap_or(base)
        }
    }
}
