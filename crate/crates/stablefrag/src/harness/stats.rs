//! Two-sample and goodness-of-fit statistics.

use crate::error::{Error, Result};
use statrs::function::gamma::gamma_lr;

/// Sup distance between the empirical CDFs of two samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < na && j < nb {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < na && a[i] <= x {
            i += 1;
        }
        while j < nb && b[j] <= x {
            j += 1;
        }
        let gap = (i as f64 / na as f64 - j as f64 / nb as f64).abs();
        if gap > d {
            d = gap;
        }
    }
    Ok(d)
}

/// p-value of the chi-square test that a sample in [0, 1] is uniform,
/// using equal-width bins.
pub fn chi_square_uniform_p(sample: &[f64], bins: usize) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    assert!(bins >= 2, "need at least two bins");
    let mut counts = vec![0u64; bins];
    for &x in sample {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidConfig(format!("value {x} outside [0, 1]")));
        }
        let k = ((x * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let expected = sample.len() as f64 / bins as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = (bins - 1) as f64;
    Ok(1.0 - gamma_lr(df / 2.0, stat / 2.0))
}

/// Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySample);
    }
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} points",
            x.len(),
            y.len()
        )));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::InvalidConfig("degenerate sample".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}
