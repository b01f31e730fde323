//! Gauge-averaged sampling from the exact measurement distribution.
//!
//! A gauge `a` flips the spins where `a_i = -1`. The flip `U = prod X_i`
//! over those spins commutes with the driver and maps `H_p(J, h)` to
//! `H_p(a J a, a h)`, so the gauged instance measures `p_a(x) = p(x ^ mask)`
//! and one thermal state serves every gauge.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gauge_mask, SweepConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quantum::{
    observables_for_instance, thermal_dense, CorrelationMatrix, IsingInstance, ObservableSet,
    DENSE_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MimicConfig {
    pub num_gauges: usize,
    pub anneals_per_gauge: usize,
    pub bootstrap_resamples: usize,
    pub confidence: f64,
    pub seed: u64,
}

impl Default for MimicConfig {
    fn default() -> Self {
        MimicConfig {
            num_gauges: 200,
            anneals_per_gauge: 1000,
            bootstrap_resamples: 1000,
            confidence: 0.95,
            seed: 0,
        }
    }
}

impl MimicConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_gauges == 0 || self.anneals_per_gauge == 0 || self.bootstrap_resamples == 0 {
            return Err(Error::invalid(
                "gauges, anneals and bootstrap resamples must be positive",
            ));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::invalid(format!(
                "confidence {} is outside (0, 1)",
                self.confidence
            )));
        }
        Ok(())
    }
}

/// Observables estimated from one gauge's de-gauged samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeEstimate {
    pub gauge: usize,
    pub signs: Vec<i8>,
    pub observables: ObservableSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MimicRun {
    pub s_p: f64,
    pub rows: Vec<GaugeEstimate>,
}

/// Samples `anneals_per_gauge` readouts under each of `num_gauges` random
/// gauges at `s_p`, undoes the gauge on every sample and estimates the four
/// observables per gauge. Rows depend only on `cfg.seed`.
pub fn mimic_run(g: &Graph, s_p: f64, cfg: &MimicConfig, sweep: &SweepConfig) -> Result<MimicRun> {
    cfg.validate()?;
    let n = g.n();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            what: "sampled run".into(),
            size: n,
            limit: DENSE_LIMIT,
            hint: "; use a dense or stochastic sweep".into(),
        });
    }
    let inst = IsingInstance::from_graph(g);
    let p = thermal_dense(&inst, s_p, &sweep.effective_schedule()?)?.distribution;
    let rows = (0..cfg.num_gauges)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k as u64);
            let signs: Vec<i8> = (0..n)
                .map(|_| if rng.gen::<bool>() { -1 } else { 1 })
                .collect();
            let mask = gauge_mask(&signs);
            let p_gauged: Vec<f64> = (0..p.len() as u64)
                .map(|x| p[(x ^ mask) as usize])
                .collect();
            let dist = WeightedIndex::new(&p_gauged)
                .map_err(|e| Error::invalid(format!("distribution: {e}")))?;
            let samples: Vec<u64> = (0..cfg.anneals_per_gauge)
                .map(|_| dist.sample(&mut rng) as u64 ^ mask)
                .collect();
            Ok(GaugeEstimate {
                gauge: k,
                signs,
                observables: sample_observables(&inst, &samples)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MimicRun { s_p, rows })
}

/// Observables from basis-state samples (bit set means spin down).
///
/// `q2` squares sample correlations, and `c^2` from `S` samples is biased up
/// by `(1 - c^2) / S`. Each pair uses the unbiased `(S c^2 - 1) / (S - 1)`
/// instead, and the sum is clamped at zero before the square root.
pub fn sample_observables(inst: &IsingInstance, samples: &[u64]) -> Result<ObservableSet> {
    let n = inst.n();
    let count = samples.len();
    if count < 2 {
        return Err(Error::invalid("at least two samples are needed"));
    }
    let mut singles = vec![0i64; n];
    let mut pairs = vec![0i64; n * n.saturating_sub(1) / 2];
    let mut spins = vec![0i64; n];
    for &x in samples {
        for (i, z) in spins.iter_mut().enumerate() {
            *z = if x >> i & 1 == 1 { -1 } else { 1 };
        }
        let mut k = 0;
        for i in 0..n {
            singles[i] += spins[i];
            for j in i + 1..n {
                pairs[k] += spins[i] * spins[j];
                k += 1;
            }
        }
    }
    let total = count as f64;
    let mut values = vec![0.0; n * n];
    let mut k = 0;
    let mut q2_sum = 0.0;
    for i in 0..n {
        values[i * n + i] = 1.0;
        for j in i + 1..n {
            let c = pairs[k] as f64 / total;
            values[i * n + j] = c;
            values[j * n + i] = c;
            q2_sum += 2.0 * (total * c * c - 1.0) / (total - 1.0);
            k += 1;
        }
    }
    let m = singles.iter().map(|&s| s as f64 / total).collect();
    let c = CorrelationMatrix::new(n, values, m)?;
    let mut set = observables_for_instance(&c, inst)?;
    set.q2 = if n < 2 {
        0.0
    } else {
        (q2_sum / (n * (n - 1)) as f64).max(0.0).sqrt()
    };
    Ok(set)
}

/// Percentile bootstrap of the mean: `(mean, ci_low, ci_high)`. The bounds
/// interpolate linearly between order statistics and are widened to contain
/// the mean if needed.
pub fn bootstrap_ci(
    values: &[f64],
    resamples: usize,
    confidence: f64,
    seed: u64,
) -> Result<(f64, f64, f64)> {
    let n = values.len();
    if n < 2 {
        return Err(Error::invalid("the bootstrap needs at least two values"));
    }
    if resamples == 0 {
        return Err(Error::invalid("the bootstrap needs at least one resample"));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::invalid(format!(
            "confidence {confidence} is outside (0, 1)"
        )));
    }
    // Shifted sums keep the mean of a constant sequence exact.
    let base = values[0];
    let mean_of = |sum: f64| base + sum / n as f64;
    let mean = mean_of(values.iter().map(|v| v - base).sum());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means: Vec<f64> = (0..resamples)
        .map(|_| mean_of((0..n).map(|_| values[rng.gen_range(0..n)] - base).sum()))
        .collect();
    means.sort_by(f64::total_cmp);
    let quantile = |q: f64| {
        let pos = q * (resamples - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        means[lo] + (pos - lo as f64) * (means[hi] - means[lo])
    };
    let tail = (1.0 - confidence) / 2.0;
    Ok((
        mean,
        quantile(tail).min(mean),
        quantile(1.0 - tail).max(mean),
    ))
}
