//! The pause-and-quench protocol in simulation: sweeps over the pause point
//! `s_p`, gauge-averaged sampling, bootstrap intervals, difference curves
//! and the distinguishability verdict.
//!
//! The pause is modeled as exact thermalization of `H(s_p)` and the quench
//! as an ideal readout of the diagonal distribution.

mod curve;
mod mimic;
mod verdict;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chimera::EmbeddingMap;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quantum::{
    default_schedule, thermal_dense, thermal_stochastic, IsingInstance, Observable, ObservableSet,
    Schedule, StochasticParams, DEFAULT_BETA, DENSE_LIMIT, MAX_SPINS,
};

pub use curve::{difference_curve, write_curves_csv, CurvePoint, ObservableCurve};
pub use mimic::{
    bootstrap_ci, mimic_run, sample_observables, GaugeEstimate, MimicConfig, MimicRun,
};
pub use verdict::{
    discriminate, embedding_average, verdicts, Verdict, SEPARATION_FLOOR, SEPARATION_THRESHOLD,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exact thermal state, `n <= 14`.
    Dense,
    /// Stochastic trace estimation.
    Stochastic,
    /// Gauge-averaged sampling from the exact distribution, `n <= 14`.
    Sampled,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Method::Dense),
            "stochastic" => Ok(Method::Stochastic),
            "sampled" => Ok(Method::Sampled),
            _ => Err(Error::invalid(format!(
                "unknown method `{s}` (dense, stochastic, sampled)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub s_grid: Vec<f64>,
    /// Overrides the schedule's own inverse temperature.
    pub beta: f64,
    pub schedule: Schedule,
    pub method: Method,
    pub seed: u64,
    /// Probe settings for [`Method::Stochastic`]; the seed is derived.
    pub stochastic: StochasticParams,
    /// Sampling settings for [`Method::Sampled`]; the seed is derived.
    pub mimic: MimicConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            s_grid: default_grid(),
            beta: DEFAULT_BETA,
            schedule: default_schedule(),
            method: Method::Dense,
            seed: 0,
            stochastic: StochasticParams::default(),
            mimic: MimicConfig::default(),
        }
    }
}

/// `0, 0.1, ..., 0.9, 1`.
pub fn default_grid() -> Vec<f64> {
    (0..=10).map(|k| f64::from(k) / 10.0).collect()
}

/// `points` evenly spaced values from 0 to 1 inclusive.
pub fn uniform_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::invalid("a uniform grid needs at least two points"));
    }
    Ok((0..points)
        .map(|k| k as f64 / (points - 1) as f64)
        .collect())
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.s_grid.is_empty() {
            return Err(Error::invalid("the s grid is empty"));
        }
        if let Some(s) = self.s_grid.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::ScheduleRange(*s));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::invalid(format!(
                "beta must be finite and non-negative, got {}",
                self.beta
            )));
        }
        self.stochastic.validate()?;
        self.mimic.validate()
    }

    pub(crate) fn effective_schedule(&self) -> Result<Schedule> {
        self.schedule.clone().with_beta(self.beta)
    }

    /// Errors when the method cannot handle `n` spins.
    pub fn check_size(&self, n: usize) -> Result<()> {
        let (limit, hint) = match self.method {
            Method::Dense | Method::Sampled => (DENSE_LIMIT, "; use the stochastic method"),
            Method::Stochastic => (MAX_SPINS, ""),
        };
        if n > limit {
            return Err(Error::TooLarge {
                what: format!("{:?} sweep", self.method).to_lowercase(),
                size: n,
                limit,
                hint: hint.into(),
            });
        }
        Ok(())
    }
}

/// `J_ij -> a_i a_j J_ij`, `h_i -> a_i h_i`.
pub fn gauge_transform(inst: &IsingInstance, signs: &[i8]) -> Result<IsingInstance> {
    if signs.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n(),
            actual: signs.len(),
        });
    }
    if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(Error::invalid(format!("gauge sign {s} is not +1 or -1")));
    }
    let a = |i: usize| f64::from(signs[i]);
    let couplings = inst
        .couplings()
        .iter()
        .map(|&((i, j), w)| ((i, j), a(i) * a(j) * w))
        .collect();
    let fields = inst
        .fields()
        .iter()
        .enumerate()
        .map(|(i, h)| a(i) * h)
        .collect();
    IsingInstance::new(inst.n(), couplings, fields)
}

/// Basis-state mask of the spins a gauge flips.
pub fn gauge_mask(signs: &[i8]) -> u64 {
    signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < 0)
        .fold(0, |m, (i, _)| m | (1u64 << i))
}

/// Independent sub-seed for a labelled task.
pub(crate) fn sub_seed(seed: u64, kind: u64, a: u64, b: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((kind << 56) ^ (a << 28) ^ b);
    rng.gen()
}

/// Seed for one graph's runs. Graphs draw independent streams, as separate
/// hardware runs would. The stream depends on the name and embedding, not
/// on where the graph sits in a batch.
fn graph_seed(seed: u64, name: &str, embedding_id: Option<usize>) -> u64 {
    let digest = Sha256::digest(name.as_bytes());
    let mut word = [0u8; 8];
    word.copy_from_slice(&digest[..8]);
    let tag = embedding_id.map_or(0, |e| e as u64 + 1);
    sub_seed(seed, STREAM_GRAPH, u64::from_le_bytes(word), tag)
}

const STREAM_STOCHASTIC: u64 = 1;
const STREAM_MIMIC: u64 = 2;
const STREAM_BOOTSTRAP: u64 = 3;
const STREAM_GRAPH: u64 = 4;

/// One curve per observable over `cfg.s_grid`. Dense curves have zero
/// width, stochastic ones are `mean +- stderr` and sampled ones carry the
/// bootstrap interval over gauges.
pub fn sweep(g: &Graph, name: &str, cfg: &SweepConfig) -> Result<Vec<ObservableCurve>> {
    sweep_tagged(g, name, cfg, None)
}

pub(crate) fn sweep_tagged(
    g: &Graph,
    name: &str,
    cfg: &SweepConfig,
    embedding_id: Option<usize>,
) -> Result<Vec<ObservableCurve>> {
    Ok(sweep_runs(g, name, cfg, embedding_id)?.0)
}

/// A sampled sweep that also returns the per-gauge rows behind each point,
/// in grid order.
pub fn mimic_sweep(
    g: &Graph,
    name: &str,
    cfg: &SweepConfig,
) -> Result<(Vec<ObservableCurve>, Vec<MimicRun>)> {
    let cfg = SweepConfig {
        method: Method::Sampled,
        ..cfg.clone()
    };
    let (curves, runs) = sweep_runs(g, name, &cfg, None)?;
    Ok((curves, runs.into_iter().flatten().collect()))
}

type SweepPoint = ([CurvePoint; 4], Option<MimicRun>);

fn sweep_runs(
    g: &Graph,
    name: &str,
    cfg: &SweepConfig,
    embedding_id: Option<usize>,
) -> Result<(Vec<ObservableCurve>, Vec<Option<MimicRun>>)> {
    cfg.validate()?;
    cfg.check_size(g.n())?;
    let sched = cfg.effective_schedule()?;
    let inst = IsingInstance::from_graph(g);
    let seed = graph_seed(cfg.seed, name, embedding_id);
    let point = |(k, &s): (usize, &f64)| -> Result<SweepPoint> {
        let (set, widths, run) = match cfg.method {
            Method::Dense => (thermal_dense(&inst, s, &sched)?.observables, None, None),
            Method::Stochastic => {
                let params = StochasticParams {
                    seed: sub_seed(seed, STREAM_STOCHASTIC, k as u64, 0),
                    ..cfg.stochastic
                };
                (
                    thermal_stochastic(&inst, s, &sched, &params)?.observables,
                    None,
                    None,
                )
            }
            Method::Sampled => {
                let mimic = MimicConfig {
                    seed: sub_seed(seed, STREAM_MIMIC, k as u64, 0),
                    ..cfg.mimic
                };
                let run = mimic_run(g, s, &mimic, cfg)?;
                let mut set = ObservableSet::default();
                let mut bounds = [(0.0, 0.0); 4];
                for (o_idx, o) in Observable::ALL.into_iter().enumerate() {
                    let values: Vec<f64> = run.rows.iter().map(|r| r.observables.get(o)).collect();
                    let boot = sub_seed(seed, STREAM_BOOTSTRAP, k as u64, o_idx as u64);
                    let (mean, lo, hi) =
                        bootstrap_ci(&values, mimic.bootstrap_resamples, mimic.confidence, boot)?;
                    set.set(o, mean, 0.0);
                    bounds[o_idx] = (lo, hi);
                }
                (set, Some(bounds), Some(run))
            }
        };
        let points = std::array::from_fn(|o_idx| {
            let o = Observable::ALL[o_idx];
            let mean = set.get(o);
            let (ci_low, ci_high) = match widths {
                Some(b) => b[o_idx],
                None => (mean - set.stderr(o), mean + set.stderr(o)),
            };
            CurvePoint {
                s_p: s,
                mean,
                ci_low,
                ci_high,
            }
        });
        Ok((points, run))
    };
    let indexed: Vec<(usize, &f64)> = cfg.s_grid.iter().enumerate().collect();
    // Large stochastic states run one point at a time to bound memory.
    let (points, runs): (Vec<[CurvePoint; 4]>, Vec<Option<MimicRun>>) = if g.n() >= 20 {
        indexed
            .into_iter()
            .map(point)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    } else {
        indexed
            .into_par_iter()
            .map(point)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    };
    let curves = Observable::ALL
        .into_iter()
        .enumerate()
        .map(|(o_idx, o)| {
            ObservableCurve::new(
                name.to_string(),
                o,
                points.iter().map(|p| p[o_idx]).collect(),
                embedding_id,
            )
        })
        .collect::<Result<_>>()?;
    Ok((curves, runs))
}

/// Sweeps `g` once per embedding. Each embedding relabels the spins in
/// qubit order and gets its own seed, so stochastic and sampled estimates
/// vary across embeddings the way hardware runs do.
pub fn sweep_embeddings(
    g: &Graph,
    name: &str,
    cfg: &SweepConfig,
    embeddings: &[EmbeddingMap],
) -> Result<Vec<Vec<ObservableCurve>>> {
    embeddings
        .iter()
        .enumerate()
        .map(|(k, e)| sweep_tagged(&e.physical_graph(g)?, name, cfg, Some(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn gauge_identities() {
        let g = catalog::get("G13").unwrap();
        let inst = IsingInstance::from_graph(&g);
        let plus = vec![1i8; 13];
        assert_eq!(gauge_transform(&inst, &plus).unwrap(), inst);

        let minus = vec![-1i8; 13];
        let flipped = gauge_transform(&inst, &minus).unwrap();
        assert_eq!(flipped.couplings(), inst.couplings());
        assert!(flipped.fields().iter().all(|&h| h == -1.0));

        let mixed: Vec<i8> = (0..13).map(|i| if i % 3 == 0 { -1 } else { 1 }).collect();
        let once = gauge_transform(&inst, &mixed).unwrap();
        assert_ne!(once, inst);
        assert_eq!(gauge_transform(&once, &mixed).unwrap(), inst);
        assert_eq!(gauge_mask(&mixed), 0b1001001001001);

        assert!(gauge_transform(&inst, &[1, -1]).is_err());
        let mut bad = plus.clone();
        bad[4] = 0;
        assert!(gauge_transform(&inst, &bad).is_err());
    }

    #[test]
    fn config_checks() {
        let mut cfg = SweepConfig::default();
        assert_eq!(cfg.s_grid.len(), 11);
        assert!(cfg.validate().is_ok());
        assert!(cfg.check_size(15).is_err());
        cfg.method = Method::Stochastic;
        assert!(cfg.check_size(33).is_ok());
        cfg.s_grid = vec![];
        assert!(cfg.validate().is_err());
        cfg.s_grid = vec![0.5, 1.2];
        assert!(cfg.validate().is_err());
        assert_eq!(uniform_grid(41).unwrap()[40], 1.0);
        assert!("dense".parse::<Method>().is_ok() && "exact".parse::<Method>().is_err());
    }

    #[test]
    fn magnetization_vanishes_at_the_start_of_the_anneal() {
        let g = catalog::get("G13").unwrap();
        let cfg = SweepConfig {
            s_grid: vec![0.0, 1.0],
            ..SweepConfig::default()
        };
        let curves = sweep(&g, "G13", &cfg).unwrap();
        let m = curves
            .iter()
            .find(|c| c.observable == Observable::Magnetization)
            .unwrap();
        assert_eq!(m.points[0].mean, 0.0);
        assert!(curves.iter().all(|c| c
            .points
            .iter()
            .all(|p| p.ci_low == p.mean && p.ci_high == p.mean)));
    }

    #[test]
    fn dense_endpoint_matches_classical_enumeration() {
        let g = catalog::get("G13").unwrap();
        let inst = IsingInstance::from_graph(&g);
        let cfg = SweepConfig {
            s_grid: vec![1.0],
            ..SweepConfig::default()
        };
        let curves = sweep(&g, "G13", &cfg).unwrap();
        let (mut z, mut e) = (0.0, 0.0);
        let lo = (0..1u64 << 13)
            .map(|x| inst.energy(x))
            .fold(f64::INFINITY, f64::min);
        for x in 0..1u64 << 13 {
            let w = (-DEFAULT_BETA * (inst.energy(x) - lo)).exp();
            z += w;
            e += w * inst.energy(x);
        }
        let energy = curves
            .iter()
            .find(|c| c.observable == Observable::Energy)
            .unwrap();
        assert!((energy.points[0].mean - e / z).abs() < 1e-10 * (e / z).abs());
    }

    #[test]
    fn stochastic_curves_carry_errors() {
        let g = catalog::get("G17").unwrap();
        let cfg = SweepConfig {
            s_grid: vec![0.5],
            method: Method::Stochastic,
            stochastic: StochasticParams {
                num_probes: 8,
                krylov_dim: 40,
                ..StochasticParams::default()
            },
            seed: 3,
            ..SweepConfig::default()
        };
        let curves = sweep(&g, "G17", &cfg).unwrap();
        let q2 = curves
            .iter()
            .find(|c| c.observable == Observable::Q2)
            .unwrap();
        assert!(q2.points[0].ci_high > q2.points[0].mean);
        assert_eq!(curves, sweep(&g, "G17", &cfg).unwrap());
    }
}
