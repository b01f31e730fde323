use serde::{Deserialize, Serialize};

use super::{difference_curve, sweep, sweep_embeddings, CurvePoint, ObservableCurve, SweepConfig};
use crate::chimera::EmbeddingMap;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quantum::Observable;

/// A pair is distinguishable when some difference is at least this many
/// combined half-widths away from zero.
pub const SEPARATION_THRESHOLD: f64 = 5.0;

/// Smallest half-width a separation is divided by, so that exact (dense)
/// curves compare rounding noise against a fixed scale.
pub const SEPARATION_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pair: (String, String),
    pub distinguishable: bool,
    pub best_sp: f64,
    pub best_observable: Observable,
    /// `|mean difference| / combined half-width` at the best point.
    pub separation: f64,
}

/// Sweeps every graph (averaging over its embeddings when given) and
/// compares all pairs on all four observables.
pub fn discriminate(
    gs: &[(String, Graph)],
    cfg: &SweepConfig,
    embeddings: Option<&[Vec<EmbeddingMap>]>,
) -> Result<Vec<Verdict>> {
    if gs.len() < 2 {
        return Err(Error::invalid("discrimination needs at least two graphs"));
    }
    if let Some(e) = embeddings {
        if e.len() != gs.len() {
            return Err(Error::DimensionMismatch {
                expected: gs.len(),
                actual: e.len(),
            });
        }
    }
    let mut named = Vec::with_capacity(gs.len());
    for (k, (name, g)) in gs.iter().enumerate() {
        let curves = match embeddings {
            Some(e) if !e[k].is_empty() => {
                embedding_average(&sweep_embeddings(g, name, cfg, &e[k])?)?
            }
            _ => sweep(g, name, cfg)?,
        };
        named.push(curves);
    }
    verdicts(&named)
}

/// Verdicts for every pair of curve sets, in input order. Each set holds
/// one curve per observable for one graph.
pub fn verdicts(sets: &[Vec<ObservableCurve>]) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            out.push(verdict(&sets[a], &sets[b])?);
        }
    }
    Ok(out)
}

fn graph_name(set: &[ObservableCurve]) -> Result<String> {
    set.first()
        .map(|c| c.graph_name.clone())
        .ok_or_else(|| Error::invalid("empty curve set"))
}

fn verdict(a: &[ObservableCurve], b: &[ObservableCurve]) -> Result<Verdict> {
    let mut best: Option<(f64, f64, Observable)> = None;
    for ca in a {
        let cb = b
            .iter()
            .find(|c| c.observable == ca.observable)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "no {} curve for {}",
                    ca.observable, b[0].graph_name
                ))
            })?;
        let diff = difference_curve(ca, cb)?;
        for p in &diff.points {
            let sep = p.mean.abs() / p.half_width_toward_zero().max(SEPARATION_FLOOR);
            if best.is_none_or(|(s, _, _)| sep > s) {
                best = Some((sep, p.s_p, ca.observable));
            }
        }
    }
    let (separation, best_sp, best_observable) =
        best.ok_or_else(|| Error::invalid("no points to compare"))?;
    Ok(Verdict {
        pair: (graph_name(a)?, graph_name(b)?),
        distinguishable: separation >= SEPARATION_THRESHOLD,
        best_sp,
        best_observable,
        separation,
    })
}

/// Mean over embeddings with the standard error of that mean as a
/// symmetric interval. A single embedding keeps its own interval.
pub fn embedding_average(per_embedding: &[Vec<ObservableCurve>]) -> Result<Vec<ObservableCurve>> {
    let first = per_embedding
        .first()
        .ok_or_else(|| Error::invalid("no embeddings to average"))?;
    let k = per_embedding.len();
    first
        .iter()
        .enumerate()
        .map(|(o_idx, c0)| {
            let curves: Vec<&ObservableCurve> =
                per_embedding.iter().map(|set| &set[o_idx]).collect();
            if curves
                .iter()
                .any(|c| c.observable != c0.observable || c.points.len() != c0.points.len())
            {
                return Err(Error::invalid("embedding curves do not line up"));
            }
            let points = (0..c0.points.len())
                .map(|i| {
                    if k == 1 {
                        return c0.points[i];
                    }
                    let values: Vec<f64> = curves.iter().map(|c| c.points[i].mean).collect();
                    let mean = values.iter().sum::<f64>() / k as f64;
                    let var =
                        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
                    let sem = (var / k as f64).sqrt();
                    CurvePoint {
                        s_p: c0.points[i].s_p,
                        mean,
                        ci_low: mean - sem,
                        ci_high: mean + sem,
                    }
                })
                .collect();
            ObservableCurve::new(c0.graph_name.clone(), c0.observable, points, None)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn flat(name: &str, o: Observable, values: &[(f64, f64)]) -> ObservableCurve {
        let points = values
            .iter()
            .enumerate()
            .map(|(k, &(m, w))| CurvePoint {
                s_p: k as f64,
                mean: m,
                ci_low: m - w,
                ci_high: m + w,
            })
            .collect();
        ObservableCurve::new(name.into(), o, points, None).unwrap()
    }

    fn set(name: &str, energy: &[(f64, f64)]) -> Vec<ObservableCurve> {
        Observable::ALL
            .into_iter()
            .map(|o| {
                if o == Observable::Energy {
                    flat(name, o, energy)
                } else {
                    flat(name, o, &vec![(0.0, 0.1); energy.len()])
                }
            })
            .collect()
    }

    #[test]
    fn verdict_picks_the_largest_separation() {
        let a = set("a", &[(0.0, 0.1), (1.0, 0.1), (2.0, 0.1)]);
        let b = set("b", &[(0.0, 0.1), (0.0, 0.1), (1.5, 0.1)]);
        let v = &verdicts(&[a.clone(), b]).unwrap()[0];
        assert_eq!(v.pair, ("a".to_string(), "b".to_string()));
        assert!(v.distinguishable);
        assert_eq!((v.best_sp, v.best_observable), (1.0, Observable::Energy));
        assert!((v.separation - 1.0 / 0.1f64.hypot(0.1)).abs() < 1e-12);

        let same = &verdicts(&[a.clone(), a]).unwrap()[0];
        assert!(!same.distinguishable);
        assert_eq!(same.separation, 0.0);
    }

    #[test]
    fn embedding_average_uses_the_standard_error() {
        let e: Vec<Vec<ObservableCurve>> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&m| set("g", &[(m, 0.0)]))
            .collect();
        let avg = embedding_average(&e).unwrap();
        let p = avg[0].points[0];
        assert_eq!(p.mean, 2.0);
        assert!((p.ci_high - p.mean - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(avg[0].embedding_id, None);
    }

    #[test]
    fn dense_discrimination_of_g13() {
        let cfg = SweepConfig {
            s_grid: vec![0.0, 0.5, 1.0],
            ..SweepConfig::default()
        };
        let gs: Vec<(String, Graph)> = ["G13", "G13p", "G13i"]
            .iter()
            .map(|n| (n.to_string(), catalog::resolve(n, 1).unwrap()))
            .collect();
        let v = discriminate(&gs, &cfg, None).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v[0].distinguishable, "{:?}", v[0]);
        assert!(!v[1].distinguishable, "{:?}", v[1]);
        assert!(v[2].distinguishable);
        assert!(discriminate(&gs[..1], &cfg, None).is_err());

        // Equal classical spectra pin the energy difference to zero at both
        // ends, leaving the middle of the anneal as the only separation.
        let energy: Vec<Vec<ObservableCurve>> = gs[..2]
            .iter()
            .map(|(n, g)| {
                sweep(g, n, &cfg)
                    .unwrap()
                    .into_iter()
                    .filter(|c| c.observable == Observable::Energy)
                    .collect()
            })
            .collect();
        let ve = &verdicts(&energy).unwrap()[0];
        assert_eq!(ve.best_sp, 0.5);
        assert!(ve.distinguishable, "{ve:?}");
    }
}
