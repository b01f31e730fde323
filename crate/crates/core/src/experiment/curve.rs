use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::Observable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub s_p: f64,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl CurvePoint {
    /// Distance from the mean to the interval edge facing zero, or facing
    /// down for a zero mean.
    pub fn half_width_toward_zero(&self) -> f64 {
        if self.mean > 0.0 {
            self.mean - self.ci_low
        } else if self.mean < 0.0 {
            self.ci_high - self.mean
        } else {
            (self.mean - self.ci_low).max(self.ci_high - self.mean)
        }
    }
}

/// One observable against the pause point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableCurve {
    pub graph_name: String,
    pub observable: Observable,
    pub points: Vec<CurvePoint>,
    pub embedding_id: Option<usize>,
}

impl ObservableCurve {
    /// Sorts the points by `s_p` and checks `ci_low <= mean <= ci_high`.
    pub fn new(
        graph_name: String,
        observable: Observable,
        mut points: Vec<CurvePoint>,
        embedding_id: Option<usize>,
    ) -> Result<Self> {
        points.sort_by(|a, b| a.s_p.total_cmp(&b.s_p));
        if let Some(p) = points
            .iter()
            .find(|p| !(p.ci_low <= p.mean && p.mean <= p.ci_high))
        {
            return Err(Error::invalid(format!(
                "interval [{}, {}] does not contain the mean {} at s_p = {}",
                p.ci_low, p.ci_high, p.mean, p.s_p
            )));
        }
        Ok(ObservableCurve {
            graph_name,
            observable,
            points,
            embedding_id,
        })
    }
}

/// `c1 - c2` pointwise. Each side of the interval combines the two facing
/// half-widths in quadrature, so a symmetric pair gives the usual
/// `sqrt(w1^2 + w2^2)`.
pub fn difference_curve(c1: &ObservableCurve, c2: &ObservableCurve) -> Result<ObservableCurve> {
    if c1.observable != c2.observable {
        return Err(Error::invalid(format!(
            "cannot subtract a {} curve from a {} curve",
            c2.observable, c1.observable
        )));
    }
    let same_grid = c1.points.len() == c2.points.len()
        && c1
            .points
            .iter()
            .zip(&c2.points)
            .all(|(a, b)| a.s_p == b.s_p);
    if !same_grid {
        return Err(Error::invalid(format!(
            "curves for {} and {} use different s grids",
            c1.graph_name, c2.graph_name
        )));
    }
    let points = c1
        .points
        .iter()
        .zip(&c2.points)
        .map(|(a, b)| {
            let mean = a.mean - b.mean;
            let down = (a.mean - a.ci_low).hypot(b.ci_high - b.mean);
            let up = (a.ci_high - a.mean).hypot(b.mean - b.ci_low);
            CurvePoint {
                s_p: a.s_p,
                mean,
                ci_low: mean - down,
                ci_high: mean + up,
            }
        })
        .collect();
    ObservableCurve::new(
        format!("{}-{}", c1.graph_name, c2.graph_name),
        c1.observable,
        points,
        None,
    )
}

/// CSV with columns `graph,observable,s_p,mean,ci_low,ci_high,embedding_id`.
/// Floats use the shortest representation that round-trips.
pub fn write_curves_csv<W: Write>(curves: &[ObservableCurve], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "graph",
        "observable",
        "s_p",
        "mean",
        "ci_low",
        "ci_high",
        "embedding_id",
    ])?;
    for c in curves {
        let emb = c.embedding_id.map(|e| e.to_string()).unwrap_or_default();
        for p in &c.points {
            w.write_record([
                c.graph_name.clone(),
                c.observable.to_string(),
                p.s_p.to_string(),
                p.mean.to_string(),
                p.ci_low.to_string(),
                p.ci_high.to_string(),
                emb.clone(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}
