//! The four diagonal observables and the correlations they are built from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IsingInstance;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Thermal averages with one standard error each. Exact computations
/// report zero errors.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ObservableSet {
    pub energy: f64,
    pub magnetization: f64,
    pub q2: f64,
    pub omega2: f64,
    pub energy_stderr: f64,
    pub magnetization_stderr: f64,
    pub q2_stderr: f64,
    pub omega2_stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    Energy,
    Magnetization,
    Q2,
    Omega2,
}

impl Observable {
    pub const ALL: [Observable; 4] = [
        Observable::Energy,
        Observable::Magnetization,
        Observable::Q2,
        Observable::Omega2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::Energy => "energy",
            Observable::Magnetization => "magnetization",
            Observable::Q2 => "q2",
            Observable::Omega2 => "omega2",
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown observable `{s}` (energy, magnetization, q2, omega2)"
                ))
            })
    }
}

impl ObservableSet {
    pub fn get(&self, o: Observable) -> f64 {
        match o {
            Observable::Energy => self.energy,
            Observable::Magnetization => self.magnetization,
            Observable::Q2 => self.q2,
            Observable::Omega2 => self.omega2,
        }
    }

    pub fn stderr(&self, o: Observable) -> f64 {
        match o {
            Observable::Energy => self.energy_stderr,
            Observable::Magnetization => self.magnetization_stderr,
            Observable::Q2 => self.q2_stderr,
            Observable::Omega2 => self.omega2_stderr,
        }
    }

    pub fn set(&mut self, o: Observable, value: f64, stderr: f64) {
        let (v, e) = match o {
            Observable::Energy => (&mut self.energy, &mut self.energy_stderr),
            Observable::Magnetization => (&mut self.magnetization, &mut self.magnetization_stderr),
            Observable::Q2 => (&mut self.q2, &mut self.q2_stderr),
            Observable::Omega2 => (&mut self.omega2, &mut self.omega2_stderr),
        };
        *v = value;
        *e = stderr;
    }
}

/// `<Z_i Z_j>` (unit diagonal) and `<Z_i>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    n: usize,
    values: Vec<f64>,
    singles: Vec<f64>,
}

impl CorrelationMatrix {
    /// `values` is row-major `n x n`; it must be symmetric with unit
    /// diagonal and entries in `[-1, 1]` (up to rounding).
    pub fn new(n: usize, values: Vec<f64>, singles: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: values.len(),
            });
        }
        if singles.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: singles.len(),
            });
        }
        const SLACK: f64 = 1e-9;
        for i in 0..n {
            if (values[i * n + i] - 1.0).abs() > SLACK {
                return Err(Error::invalid(format!(
                    "correlation diagonal at {i} is not 1"
                )));
            }
            for j in 0..n {
                let c = values[i * n + j];
                if (c - values[j * n + i]).abs() > SLACK || c.abs() > 1.0 + SLACK {
                    return Err(Error::invalid(format!(
                        "correlation ({i}, {j}) = {c} is not valid"
                    )));
                }
            }
        }
        Ok(CorrelationMatrix { n, values, singles })
    }

    /// Uncorrelated, unmagnetized spins.
    pub fn identity(n: usize) -> Self {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
        }
        CorrelationMatrix {
            n,
            values,
            singles: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn singles(&self) -> &[f64] {
        &self.singles
    }

    /// Correlations in the frame flipped by `signs`: `c_ij -> a_i a_j c_ij`,
    /// `m_i -> a_i m_i`. Applying the same signs twice is the identity.
    pub fn gauged(&self, signs: &[i8]) -> Result<Self> {
        if signs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: signs.len(),
            });
        }
        let n = self.n;
        let a: Vec<f64> = signs.iter().map(|&s| f64::from(s)).collect();
        let values = (0..n * n)
            .map(|k| a[k / n] * a[k % n] * self.values[k])
            .collect();
        let singles = self.singles.iter().zip(&a).map(|(m, s)| m * s).collect();
        Ok(CorrelationMatrix { n, values, singles })
    }
}

/// Correlations of a distribution over basis states, normalized by its
/// total, via an in-place Walsh-Hadamard transform: the coefficient at a
/// mask with bits `i` and `j` is `<Z_i Z_j>`.
pub fn correlations_from_distribution(p: &[f64], n: usize) -> Result<CorrelationMatrix> {
    if p.len() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            actual: p.len(),
        });
    }
    let mut w = p.to_vec();
    walsh_hadamard(&mut w);
    let (singles, pairs) = low_order_coefficients(&w, n);
    Ok(from_moments(n, &singles, &pairs))
}

/// In-place unnormalized Walsh-Hadamard transform.
pub(crate) fn walsh_hadamard(w: &mut [f64]) {
    let mut h = 1;
    while h < w.len() {
        for block in w.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// From transformed weights: `singles[i] = W[2^i] / W[0]` and, in row
/// order over `i < j`, `pairs = W[2^i + 2^j] / W[0]`.
pub(crate) fn low_order_coefficients(w: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let total = w[0];
    let singles = (0..n).map(|i| w[1 << i] / total).collect();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(w[(1 << i) | (1 << j)] / total);
        }
    }
    (singles, pairs)
}

/// Rebuilds a matrix from singles and upper-triangle pairs, clamping
/// rounding excursions outside `[-1, 1]`.
pub(crate) fn from_moments(n: usize, singles: &[f64], pairs: &[f64]) -> CorrelationMatrix {
    let mut values = vec![0.0; n * n];
    let mut k = 0;
    for i in 0..n {
        values[i * n + i] = 1.0;
        for j in i + 1..n {
            let c = pairs[k].clamp(-1.0, 1.0);
            values[i * n + j] = c;
            values[j * n + i] = c;
            k += 1;
        }
    }
    CorrelationMatrix {
        n,
        values,
        singles: singles.iter().map(|m| m.clamp(-1.0, 1.0)).collect(),
    }
}

/// Observables of the unit-coupling, unit-field problem on `g`.
pub fn observables_from_correlations(c: &CorrelationMatrix, g: &Graph) -> Result<ObservableSet> {
    observables_for_instance(c, &IsingInstance::from_graph(g))
}

/// Observables with the energy measured under the instance's own couplings
/// and fields. `omega2` uses the squared adjacency of the coupling graph
/// over all ordered pairs, diagonal included.
pub fn observables_for_instance(
    c: &CorrelationMatrix,
    inst: &IsingInstance,
) -> Result<ObservableSet> {
    let n = inst.n();
    if c.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: c.n,
        });
    }
    let magnetization: f64 = c.singles.iter().sum();
    let energy = inst
        .couplings()
        .iter()
        .map(|&((i, j), w)| w * c.get(i, j))
        .sum::<f64>()
        + inst
            .fields()
            .iter()
            .zip(&c.singles)
            .map(|(h, m)| h * m)
            .sum::<f64>();
    let q2 = if n < 2 {
        0.0
    } else {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sum += c.get(i, j).powi(2);
                }
            }
        }
        (sum / (n * (n - 1)) as f64).sqrt()
    };
    let a2 = inst.graph().adjacency_power(2)?;
    let mut omega2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = a2[(i, j)];
            if w != 0 {
                omega2 += w as f64 * c.get(i, j);
            }
        }
    }
    Ok(ObservableSet {
        energy,
        magnetization,
        q2,
        omega2,
        ..ObservableSet::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncorrelated_spins() {
        let g = Graph::path(5).unwrap();
        let o = observables_from_correlations(&CorrelationMatrix::identity(5), &g).unwrap();
        assert_eq!(o.q2, 0.0);
        assert_eq!(o.magnetization, 0.0);
        assert_eq!(o.energy, 0.0);
        // Only the diagonal of A^2 survives: sum of degrees.
        assert_eq!(o.omega2, 8.0);
    }

    #[test]
    fn saturated_ferromagnet() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let c = CorrelationMatrix::new(4, vec![1.0; 16], vec![1.0; 4]).unwrap();
        let o = observables_from_correlations(&c, &g).unwrap();
        assert_eq!(o.q2, 1.0);
        assert_eq!(o.magnetization, 4.0);
        assert_eq!(o.energy, 9.0);
        let a2 = g.adjacency_power(2).unwrap();
        assert_eq!(o.omega2, a2.iter().sum::<i64>() as f64);
    }

    #[test]
    fn transform_reads_off_correlations() {
        // Two spins, always aligned; up with probability 0.75.
        let p = [0.75, 0.0, 0.0, 0.25];
        let c = correlations_from_distribution(&p, 2).unwrap();
        assert_eq!(c.get(0, 1), 1.0);
        assert_eq!(c.singles(), &[0.5, 0.5]);
        let q = correlations_from_distribution(&[0.0, 0.5, 0.5, 0.0], 2).unwrap();
        assert_eq!(q.get(0, 1), -1.0);
    }

    #[test]
    fn gauge_is_an_involution() {
        let c = correlations_from_distribution(&[0.1, 0.2, 0.3, 0.4], 2).unwrap();
        let g = c.gauged(&[-1, 1]).unwrap();
        assert_eq!(g.get(0, 1), -c.get(0, 1));
        assert_eq!(g.singles()[0], -c.singles()[0]);
        assert_eq!(g.gauged(&[-1, 1]).unwrap(), c);
    }

    #[test]
    fn validation_and_names() {
        assert!(CorrelationMatrix::new(2, vec![1.0, 0.5, 0.4, 1.0], vec![0.0; 2]).is_err());
        assert!(CorrelationMatrix::new(2, vec![0.9, 0.0, 0.0, 1.0], vec![0.0; 2]).is_err());
        for o in Observable::ALL {
            assert_eq!(o.name().parse::<Observable>().unwrap(), o);
        }
        assert!("q3".parse::<Observable>().is_err());
    }
}
