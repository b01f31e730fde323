//! Thermal averages of diagonal observables of the transverse-field Ising
//! Hamiltonian.
//!
//! [`thermal_dense`] is exact up to 14 spins. [`thermal_stochastic`]
//! estimates the same averages with random probes and Krylov expansions of
//! `exp(-beta H / 2)`, and scales to any size whose state vector fits in
//! memory.

mod dense;
mod hamiltonian;
mod lanczos;
mod observables;
mod schedule;
mod stochastic;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use dense::{thermal_dense, thermal_dense_with, DenseRoute, DenseThermal, DENSE_LIMIT};
pub use hamiltonian::{apply_hamiltonian, Hamiltonian, MAX_SPINS};
pub use lanczos::{gauss_quadrature, lowest_eigenvalue};
pub use observables::{
    correlations_from_distribution, observables_for_instance, observables_from_correlations,
    CorrelationMatrix, Observable, ObservableSet,
};
pub use schedule::{
    beta_per_ghz, default_schedule, load_schedule, Schedule, ScheduleKind, BOLTZMANN, DEFAULT_BETA,
    PLANCK,
};
pub use stochastic::{thermal_stochastic, StochasticParams, StochasticThermal};

/// Couplings and longitudinal fields of `H_p = sum J_ij Z_i Z_j + sum h_i Z_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingInstance {
    n: usize,
    couplings: Vec<((usize, usize), f64)>,
    fields: Vec<f64>,
}

impl IsingInstance {
    /// `J_ij = 1` on every edge and `h_i = 1` on every vertex.
    pub fn from_graph(g: &Graph) -> Self {
        IsingInstance {
            n: g.n(),
            couplings: g.edges().iter().map(|&e| (e, 1.0)).collect(),
            fields: vec![1.0; g.n()],
        }
    }

    /// Couplings are keyed by 0-based `(i, j)` with `i < j`.
    pub fn new(n: usize, couplings: Vec<((usize, usize), f64)>, fields: Vec<f64>) -> Result<Self> {
        if fields.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: fields.len(),
            });
        }
        let mut couplings = couplings;
        couplings.sort_by_key(|c| c.0);
        for w in couplings.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid(format!("coupling {:?} given twice", w[0].0)));
            }
        }
        for &((i, j), _) in &couplings {
            if i >= j || j >= n {
                return Err(Error::invalid(format!(
                    "coupling ({i}, {j}) is not i < j < {n}"
                )));
            }
        }
        Ok(IsingInstance {
            n,
            couplings,
            fields,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn couplings(&self) -> &[((usize, usize), f64)] {
        &self.couplings
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    /// The coupling graph.
    pub fn graph(&self) -> Graph {
        Graph::new(self.n, self.couplings.iter().map(|c| c.0)).expect("couplings are validated")
    }

    /// Classical energy of basis state `x` (bit set means spin down).
    pub fn energy(&self, x: u64) -> f64 {
        let z = |i: usize| if x >> i & 1 == 1 { -1.0 } else { 1.0 };
        let e: f64 = self
            .couplings
            .iter()
            .map(|&((i, j), w)| w * z(i) * z(j))
            .sum();
        e + self
            .fields
            .iter()
            .enumerate()
            .map(|(i, h)| h * z(i))
            .sum::<f64>()
    }

    /// `E_p(x)` for every basis state, built by doubling: setting bit `k`
    /// on a state whose bits above `k` are clear changes the energy by
    /// `-2 (h_k + sum_j J_kj z_j)`.
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        let n = self.n;
        if n > MAX_SPINS {
            return Err(Error::TooLarge {
                what: "instance".into(),
                size: n,
                limit: MAX_SPINS,
                hint: String::new(),
            });
        }
        let dim = 1usize << n;
        let mut diag = Vec::new();
        diag.try_reserve_exact(dim)
            .map_err(|_| Error::ResourceLimit(format!("cannot allocate 2^{n} energies")))?;
        diag.push(
            self.couplings.iter().map(|c| c.1).sum::<f64>() + self.fields.iter().sum::<f64>(),
        );
        let mut lower: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut upper_sum = vec![0.0; n];
        for &((i, j), w) in &self.couplings {
            lower[j].push((i, w));
            upper_sum[i] += w;
        }
        for k in 0..n {
            let half = 1usize << k;
            for x in 0..half {
                let mut local = self.fields[k] + upper_sum[k];
                for &(j, w) in &lower[k] {
                    local += if x >> j & 1 == 1 { -w } else { w };
                }
                let e = diag[x] - 2.0 * local;
                diag.push(e);
            }
        }
        Ok(diag)
    }
}
