//! Stochastic trace estimation of thermal averages.
//!
//! For a random sign vector `r`, `E[r^T exp(-beta H / 2) O exp(-beta H / 2)
//! r] = Tr(O exp(-beta H))`. Each probe evolves `r` by a Krylov expansion of
//! `exp(-beta H / 2)` and reads every diagonal observable off the squared
//! amplitudes. Averages are ratios of probe sums; their standard errors come
//! from the jackknife over probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lanczos::{axpy, dot, exp_tridiagonal_e1};
use super::observables::{
    from_moments, low_order_coefficients, observables_for_instance, walsh_hadamard,
};
use super::{
    CorrelationMatrix, Hamiltonian, IsingInstance, Observable, ObservableSet, Schedule, MAX_SPINS,
};
use crate::error::{Error, Result};

/// Relative a-posteriori residual above which a probe counts as not
/// converged.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// States above this size run their probes one at a time to bound memory.
const PARALLEL_DIM: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StochasticParams {
    pub num_probes: usize,
    pub krylov_dim: usize,
    pub seed: u64,
    /// Bytes allowed for storing a probe's Krylov basis. Above it the
    /// expansion is recomputed in a second pass instead of stored.
    pub memory_budget: usize,
}

impl Default for StochasticParams {
    fn default() -> Self {
        StochasticParams {
            num_probes: 50,
            krylov_dim: 80,
            seed: 0,
            memory_budget: 1 << 30,
        }
    }
}

impl StochasticParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_probes < 2 {
            return Err(Error::invalid("at least two probes are needed"));
        }
        if self.krylov_dim < 20 {
            return Err(Error::invalid("the Krylov dimension must be at least 20"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StochasticThermal {
    pub observables: ObservableSet,
    pub correlations: CorrelationMatrix,
    /// False when some probe's Krylov residual exceeded
    /// [`RESIDUAL_TOLERANCE`].
    pub converged: bool,
    pub max_residual: f64,
}

struct Probe {
    /// `ln` of the factor the stored sums were divided by.
    log_scale: f64,
    total: f64,
    singles: Vec<f64>,
    pairs: Vec<f64>,
    residual: f64,
}

pub fn thermal_stochastic(
    inst: &IsingInstance,
    s: f64,
    sched: &Schedule,
    params: &StochasticParams,
) -> Result<StochasticThermal> {
    params.validate()?;
    if inst.n() > MAX_SPINS {
        return Err(Error::TooLarge {
            what: "stochastic thermal state".into(),
            size: inst.n(),
            limit: MAX_SPINS,
            hint: String::new(),
        });
    }
    let h = Hamiltonian::new(inst, s, sched)?;
    let run = |k: usize| probe(&h, sched.beta, params, k);
    let probes: Vec<Probe> = if h.dim() >= PARALLEL_DIM {
        (0..params.num_probes).map(run).collect::<Result<_>>()?
    } else {
        (0..params.num_probes)
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?
    };
    combine(inst, &probes)
}

fn combine(inst: &IsingInstance, probes: &[Probe]) -> Result<StochasticThermal> {
    let n = inst.n();
    let top = probes
        .iter()
        .map(|p| p.log_scale)
        .fold(f64::NEG_INFINITY, f64::max);
    let factors: Vec<f64> = probes.iter().map(|p| (p.log_scale - top).exp()).collect();
    let npairs = n * n.saturating_sub(1) / 2;
    let mut total = 0.0;
    let mut singles = vec![0.0; n];
    let mut pairs = vec![0.0; npairs];
    for (p, &f) in probes.iter().zip(&factors) {
        total += f * p.total;
        axpy(f, &p.singles, &mut singles);
        axpy(f, &p.pairs, &mut pairs);
    }
    let estimate = |t: f64, s: &[f64], q: &[f64]| -> Result<(ObservableSet, CorrelationMatrix)> {
        let ms: Vec<f64> = s.iter().map(|x| x / t).collect();
        let mq: Vec<f64> = q.iter().map(|x| x / t).collect();
        let c = from_moments(n, &ms, &mq);
        Ok((observables_for_instance(&c, inst)?, c))
    };
    let (mut observables, correlations) = estimate(total, &singles, &pairs)?;

    // Jackknife: leave each probe out in turn.
    let r = probes.len();
    let mut leave_out = Vec::with_capacity(r);
    for (p, &f) in probes.iter().zip(&factors) {
        let mut s = singles.clone();
        let mut q = pairs.clone();
        axpy(-f, &p.singles, &mut s);
        axpy(-f, &p.pairs, &mut q);
        leave_out.push(estimate(total - f * p.total, &s, &q)?.0);
    }
    for o in Observable::ALL {
        let vals: Vec<f64> = leave_out.iter().map(|x| x.get(o)).collect();
        let mean = vals.iter().sum::<f64>() / r as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() * (r - 1) as f64 / r as f64;
        let value = observables.get(o);
        observables.set(o, value, var.sqrt());
    }
    let max_residual = probes.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(StochasticThermal {
        observables,
        correlations,
        converged: max_residual <= RESIDUAL_TOLERANCE,
        max_residual,
    })
}

fn alloc(dim: usize) -> Result<Vec<f64>> {
    let mut v = Vec::new();
    v.try_reserve_exact(dim).map_err(|_| {
        Error::ResourceLimit(format!(
            "cannot allocate a state vector of {dim} amplitudes"
        ))
    })?;
    v.resize(dim, 0.0);
    Ok(v)
}

struct Recurrence {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    /// Off-diagonal after the last step; zero at breakdown.
    next: f64,
    /// The basis, when stored.
    basis: Vec<Vec<f64>>,
}

/// Lanczos recurrence from a normalized start vector. With `store`, keeps
/// the basis and reorthogonalizes fully against it. Calls `visit(j, v_j)`
/// for each basis vector.
fn lanczos(
    h: &Hamiltonian,
    start: &[f64],
    m: usize,
    store: bool,
    mut visit: impl FnMut(usize, &[f64]),
) -> Result<Recurrence> {
    let dim = h.dim();
    let (lo, hi) = h.spectral_bounds();
    let breakdown = 1e-12 * (hi - lo).max(1.0);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut v_prev = alloc(dim)?;
    let mut v = start.to_vec();
    let mut w = alloc(dim)?;
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) =
        (Vec::with_capacity(m), Vec::with_capacity(m));
    for j in 0..m {
        visit(j, &v);
        h.apply(&v, &mut w);
        let a = dot(&v, &w);
        alpha.push(a);
        axpy(-a, &v, &mut w);
        if let Some(&b) = beta.last() {
            axpy(-b, &v_prev, &mut w);
        }
        if store {
            basis.push(v.clone());
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    axpy(-c, q, &mut w);
                }
            }
        }
        let b = dot(&w, &w).sqrt();
        if b <= breakdown || j + 1 == m {
            let next = if b <= breakdown { 0.0 } else { b };
            return Ok(Recurrence {
                alpha,
                beta,
                next,
                basis,
            });
        }
        beta.push(b);
        std::mem::swap(&mut v_prev, &mut v);
        for (x, y) in v.iter_mut().zip(&w) {
            *x = y / b;
        }
    }
    unreachable!("the loop returns on its last step")
}

fn probe(h: &Hamiltonian, beta: f64, params: &StochasticParams, index: usize) -> Result<Probe> {
    let dim = h.dim();
    let n = h.n();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index as u64);
    let scale = 1.0 / (dim as f64).sqrt();
    let mut start = alloc(dim)?;
    for x in start.iter_mut() {
        *x = if rng.gen::<bool>() { scale } else { -scale };
    }
    let norm = (dim as f64).sqrt();
    let m = params.krylov_dim.min(dim);
    let store = m.saturating_mul(dim).saturating_mul(8) <= params.memory_budget;

    let mut phi = alloc(dim)?;
    let rec = lanczos(h, &start, m, store, |_, _| {})?;
    let (y, lo) = exp_tridiagonal_e1(&rec.alpha, &rec.beta, beta / 2.0);
    let steps = rec.alpha.len();
    if store {
        for (j, v) in rec.basis.iter().enumerate() {
            axpy(norm * y[j], v, &mut phi);
        }
    } else {
        lanczos(h, &start, steps, false, |j, v| {
            axpy(norm * y[j], v, &mut phi)
        })?;
    }
    drop(rec.basis);
    drop(start);
    let residual = rec.next * y[steps - 1].abs() / y.norm();

    // Squared amplitudes, then their low-order Walsh coefficients.
    for x in phi.iter_mut() {
        *x *= *x;
    }
    walsh_hadamard(&mut phi);
    let total = phi[0];
    let (singles, pairs) = low_order_coefficients(&phi, n);
    Ok(Probe {
        log_scale: -beta * lo,
        total,
        singles: singles.into_iter().map(|c| c * total).collect(),
        pairs: pairs.into_iter().map(|c| c * total).collect(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::quantum::{default_schedule, thermal_dense};

    #[test]
    fn k2_converges_to_the_exact_gibbs_state() {
        let inst = IsingInstance::from_graph(&Graph::path(2).unwrap());
        let sched = default_schedule();
        let exact = thermal_dense(&inst, 0.4, &sched).unwrap().observables;
        let params = StochasticParams {
            num_probes: 4000,
            krylov_dim: 20,
            seed: 1,
            ..StochasticParams::default()
        };
        let est = thermal_stochastic(&inst, 0.4, &sched, &params).unwrap();
        assert!(est.converged);
        for o in Observable::ALL {
            let (e, x, se) = (
                exact.get(o),
                est.observables.get(o),
                est.observables.stderr(o),
            );
            assert!(
                (e - x).abs() <= 4.0 * se + 1e-9,
                "{o}: {x} vs {e} (stderr {se})"
            );
        }
    }

    #[test]
    fn seeded_runs_are_identical_and_two_pass_matches_storage() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let inst = IsingInstance::from_graph(&Graph::random(9, 0.4, &mut rng).unwrap());
        let sched = default_schedule();
        let params = StochasticParams {
            num_probes: 6,
            krylov_dim: 30,
            seed: 42,
            ..StochasticParams::default()
        };
        let a = thermal_stochastic(&inst, 0.5, &sched, &params).unwrap();
        let b = thermal_stochastic(&inst, 0.5, &sched, &params).unwrap();
        assert_eq!(a, b);
        let lean = StochasticParams {
            memory_budget: 0,
            ..params
        };
        let c = thermal_stochastic(&inst, 0.5, &sched, &lean).unwrap();
        for o in Observable::ALL {
            assert!(
                (a.observables.get(o) - c.observables.get(o)).abs() < 1e-8,
                "{o}"
            );
        }
    }

    #[test]
    fn parameter_checks() {
        let inst = IsingInstance::from_graph(&Graph::path(3).unwrap());
        let sched = default_schedule();
        let few = StochasticParams {
            num_probes: 1,
            ..StochasticParams::default()
        };
        assert!(thermal_stochastic(&inst, 0.5, &sched, &few).is_err());
        let short = StochasticParams {
            krylov_dim: 10,
            ..StochasticParams::default()
        };
        assert!(thermal_stochastic(&inst, 0.5, &sched, &short).is_err());
    }
}
