//! Exact thermal averages for up to [`DENSE_LIMIT`] spins.
//!
//! The measurement distribution is `p(z) = <z| exp(-beta H) |z> / Z`. Up to
//! [`EIGEN_LIMIT`] spins it comes from a full eigendecomposition. Beyond
//! that every diagonal element is a Gauss quadrature: Lanczos started at
//! `|z>` builds a Jacobi matrix `T` and `<z| f(H) |z> = e1^T f(T) e1`, exact
//! once the rule has converged to machine precision. Columns run in
//! batches so the matrix-free product vectorizes across them.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use super::lanczos::log_quadrature_exp;
use super::observables::{correlations_from_distribution, observables_for_instance};
use super::{CorrelationMatrix, Hamiltonian, IsingInstance, ObservableSet, Schedule};
use crate::error::{Error, Result};

pub const DENSE_LIMIT: usize = 14;
pub const EIGEN_LIMIT: usize = 8;

const BATCH: usize = 8;
const MIN_STEPS: usize = 16;
const CHECK_EVERY: usize = 4;
const LOG_TOLERANCE: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenseRoute {
    /// Eigendecomposition up to [`EIGEN_LIMIT`] spins, quadrature above.
    Auto,
    Eigen,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseThermal {
    pub observables: ObservableSet,
    pub correlations: CorrelationMatrix,
    /// Diagonal measurement distribution over the `2^n` basis states.
    pub distribution: Vec<f64>,
}

pub fn thermal_dense(inst: &IsingInstance, s: f64, sched: &Schedule) -> Result<DenseThermal> {
    thermal_dense_with(inst, s, sched, DenseRoute::Auto)
}

pub fn thermal_dense_with(
    inst: &IsingInstance,
    s: f64,
    sched: &Schedule,
    route: DenseRoute,
) -> Result<DenseThermal> {
    let n = inst.n();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            what: "dense thermal state".into(),
            size: n,
            limit: DENSE_LIMIT,
            hint: "; use thermal_stochastic".into(),
        });
    }
    let h = Hamiltonian::new(inst, s, sched)?;
    let beta = sched.beta;
    let distribution = if beta == 0.0 || h.b() == 0.0 {
        // Infinite temperature, or a pure transverse field: every basis
        // state is equally likely.
        vec![1.0 / h.dim() as f64; h.dim()]
    } else if h.a() == 0.0 {
        boltzmann(h.diagonal(), beta)
    } else {
        match route {
            DenseRoute::Eigen => eigen_distribution(&h, beta),
            DenseRoute::Quadrature => quadrature_distribution(&h, beta),
            DenseRoute::Auto if n <= EIGEN_LIMIT => eigen_distribution(&h, beta),
            DenseRoute::Auto => quadrature_distribution(&h, beta),
        }
    };
    let correlations = correlations_from_distribution(&distribution, n)?;
    let observables = observables_for_instance(&correlations, inst)?;
    Ok(DenseThermal {
        observables,
        correlations,
        distribution,
    })
}

fn boltzmann(energies: &[f64], beta: f64) -> Vec<f64> {
    let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = energies.iter().map(|e| (-beta * (e - lo)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

fn eigen_distribution(h: &Hamiltonian, beta: f64) -> Vec<f64> {
    let eig = SymmetricEigen::new(h.to_dense());
    let lo = eig.eigenvalues.min();
    let w: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|e| (-beta * (e - lo)).exp())
        .collect();
    let z: f64 = w.iter().sum();
    let dim = h.dim();
    (0..dim)
        .map(|x| {
            (0..dim)
                .map(|k| w[k] * eig.eigenvectors[(x, k)].powi(2))
                .sum::<f64>()
                / z
        })
        .collect()
}

fn quadrature_distribution(h: &Hamiltonian, beta: f64) -> Vec<f64> {
    let dim = h.dim();
    let mut logp = vec![0.0; dim];
    let mut work = Workspace {
        v_prev: vec![[0.0; BATCH]; dim],
        v: vec![[0.0; BATCH]; dim],
        w: vec![[0.0; BATCH]; dim],
    };
    for (block, out) in logp.chunks_mut(BATCH).enumerate() {
        quadrature_block(h, beta, block * BATCH, out, &mut work);
    }
    let top = logp.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = logp.iter().map(|l| (l - top).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

type Row = [f64; BATCH];

/// Lanczos vectors for one batch, reused across batches.
struct Workspace {
    v_prev: Vec<Row>,
    v: Vec<Row>,
    w: Vec<Row>,
}

/// `ln <z| exp(-beta H) |z>` for `z = first .. first + out.len()`. Unused
/// columns of a short final batch start (and stay) at zero.
fn quadrature_block(
    h: &Hamiltonian,
    beta: f64,
    first: usize,
    out: &mut [f64],
    work: &mut Workspace,
) {
    let dim = h.dim();
    let (lo, hi) = h.spectral_bounds();
    let breakdown = 1e-12 * (hi - lo).max(1.0);
    let max_steps = dim.min(500);

    let Workspace { v_prev, v, w } = work;
    v_prev.fill([0.0; BATCH]);
    v.fill([0.0; BATCH]);
    for k in 0..out.len() {
        v[first + k][k] = 1.0;
    }
    let mut alphas: Vec<Vec<f64>> = vec![Vec::new(); BATCH];
    let mut betas: Vec<Vec<f64>> = vec![Vec::new(); BATCH];
    let mut active: Vec<bool> = (0..BATCH).map(|k| k < out.len()).collect();
    let mut last = [f64::NAN; BATCH];
    let mut b_prev: Row = [0.0; BATCH];

    for step in 1..=max_steps {
        let a = h.apply_rows_dot(v, w);
        let mut norm2: Row = [0.0; BATCH];
        for ((wr, vr), pr) in w.iter_mut().zip(v.iter()).zip(v_prev.iter()) {
            for k in 0..BATCH {
                let t = wr[k] - a[k] * vr[k] - b_prev[k] * pr[k];
                wr[k] = t;
                norm2[k] += t * t;
            }
        }
        let mut scale: Row = [0.0; BATCH];
        for k in 0..BATCH {
            b_prev[k] = 0.0;
            if !active[k] {
                continue;
            }
            alphas[k].push(a[k]);
            let b = norm2[k].sqrt();
            let done = if b <= breakdown || step == max_steps {
                true
            } else if step >= MIN_STEPS && step % CHECK_EVERY == 0 {
                let value = log_quadrature_exp(&alphas[k], &betas[k], beta);
                let settled = (value - last[k]).abs() <= LOG_TOLERANCE * value.abs().max(1.0);
                last[k] = value;
                settled
            } else {
                false
            };
            if done {
                out[k] = log_quadrature_exp(&alphas[k], &betas[k], beta);
                active[k] = false;
            } else {
                betas[k].push(b);
                scale[k] = 1.0 / b;
                b_prev[k] = b;
            }
        }
        if !active.iter().any(|&x| x) {
            return;
        }
        // The old `v_prev` is dead: overwrite it with the next vector.
        for (pr, wr) in v_prev.iter_mut().zip(w.iter()) {
            for k in 0..BATCH {
                pr[k] = wr[k] * scale[k];
            }
        }
        std::mem::swap(v_prev, v);
    }
}
