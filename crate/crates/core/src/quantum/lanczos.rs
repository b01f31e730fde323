//! Lanczos tridiagonalization and functions of the resulting tridiagonal.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::Hamiltonian;

/// Nodes and weights of the Gauss rule defined by a Jacobi matrix with
/// diagonal `alpha` and off-diagonal `beta` (`beta.len() + 1 ==
/// alpha.len()`): the eigenvalues and squared first eigenvector components,
/// by implicit QL iterations that only track the first row.
pub fn gauss_rule(alpha: &[f64], beta: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = alpha.len();
    assert_eq!(beta.len() + 1, n.max(1));
    let mut d = alpha.to_vec();
    let mut e = beta.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    if n > 0 {
        z[0] = 1.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 100, "tridiagonal QL did not converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let w = z.iter().map(|x| x * x).collect();
    (d, w)
}

/// `e1^T f(T) e1` for the Jacobi matrix `T`.
pub fn gauss_quadrature(alpha: &[f64], beta: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let (nodes, weights) = gauss_rule(alpha, beta);
    nodes.iter().zip(&weights).map(|(&x, &w)| w * f(x)).sum()
}

/// `ln(e1^T exp(-t T) e1)`, safe against overflow for large `t`.
pub(crate) fn log_quadrature_exp(alpha: &[f64], beta: &[f64], t: f64) -> f64 {
    let (nodes, weights) = gauss_rule(alpha, beta);
    let lo = nodes.iter().copied().fold(f64::INFINITY, f64::min);
    let sum: f64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| w * (-t * (x - lo)).exp())
        .sum();
    sum.ln() - t * lo
}

/// `exp(-t (T - lo)) e1` with `lo` the smallest eigenvalue of `T`, which is
/// returned alongside.
pub(crate) fn exp_tridiagonal_e1(alpha: &[f64], beta: &[f64], t: f64) -> (DVector<f64>, f64) {
    let m = alpha.len();
    let mut tm = DMatrix::zeros(m, m);
    for i in 0..m {
        tm[(i, i)] = alpha[i];
        if i + 1 < m {
            tm[(i, i + 1)] = beta[i];
            tm[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(tm);
    let lo = eig.eigenvalues.min();
    let scaled = eig.eigenvalues.map(|x| (-t * (x - lo)).exp());
    let first_row = eig.eigenvectors.row(0).transpose();
    let coeffs = first_row.component_mul(&scaled);
    (&eig.eigenvectors * coeffs, lo)
}

/// Lowest eigenvalue estimate: the smallest Ritz value of `steps` Lanczos
/// iterations with full reorthogonalization from a fixed start vector.
pub fn lowest_eigenvalue(h: &Hamiltonian, steps: usize) -> f64 {
    let dim = h.dim();
    let steps = steps.min(dim).max(1);
    // Deterministic, generic start: varies with the index so that it has
    // weight on every symmetry sector.
    let mut v: Vec<f64> = (0..dim)
        .map(|x| 1.0 + ((x as f64) * 0.618_033_988_75).fract())
        .collect();
    normalize(&mut v);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(steps);
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; dim];
    for _ in 0..steps {
        h.apply(&v, &mut w);
        let a = dot(&v, &w);
        alpha.push(a);
        basis.push(v.clone());
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let b = dot(&w, &w).sqrt();
        if b < 1e-12 * (1.0 + a.abs()) || basis.len() == steps {
            break;
        }
        beta.push(b);
        v = w.iter().map(|x| x / b).collect();
    }
    let (nodes, _) = gauss_rule(&alpha, &beta[..alpha.len() - 1]);
    nodes.into_iter().fold(f64::INFINITY, f64::min)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn axpy(c: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

pub(crate) fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_jacobi(m: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let alpha = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let beta = (0..m - 1).map(|_| rng.gen_range(0.1..2.0)).collect();
        (alpha, beta)
    }

    fn dense(alpha: &[f64], beta: &[f64]) -> DMatrix<f64> {
        let m = alpha.len();
        DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        })
    }

    #[test]
    fn rule_matches_a_full_eigendecomposition() {
        for (m, seed) in [(1, 1), (2, 2), (7, 3), (40, 4)] {
            let (alpha, beta) = random_jacobi(m, seed);
            let (nodes, weights) = gauss_rule(&alpha, &beta);
            let eig = SymmetricEigen::new(dense(&alpha, &beta));
            let mut want: Vec<(f64, f64)> = (0..m)
                .map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2)))
                .collect();
            let mut got: Vec<(f64, f64)> = nodes.into_iter().zip(weights).collect();
            want.sort_by(|a, b| a.0.total_cmp(&b.0));
            got.sort_by(|a, b| a.0.total_cmp(&b.0));
            for (g, w) in got.iter().zip(&want) {
                assert!(
                    (g.0 - w.0).abs() < 1e-12 && (g.1 - w.1).abs() < 1e-12,
                    "{g:?} vs {w:?}"
                );
            }
        }
    }

    #[test]
    fn exponential_of_a_jacobi_matrix() {
        let (alpha, beta) = random_jacobi(12, 9);
        let t = 1.7;
        let (y, lo) = exp_tridiagonal_e1(&alpha, &beta, t);
        // Taylor series of exp(-t (T - lo)) e1.
        let a = dense(&alpha, &beta) - DMatrix::identity(12, 12) * lo;
        let mut term = DVector::from_fn(12, |i, _| if i == 0 { 1.0 } else { 0.0 });
        let mut sum = term.clone();
        for k in 1..200 {
            term = &a * term * (-t / k as f64);
            sum += &term;
        }
        assert!((&y - &sum).abs().max() < 1e-9);
        let log = log_quadrature_exp(&alpha, &beta, t);
        assert!((log - (y[0].ln() - t * lo)).abs() < 1e-10);
    }
}
