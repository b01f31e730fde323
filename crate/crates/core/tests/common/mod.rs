//! Reference implementations used as test oracles. They share no code with
//! the library beyond the `Graph` type: matrices are assembled from Pauli
//! Kronecker products and thermal states from a full eigendecomposition.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use coising::graph::Graph;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Spin of vertex `i` in basis state `x`: bit set means down.
pub fn spin(x: u64, i: usize) -> i64 {
    if x >> i & 1 == 1 {
        -1
    } else {
        1
    }
}

/// `(e, m) -> count` by visiting every configuration.
pub fn brute_polynomial(g: &Graph) -> BTreeMap<(i64, i64), u64> {
    brute_rooted(g, None)
}

/// Same, restricted to the root spin up when given.
pub fn brute_rooted(g: &Graph, root: Option<usize>) -> BTreeMap<(i64, i64), u64> {
    let n = g.n();
    let mut out = BTreeMap::new();
    for x in 0..1u64 << n {
        if root.is_some_and(|r| spin(x, r) < 0) {
            continue;
        }
        let e: i64 = g
            .edges()
            .iter()
            .map(|&(a, b)| spin(x, a) * spin(x, b))
            .sum();
        let m: i64 = (0..n).map(|i| spin(x, i)).sum();
        *out.entry((e, m)).or_insert(0) += 1;
    }
    out
}

/// The library polynomial as plain integers.
pub fn as_counts(p: &coising::poly::IsingPolynomial) -> BTreeMap<(i64, i64), u64> {
    p.terms()
        .iter()
        .map(|(&k, c)| (k, c.to_string().parse().expect("count fits in u64")))
        .collect()
}

fn kron_chain(n: usize, site: impl Fn(usize) -> DMatrix<f64>) -> DMatrix<f64> {
    // Vertex 0 is the least significant bit, so it is the rightmost factor.
    let mut m = DMatrix::from_element(1, 1, 1.0);
    for i in (0..n).rev() {
        m = m.kronecker(&site(i));
    }
    m
}

fn pauli_x() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

fn pauli_z() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

fn eye2() -> DMatrix<f64> {
    DMatrix::identity(2, 2)
}

/// `a * sum_i X_i + b * (sum_(i,j) J_ij Z_i Z_j + sum_i h_i Z_i)`.
pub fn dense_hamiltonian(
    n: usize,
    couplings: &[((usize, usize), f64)],
    fields: &[f64],
    a: f64,
    b: f64,
) -> DMatrix<f64> {
    let dim = 1 << n;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..n {
        h += kron_chain(n, |k| if k == i { pauli_x() } else { eye2() }) * a;
        h += kron_chain(n, |k| if k == i { pauli_z() } else { eye2() }) * (b * fields[i]);
    }
    for &((i, j), jij) in couplings {
        h += kron_chain(n, |k| if k == i || k == j { pauli_z() } else { eye2() }) * (b * jij);
    }
    h
}

/// Unit couplings on the edges and unit fields.
pub fn graph_hamiltonian(g: &Graph, a: f64, b: f64) -> DMatrix<f64> {
    let couplings: Vec<((usize, usize), f64)> = g.edges().iter().map(|&e| (e, 1.0)).collect();
    dense_hamiltonian(g.n(), &couplings, &vec![1.0; g.n()], a, b)
}

/// Diagonal of `exp(-beta H) / Z`.
pub fn thermal_diagonal(h: &DMatrix<f64>, beta: f64) -> Vec<f64> {
    let eig = SymmetricEigen::new(h.clone());
    let e0 = eig.eigenvalues.min();
    let w: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&e| (-beta * (e - e0)).exp())
        .collect();
    let z: f64 = w.iter().sum();
    (0..h.nrows())
        .map(|x| {
            (0..h.ncols())
                .map(|k| w[k] * eig.eigenvectors[(x, k)].powi(2))
                .sum::<f64>()
                / z
        })
        .collect()
}

/// Classical Boltzmann distribution of `H_p` at inverse temperature `beta`.
pub fn boltzmann(g: &Graph, beta: f64) -> Vec<f64> {
    let n = g.n();
    let energies: Vec<f64> = (0..1u64 << n)
        .map(|x| {
            let e: i64 = g
                .edges()
                .iter()
                .map(|&(a, b)| spin(x, a) * spin(x, b))
                .sum();
            let m: i64 = (0..n).map(|i| spin(x, i)).sum();
            (e + m) as f64
        })
        .collect();
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = energies.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.iter().map(|v| v / z).collect()
}

/// Energy, magnetization, q2 and omega2 of a distribution over basis states,
/// straight from the definitions.
pub fn observables(g: &Graph, p: &[f64]) -> [f64; 4] {
    let n = g.n();
    let mut singles = vec![0.0; n];
    let mut c = vec![vec![0.0; n]; n];
    for (x, &px) in p.iter().enumerate() {
        let x = x as u64;
        for i in 0..n {
            singles[i] += px * spin(x, i) as f64;
            for j in 0..n {
                c[i][j] += px * (spin(x, i) * spin(x, j)) as f64;
            }
        }
    }
    let energy: f64 =
        g.edges().iter().map(|&(a, b)| c[a][b]).sum::<f64>() + singles.iter().sum::<f64>();
    let magnetization: f64 = singles.iter().sum();
    let mut off = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off += c[i][j] * c[i][j];
            }
        }
    }
    let q2 = if n > 1 {
        (off / (n * (n - 1)) as f64).sqrt()
    } else {
        0.0
    };
    let a = g.adjacency().map(|v| v as f64);
    let a2 = &a * &a;
    let mut omega2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            omega2 += a2[(i, j)] * c[i][j];
        }
    }
    [energy, magnetization, q2, omega2]
}

/// A seeded Erdos-Renyi graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("valid edges")
}

/// A seeded random tree: vertex `v` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::new(n, edges).expect("valid edges")
}
