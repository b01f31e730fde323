//! Library results against the reference implementations in `common`.

mod common;

use coising::graph::{catalog, Graph};
use coising::poly::{classical_spectrum, classical_spectrum_auto, rooted_spectrum, RootedGraph};
use coising::quantum::{
    apply_hamiltonian, default_schedule, lowest_eigenvalue, thermal_dense, thermal_dense_with,
    thermal_stochastic, DenseRoute, Hamiltonian, IsingInstance, Observable, Schedule,
    StochasticParams,
};
use common::*;
use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn linear(beta: f64) -> Schedule {
    default_schedule().with_beta(beta).unwrap()
}

fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + abs
}

#[test]
fn apply_hamiltonian_matches_kronecker_assembly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        let mut couplings = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.6) {
                    couplings.push(((i, j), rng.gen_range(-1.5..1.5)));
                }
            }
        }
        let fields: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let inst = IsingInstance::new(n, couplings.clone(), fields.clone()).unwrap();
        let s: f64 = rng.gen_range(0.0..1.0);
        let oracle = dense_hamiltonian(n, &couplings, &fields, 1.0 - s, s);
        let v: Vec<f64> = (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = apply_hamiltonian(&inst, s, &default_schedule(), &v).unwrap();
        let want = &oracle * nalgebra::DVector::from_vec(v);
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).abs() < 1e-12, "n={n}: {g} vs {w}");
        }
    }
}

#[test]
fn hand_written_two_spin_matrix() {
    // One edge, unit field, A = 0.3 and B = 0.7, basis order |00>, |01>, |10>, |11>.
    let (a, b) = (0.3, 0.7);
    let inst = IsingInstance::from_graph(&Graph::path(2).unwrap());
    let h = Hamiltonian::from_coefficients(&inst, a, b)
        .unwrap()
        .to_dense();
    #[rustfmt::skip]
    let want = nalgebra::DMatrix::from_row_slice(4, 4, &[
        3.0 * b, a, a, 0.0,
        a, -b, 0.0, a,
        a, 0.0, -b, a,
        0.0, a, a, -b,
    ]);
    assert!((h - want).abs().max() < 1e-15);
}

#[test]
fn thermal_dense_matches_full_diagonalization() {
    // Covers the eigendecomposition route (n <= 8) and quadrature (n >= 9).
    for (k, n) in [2usize, 4, 6, 8, 9, 10].into_iter().enumerate() {
        let g = random_graph(n, 0.4, 100 + k as u64);
        let inst = IsingInstance::from_graph(&g);
        for s in [0.2, 0.55, 0.9] {
            let beta = 4.0;
            let got = thermal_dense(&inst, s, &linear(beta)).unwrap();
            let p = thermal_diagonal(&graph_hamiltonian(&g, 1.0 - s, s), beta);
            for (x, (a, b)) in got.distribution.iter().zip(&p).enumerate() {
                assert!((a - b).abs() < 1e-10, "n={n} s={s} x={x}: {a} vs {b}");
            }
            let want = observables(&g, &p);
            for (o, w) in Observable::ALL.into_iter().zip(want) {
                let v = got.observables.get(o);
                assert!(close(v, w, 1e-9, 1e-10), "n={n} s={s} {o}: {v} vs {w}");
            }
        }
    }
}

#[test]
fn both_dense_routes_agree_at_nine_spins() {
    let g = random_graph(9, 0.35, 7);
    let inst = IsingInstance::from_graph(&g);
    let sched = linear(2.5);
    let e = thermal_dense_with(&inst, 0.45, &sched, DenseRoute::Eigen).unwrap();
    let q = thermal_dense_with(&inst, 0.45, &sched, DenseRoute::Quadrature).unwrap();
    for (a, b) in e.distribution.iter().zip(&q.distribution) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn endpoints_have_closed_forms() {
    let g = catalog::get("G13").unwrap();
    let inst = IsingInstance::from_graph(&g);
    let sched = linear(4.0);

    let start = thermal_dense(&inst, 0.0, &sched).unwrap();
    assert!(start.distribution.iter().all(|&p| p == 1.0 / 8192.0));
    assert_eq!(start.observables.magnetization, 0.0);
    assert_eq!(start.observables.q2, 0.0);

    let end = thermal_dense(&inst, 1.0, &sched).unwrap();
    let want = observables(&g, &boltzmann(&g, 4.0));
    for (o, w) in Observable::ALL.into_iter().zip(want) {
        let v = end.observables.get(o);
        assert!(close(v, w, 1e-10, 0.0), "{o}: {v} vs {w}");
    }

    let hot = thermal_dense(&inst, 0.6, &linear(0.0)).unwrap();
    let mean_energy = (0..1u64 << 13).map(|x| inst.energy(x)).sum::<f64>() / 8192.0;
    assert!((hot.observables.energy - mean_energy).abs() < 1e-12);
}

#[test]
fn ground_energy_bounds_the_thermal_energy() {
    let g = random_graph(8, 0.5, 3);
    let inst = IsingInstance::from_graph(&g);
    for s in [0.1, 0.4, 0.7, 1.0] {
        let h = graph_hamiltonian(&g, 1.0 - s, s);
        let eig = SymmetricEigen::new(h);
        let e0 = eig.eigenvalues.min();
        let w: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&e| (-4.0 * (e - e0)).exp())
            .collect();
        let mean_h = eig
            .eigenvalues
            .iter()
            .zip(&w)
            .map(|(e, w)| e * w)
            .sum::<f64>()
            / w.iter().sum::<f64>();
        assert!(e0 <= mean_h);
        let lanczos = lowest_eigenvalue(
            &Hamiltonian::from_coefficients(&inst, 1.0 - s, s).unwrap(),
            120,
        );
        assert!((lanczos - e0).abs() < 1e-9, "s={s}: {lanczos} vs {e0}");
    }
}

#[test]
fn stochastic_estimate_tracks_dense_at_small_size() {
    let g = random_graph(9, 0.4, 21);
    let inst = IsingInstance::from_graph(&g);
    let sched = linear(4.0);
    let exact = thermal_dense(&inst, 0.5, &sched).unwrap().observables;
    let params = StochasticParams {
        num_probes: 40,
        krylov_dim: 60,
        seed: 5,
        ..StochasticParams::default()
    };
    let est = thermal_stochastic(&inst, 0.5, &sched, &params).unwrap();
    assert!(est.converged);
    for o in Observable::ALL {
        let (v, e, w) = (
            est.observables.get(o),
            est.observables.stderr(o),
            exact.get(o),
        );
        assert!(e > 0.0);
        assert!(
            (v - w).abs() <= (4.0 * e).max(1e-2 * w.abs() + 1e-3),
            "{o}: {v} +- {e} vs {w}"
        );
    }
}

#[test]
fn polynomials_match_naive_enumeration() {
    for seed in 0..12 {
        let n = 3 + (seed as usize % 8);
        let g = random_graph(n, 0.35, seed);
        assert_eq!(
            as_counts(&classical_spectrum(&g).unwrap()),
            brute_polynomial(&g)
        );
        assert_eq!(
            as_counts(&classical_spectrum_auto(&g).unwrap()),
            brute_polynomial(&g)
        );
        let root = seed as usize % n;
        let rg = RootedGraph::new(g.clone(), root).unwrap();
        assert_eq!(
            as_counts(&rooted_spectrum(&rg).unwrap()),
            brute_rooted(&g, Some(root))
        );
    }
}

#[test]
fn tree_spectra_match_naive_enumeration() {
    // Trees are all cut vertices, the hardest case for the decomposition.
    for seed in 0..8 {
        let g = random_tree(14, seed);
        assert_eq!(
            as_counts(&classical_spectrum_auto(&g).unwrap()),
            brute_polynomial(&g)
        );
    }
}

#[test]
fn small_catalog_graph_matches_naive_enumeration() {
    let g = catalog::get("G13").unwrap();
    assert_eq!(
        as_counts(&classical_spectrum_auto(&g).unwrap()),
        brute_polynomial(&g)
    );
}
