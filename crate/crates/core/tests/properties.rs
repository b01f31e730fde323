//! Invariants checked over generated inputs.

mod common;

use coising::chimera::{chimera_graph, find_native_embeddings, verify_embedding};
use coising::experiment::{
    bootstrap_ci, difference_curve, gauge_transform, CurvePoint, ObservableCurve,
};
use coising::graph::{are_isomorphic, find_isomorphism, Graph, VertexPermutation};
use coising::poly::{
    classical_spectrum, classical_spectrum_auto, co_ising, compose_rooted, rooted_spectrum,
    vertex_identify, RootedGraph,
};
use coising::quantum::{
    default_schedule, observables_for_instance, thermal_dense, Hamiltonian, IsingInstance,
    Observable,
};
use nalgebra::SymmetricEigen;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize, density: f64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        proptest::collection::vec(proptest::bool::weighted(density), pairs.len()).prop_map(
            move |keep| {
                let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
                Graph::new(n, edges).unwrap()
            },
        )
    })
}

fn rooted(max_n: usize) -> impl Strategy<Value = RootedGraph> {
    graph(max_n, 0.4).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n).prop_map(|(g, r)| RootedGraph::new(g, r).unwrap())
    })
}

fn permutation(n: usize, seed: u64) -> VertexPermutation {
    VertexPermutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn signs(n: usize, bits: u64) -> Vec<i8> {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_round_trips(g in graph(12, 0.3), seed in any::<u64>()) {
        let p = permutation(g.n(), seed);
        prop_assert_eq!(g.relabel(&p).unwrap().relabel(&p.inverse()).unwrap(), g);
    }

    #[test]
    fn relabelings_are_isomorphic(g in graph(11, 0.35), seed in any::<u64>()) {
        let h = g.relabel(&permutation(g.n(), seed)).unwrap();
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert!(are_isomorphic(&h, &g));
        let witness = find_isomorphism(&g, &h).unwrap();
        prop_assert_eq!(g.relabel(&witness).unwrap(), h);
    }

    #[test]
    fn isomorphism_is_symmetric(a in graph(8, 0.4), b in graph(8, 0.4)) {
        prop_assert_eq!(are_isomorphic(&a, &b), are_isomorphic(&b, &a));
    }

    #[test]
    fn squared_adjacency_trace_counts_edge_ends(g in graph(14, 0.3)) {
        prop_assert_eq!(g.adjacency_power(2).unwrap().trace(), 2 * g.num_edges() as i64);
    }

    #[test]
    fn polynomial_totals_and_flip_symmetry(rg in rooted(12)) {
        let n = rg.graph.n();
        let full = classical_spectrum(&rg.graph).unwrap();
        prop_assert_eq!(full.total(), BigUint::from(1u64) << n);
        prop_assert_eq!(rooted_spectrum(&rg).unwrap().total(), BigUint::from(1u64) << (n - 1));
        for (&(e, m), c) in full.terms() {
            prop_assert_eq!(&full.count(e, -m), c);
        }
    }

    #[test]
    fn rooted_polynomial_and_its_reflection_make_the_full_one(rg in rooted(12)) {
        let r = rooted_spectrum(&rg).unwrap();
        prop_assert_eq!(r.add(&r.reflect_m()).unwrap(), classical_spectrum(&rg.graph).unwrap());
    }

    #[test]
    fn composition_law(a in rooted(8), b in rooted(8)) {
        let composed = compose_rooted(&rooted_spectrum(&a).unwrap(), &rooted_spectrum(&b).unwrap());
        prop_assert_eq!(composed, rooted_spectrum(&vertex_identify(&a, &b)).unwrap());
    }

    #[test]
    fn decomposition_agrees_with_enumeration(a in rooted(8), b in rooted(8), c in rooted(4)) {
        // Gluing guarantees at least one cut vertex once both pieces are nontrivial.
        let glued = vertex_identify(&vertex_identify(&a, &b), &c).graph;
        prop_assert_eq!(classical_spectrum_auto(&glued).unwrap(), classical_spectrum(&glued).unwrap());
    }

    #[test]
    fn relabeling_preserves_the_spectrum(g in graph(10, 0.35), seed in any::<u64>()) {
        let h = g.relabel(&permutation(g.n(), seed)).unwrap();
        prop_assert!(co_ising(&g, &h).unwrap());
    }

    #[test]
    fn gauge_is_an_involution(g in graph(10, 0.4), bits in any::<u64>()) {
        let inst = IsingInstance::from_graph(&g);
        let a = signs(g.n(), bits);
        let once = gauge_transform(&inst, &a).unwrap();
        prop_assert!(once.couplings().iter().all(|&(_, j)| j.abs() == 1.0));
        prop_assert!(once.fields().iter().all(|&h| h.abs() == 1.0));
        prop_assert_eq!(gauge_transform(&once, &a).unwrap(), inst);
    }

    #[test]
    fn bootstrap_interval_holds_the_mean(values in proptest::collection::vec(-5.0f64..5.0, 2..40), seed in any::<u64>()) {
        let (mean, lo, hi) = bootstrap_ci(&values, 200, 0.95, seed).unwrap();
        prop_assert!(lo <= mean && mean <= hi);
        let direct = values.iter().sum::<f64>() / values.len() as f64;
        prop_assert!((mean - direct).abs() < 1e-12);
    }

    #[test]
    fn self_difference_vanishes(points in proptest::collection::vec((-3.0f64..3.0, 0.0f64..1.0, 0.0f64..1.0), 1..10)) {
        let pts: Vec<CurvePoint> = points
            .iter()
            .enumerate()
            .map(|(k, &(m, d, u))| CurvePoint { s_p: k as f64, mean: m, ci_low: m - d, ci_high: m + u })
            .collect();
        let c = ObservableCurve::new("g".into(), Observable::Q2, pts, None).unwrap();
        let d = difference_curve(&c, &c).unwrap();
        prop_assert!(d.points.iter().all(|p| p.mean == 0.0 && p.ci_low <= 0.0 && p.ci_high >= 0.0));
    }
}

proptest! {
    // Thermal states are costlier; fewer, smaller cases.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn thermal_observables_are_relabeling_invariant(g in graph(7, 0.45), seed in any::<u64>(), s in 0.0f64..=1.0) {
        let h = g.relabel(&permutation(g.n(), seed)).unwrap();
        let sched = default_schedule();
        let a = thermal_dense(&IsingInstance::from_graph(&g), s, &sched).unwrap().observables;
        let b = thermal_dense(&IsingInstance::from_graph(&h), s, &sched).unwrap().observables;
        for o in Observable::ALL {
            prop_assert!((a.get(o) - b.get(o)).abs() < 1e-10, "{}: {} vs {}", o, a.get(o), b.get(o));
        }
    }

    #[test]
    fn gauges_preserve_the_spectrum(g in graph(6, 0.5), bits in any::<u64>(), s in 0.0f64..=1.0) {
        let inst = IsingInstance::from_graph(&g);
        let gauged = gauge_transform(&inst, &signs(g.n(), bits)).unwrap();
        let eig = |i: &IsingInstance| {
            let mut v: Vec<f64> = SymmetricEigen::new(Hamiltonian::from_coefficients(i, 1.0 - s, s).unwrap().to_dense())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            v.sort_by(f64::total_cmp);
            v
        };
        for (x, y) in eig(&inst).iter().zip(eig(&gauged)) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn degauged_correlations_recover_the_observables(g in graph(8, 0.4), bits in any::<u64>(), s in 0.0f64..=1.0) {
        let sched = default_schedule();
        let inst = IsingInstance::from_graph(&g);
        let a = signs(g.n(), bits);
        let direct = thermal_dense(&inst, s, &sched).unwrap().observables;
        let gauged = thermal_dense(&gauge_transform(&inst, &a).unwrap(), s, &sched).unwrap();
        let back = observables_for_instance(&gauged.correlations.gauged(&a).unwrap(), &inst).unwrap();
        for o in Observable::ALL {
            prop_assert!((back.get(o) - direct.get(o)).abs() < 1e-10);
        }
    }

    #[test]
    fn q2_is_a_fraction_and_vanishes_at_the_start(g in graph(9, 0.4), s in 0.0f64..=1.0, beta in 0.0f64..8.0) {
        let sched = default_schedule().with_beta(beta).unwrap();
        let inst = IsingInstance::from_graph(&g);
        let q2 = thermal_dense(&inst, s, &sched).unwrap().observables.q2;
        prop_assert!((0.0..=1.0).contains(&q2));
        prop_assert_eq!(thermal_dense(&inst, 0.0, &sched).unwrap().observables.q2, 0.0);
    }

    #[test]
    fn relabeled_embeddings_stay_valid(g in graph(8, 0.25), seed in any::<u64>()) {
        let topo = chimera_graph(4).unwrap();
        let found = find_native_embeddings(&g, "g", &topo, 3, seed);
        let distinct: std::collections::BTreeSet<_> = found.embeddings.iter().map(|e| &e.assignment).collect();
        prop_assert_eq!(distinct.len(), found.embeddings.len());
        let p = permutation(g.n(), seed ^ 1);
        let h = g.relabel(&p).unwrap();
        for e in &found.embeddings {
            prop_assert!(verify_embedding(&g, &topo, e));
            prop_assert!(verify_embedding(&h, &topo, &e.relabeled(&p).unwrap()));
        }
    }
}

#[test]
fn chimera_degrees() {
    for m in 1..=6 {
        let topo = chimera_graph(m).unwrap();
        for q in 0..topo.num_qubits() {
            let (row, col, unit) = topo.coordinates(q);
            let d = topo.neighbors(q).len();
            assert!(d <= 6);
            let interior = if unit < 4 {
                row > 0 && row + 1 < m
            } else {
                col > 0 && col + 1 < m
            };
            assert_eq!(d == 6, interior, "m={m} q={q}");
        }
    }
}
