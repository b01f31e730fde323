// Stochastic trace estimation for states too large to diagonalize,
// checked here against the exact answer on a small graph.
//
//     cargo run --release --example stochastic_thermal

use coising::graph::Graph;
use coising::quantum::{
    default_schedule, thermal_dense, thermal_stochastic, IsingInstance, Observable,
    StochasticParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> coising::Result<()> {
    let g = Graph::random(11, 0.3, &mut ChaCha8Rng::seed_from_u64(8))?;
    let inst = IsingInstance::from_graph(&g);
    let sched = default_schedule();
    let params = StochasticParams {
        num_probes: 30,
        krylov_dim: 60,
        seed: 1,
        ..StochasticParams::default()
    };
    let est = thermal_stochastic(&inst, 0.5, &sched, &params)?;
    let exact = thermal_dense(&inst, 0.5, &sched)?.observables;
    println!(
        "converged: {} (residual {:.1e})",
        est.converged, est.max_residual
    );
    for o in Observable::ALL {
        println!(
            "{o:>13}: {:9.5} +- {:.5}  exact {:9.5}",
            est.observables.get(o),
            est.observables.stderr(o),
            exact.get(o)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
