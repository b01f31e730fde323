// Sweeps three graphs and decides which pairs differ. G13i is a relabeled
// G13 and serves as the control.
//
//     cargo run --release --example discriminate

use coising::experiment::{discriminate, SweepConfig};
use coising::graph::catalog;

pub fn run_example() -> coising::Result<()> {
    let cfg = SweepConfig {
        s_grid: vec![0.425],
        ..SweepConfig::default()
    };
    let graphs: Vec<(String, _)> = ["G13", "G13p", "G13i"]
        .into_iter()
        .map(|name| Ok((name.to_string(), catalog::resolve(name, cfg.seed)?)))
        .collect::<coising::Result<_>>()?;
    for v in discriminate(&graphs, &cfg, None)? {
        println!(
            "{} vs {}: distinguishable {} ({} at s_p = {}, separation {:.3e})",
            v.pair.0, v.pair.1, v.distinguishable, v.best_observable, v.best_sp, v.separation
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
