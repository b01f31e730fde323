// Native embeddings of a catalog graph into a 2048-qubit Chimera graph.
//
//     cargo run --release --example chimera_embedding

use coising::chimera::{chimera_graph, find_native_embeddings, verify_embedding};
use coising::graph::catalog;

pub fn run_example() -> coising::Result<()> {
    let topo = chimera_graph(16)?;
    println!(
        "C16: {} qubits, {} couplers",
        topo.num_qubits(),
        topo.couplers().len()
    );
    let g = catalog::get("G25p1")?;
    let found = find_native_embeddings(&g, "G25p1", &topo, 5, 11);
    println!(
        "{} embeddings after {} restarts",
        found.embeddings.len(),
        found.restarts
    );
    for e in &found.embeddings {
        assert!(verify_embedding(&g, &topo, e));
        let (row, col, unit) = topo.coordinates(e.assignment[0]);
        println!(
            "  vertex 1 on qubit {} (cell {row},{col} unit {unit})",
            e.assignment[0]
        );
    }
    println!("{}", found.embeddings[0].to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
