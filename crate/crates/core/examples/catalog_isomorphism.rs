// Catalog graphs, relabelings and the isomorphism test.
//
//     cargo run --release --example catalog_isomorphism

use coising::graph::{are_isomorphic, catalog, find_isomorphism, VertexPermutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> coising::Result<()> {
    for name in catalog::names() {
        let g = catalog::get(name)?;
        println!("{name}: {} vertices, {} edges", g.n(), g.num_edges());
    }

    // Members of a tuple share a spectrum but not a shape.
    let (a, b) = (catalog::get("G17")?, catalog::get("G17p")?);
    println!("G17 ~ G17p: {}", are_isomorphic(&a, &b));

    // A random relabeling is recovered, with the permutation as witness.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = VertexPermutation::random(a.n(), &mut rng);
    let shuffled = a.relabel(&p)?;
    let witness = find_isomorphism(&a, &shuffled).expect("relabelings are isomorphic");
    assert_eq!(a.relabel(&witness)?, shuffled);
    println!(
        "G17 ~ relabeled G17: true, witness {:?}",
        witness.as_slice()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
