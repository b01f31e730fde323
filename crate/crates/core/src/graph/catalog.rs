//! The benchmark graphs: classically co-Ising tuples native to Chimera.
//!
//! Listings are kept verbatim (1-based, original edge order). `n` is the
//! largest label in each listing, which matches the number in every name.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{parse_graph, Graph, VertexPermutation};
use crate::error::{Error, Result};

const LISTINGS: &[(&str, &str)] = &[
    (
        "G13",
        "[(1, 8), (1, 10), (1, 11), (1, 13), (2, 9), (2, 11), (2, 13), (3, 10), (3, 13), (4, 10), \
         (5, 11), (6, 12), (7, 12), (9, 12), (12, 13)]",
    ),
    (
        "G13p",
        "[(1, 8), (1, 10), (1, 11), (1, 13), (2, 9), (2, 11), (2, 13), (3, 10), (3, 11), (4, 10), \
         (5, 12), (6, 12), (7, 13), (8, 12), (12, 13)]",
    ),
    (
        "G17",
        "[(1, 2), (1, 3), (1, 4), (1, 5), (4, 6), (4, 7), (5, 8), (5, 9), (5, 10), (6, 11), \
         (10, 12), (10, 13), (10, 14), (11, 15), (11, 16), (12, 17)]",
    ),
    (
        "G17p",
        "[(1, 2), (1, 3), (1, 4), (1, 5), (4, 6), (5, 7), (5, 8), (5, 9), (6, 10), (6, 11), \
         (9, 12), (9, 13), (9, 14), (10, 15), (12, 16), (12, 17)]",
    ),
    (
        "G25p1",
        "[(1, 6), (1, 7), (3, 7), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9), (10, 14), (10, 15), \
         (11, 15), (12, 16), (12, 17), (13, 16), (13, 17), (14, 17), (18, 22), (18, 23), (19, 23), \
         (20, 24), (20, 25), (21, 24), (21, 25), (22, 25), (2, 6), (2, 14), (2, 22)]",
    ),
    (
        "G25p2",
        "[(1, 6), (1, 7), (3, 7), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9), (10, 14), (10, 15), \
         (11, 15), (12, 16), (12, 17), (13, 16), (13, 17), (14, 17), (18, 23), (18, 25), (19, 22), \
         (19, 24), (20, 23), (20, 25), (21, 24), (21, 25), (2, 6), (2, 14), (2, 18)]",
    ),
    (
        "G25p3",
        "[(1, 6), (1, 7), (3, 7), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9), (10, 15), (10, 17), \
         (11, 14), (11, 16), (12, 15), (12, 17), (13, 16), (13, 17), (18, 23), (18, 25), (19, 22), \
         (19, 24), (20, 23), (20, 25), (21, 24), (21, 25), (2, 6), (2, 10), (2, 18)]",
    ),
    (
        "G25p4",
        "[(1, 7), (1, 9), (2, 6), (2, 8), (3, 7), (3, 9), (4, 8), (4, 9), (10, 15), (10, 17), \
         (11, 14), (11, 16), (12, 15), (12, 17), (13, 16), (13, 17), (18, 23), (18, 25), (19, 22), \
         (19, 24), (20, 23), (20, 25), (21, 24), (21, 25), (5, 1), (5, 10), (5, 18)]",
    ),
    (
        "G27",
        "[(1, 14), (1, 17), (2, 14), (2, 22), (3, 4), (3, 5), (4, 10), (4, 12), (5, 11), (5, 13), \
         (6, 7), (6, 8), (6, 15), (7, 10), (7, 11), (8, 12), (8, 13), (9, 12), (9, 13), (9, 14), \
         (10, 15 ), (11, 15), (14, 15), (16, 17), (16, 21), (17, 18), (18, 19), (19, 20), (20, 21), \
         (22, 23), (22, 27), (23, 24), (24, 25), (25, 26), (26, 27)]",
    ),
    (
        "G27p",
        "[(1, 14), (1, 17), (2, 14), (2, 23), (3, 4), (3, 5), (4, 10), (4, 11), (5, 12), (5, 13), \
         (6, 7), (6, 8), (6, 15), (7, 10), (7, 12), (8, 11), (8, 13), (9, 12), (9, 13), (9, 14), \
         (10, 15), (11, 15), (14, 15), (16, 17), (16, 21), (17, 18), (18, 19), (19, 20), (20, 21), \
         (22, 23), (22, 27), (23, 24), (24, 25), (25, 26), (26, 27)]",
    ),
    (
        "G33",
        "[(1, 6), (1, 7), (3, 7), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9), (10, 14), (10, 15), \
         (11, 15), (12, 16), (12, 17), (13, 16), (13, 17), (14, 17), (18, 22), (18, 23), (19, 23), \
         (20, 24), (20, 25), (21, 24), (21, 25), (22, 25), (26, 30), (26, 31), (27, 31), (28, 32), \
         (28, 33), (29, 32), (29, 33), (30, 33), (2, 6), (2, 14), (2, 22), (2, 30)]",
    ),
    (
        "G33p",
        "[(1, 6), (1, 7), (3, 7), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9), (10, 14), (10, 15), \
         (11, 15), (12, 16), (12, 17), (13, 16), (13, 17), (14, 17), (18, 22), (18, 23), (19, 23), \
         (20, 24), (20, 25), (21, 24), (21, 25), (22, 25), (26, 31), (26, 33), (27, 30), (27, 32), \
         (28, 31), (28, 33), (29, 32), (29, 33), (2, 6), (2, 14), (2, 22), (2, 26)]",
    ),
    (
        "G33p1",
        "[(1, 6), (1, 7), (3, 7), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9), (10, 15), (10, 17), \
         (11, 14), (11, 16), (12, 15), (12, 17), (13, 16), (13, 17), (18, 23), (18, 25), (19, 22), \
         (19, 24), (20, 23), (20, 25), (21, 24), (21, 25), (26, 31), (26, 33), (27, 30), (27, 32), \
         (28, 31), (28, 33), (29, 32), (29, 33), (2, 6), (2, 10), (2, 18), (2, 26)]",
    ),
    (
        "G33p2",
        "[(1, 6), (1, 7), (2, 6), (3, 7), (4, 8), (4, 9), (6, 9), (10, 15), (10, 17), (11, 14), \
         (11, 16), (12, 15), (12, 17), (13, 16), (13, 17), (18, 23), (18, 25), (19, 22), (19, 24), \
         (20, 23), (20, 25), (21, 24), (21, 25), (26, 31), (26, 33), (27, 30), (27, 32), (28, 31), \
         (28, 33), (29, 32), (29, 33), (5, 8), (5, 9), (5, 10), (5, 18), (5, 26)]",
    ),
];

/// The co-Ising tuples, smallest first.
pub const TUPLES: &[&[&str]] = &[
    &["G13", "G13p"],
    &["G17", "G17p"],
    &["G25p1", "G25p2", "G25p3", "G25p4"],
    &["G27", "G27p"],
    &["G33", "G33p", "G33p1", "G33p2"],
];

pub fn names() -> Vec<&'static str> {
    LISTINGS.iter().map(|(name, _)| *name).collect()
}

/// Verbatim edge listing of a catalog graph.
pub fn listing(name: &str) -> Result<&'static str> {
    LISTINGS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, l)| *l)
        .ok_or_else(|| unknown(name))
}

pub fn get(name: &str) -> Result<Graph> {
    parse_graph(listing(name)?)
}

/// Resolves a catalog name, also accepting isomorphic variants: `G13i` is
/// `G13` under a random relabeling drawn from `seed`.
pub fn resolve(name: &str, seed: u64) -> Result<Graph> {
    if let Ok(g) = get(name) {
        return Ok(g);
    }
    match name.strip_suffix('i') {
        Some(base) if listing(base).is_ok() => isomorphic_variant(&get(base)?, seed),
        _ => Err(unknown(name)),
    }
}

/// A seeded random relabeling of `g`.
pub fn isomorphic_variant(g: &Graph, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.relabel(&VertexPermutation::random(g.n(), &mut rng))
}

fn unknown(name: &str) -> Error {
    Error::UnknownGraph {
        name: name.to_string(),
        valid: names().into_iter().map(String::from).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_match_names() {
        let expected = [
            ("G13", 13, 15),
            ("G13p", 13, 15),
            ("G17", 17, 16),
            ("G17p", 17, 16),
            ("G25p1", 25, 27),
            ("G25p2", 25, 27),
            ("G25p3", 25, 27),
            ("G25p4", 25, 27),
            ("G27", 27, 35),
            ("G27p", 27, 35),
            ("G33", 33, 36),
            ("G33p", 33, 36),
            ("G33p1", 33, 36),
            ("G33p2", 33, 36),
        ];
        for (name, n, m) in expected {
            let g = get(name).unwrap();
            assert_eq!((g.n(), g.num_edges()), (n, m), "{name}");
        }
    }

    #[test]
    fn unknown_names_list_the_valid_ones() {
        let err = get("G99").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("G99") && msg.contains("G33p2"), "{msg}");
        assert!(resolve("G99i", 1).is_err());
    }

    #[test]
    fn variants_are_seeded() {
        let a = resolve("G13i", 7).unwrap();
        assert_eq!(a, resolve("G13i", 7).unwrap());
        assert_ne!(a, get("G13").unwrap());
    }
}
