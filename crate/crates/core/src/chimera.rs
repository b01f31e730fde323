//! Chimera topologies and native (one qubit per vertex) embeddings.
//!
//! Cell `(row, col)` of `C_m` holds qubits `8 (m row + col) + unit`. Units
//! 0 to 3 form the left side and 4 to 7 the right side of a `K_{4,4}`. Left
//! units couple to the same unit in the cell below, right units to the same
//! unit in the cell to the right.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPermutation};

/// Node expansions allowed per restart.
pub const NODE_BUDGET: u64 = 10_000_000;
/// Restarts before giving up on finding more embeddings.
pub const MAX_RESTARTS: usize = 50;
/// Restarts run together; results are merged in restart order.
const RESTART_BATCH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChimeraTopology {
    m: usize,
    couplers: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// `C_m`: `m x m` cells, `8 m^2` qubits, `16 m^2 + 8 m (m - 1)` couplers.
pub fn chimera_graph(m: usize) -> Result<ChimeraTopology> {
    if m == 0 {
        return Err(Error::invalid("a Chimera grid needs at least one cell"));
    }
    let q = |row: usize, col: usize, unit: usize| 8 * (m * row + col) + unit;
    let mut couplers = Vec::with_capacity(16 * m * m + 8 * m * (m - 1));
    for row in 0..m {
        for col in 0..m {
            for left in 0..4 {
                for right in 4..8 {
                    couplers.push((q(row, col, left), q(row, col, right)));
                }
            }
            for k in 0..4 {
                if row + 1 < m {
                    couplers.push((q(row, col, k), q(row + 1, col, k)));
                }
                if col + 1 < m {
                    couplers.push((q(row, col, k + 4), q(row, col + 1, k + 4)));
                }
            }
        }
    }
    couplers.sort_unstable();
    let mut adjacency = vec![Vec::new(); 8 * m * m];
    for &(a, b) in &couplers {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    Ok(ChimeraTopology {
        m,
        couplers,
        adjacency,
    })
}

impl ChimeraTopology {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_qubits(&self) -> usize {
        self.adjacency.len()
    }

    /// Sorted `(a, b)` pairs with `a < b`.
    pub fn couplers(&self) -> &[(usize, usize)] {
        &self.couplers
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn has_coupler(&self, a: usize, b: usize) -> bool {
        a < self.adjacency.len() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// `(row, col, unit)` of a linear qubit index.
    pub fn coordinates(&self, q: usize) -> (usize, usize, usize) {
        let cell = q / 8;
        (cell / self.m, cell % self.m, q % 8)
    }

    pub fn as_graph(&self) -> Result<Graph> {
        Graph::new(self.num_qubits(), self.couplers.iter().copied())
    }
}

/// Graph vertex `v` (0-based) sits on qubit `assignment[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "EmbeddingDocument", into = "EmbeddingDocument")]
pub struct EmbeddingMap {
    pub graph: String,
    pub chimera_m: usize,
    pub assignment: Vec<usize>,
}

/// Wire form: `{"graph", "chimera_m", "assignment": {"1": qubit, ...}}`
/// with 1-based vertex keys, like the graph file formats.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct EmbeddingDocument {
    graph: String,
    chimera_m: usize,
    assignment: BTreeMap<usize, usize>,
}

impl From<EmbeddingMap> for EmbeddingDocument {
    fn from(e: EmbeddingMap) -> Self {
        EmbeddingDocument {
            graph: e.graph,
            chimera_m: e.chimera_m,
            assignment: e
                .assignment
                .into_iter()
                .enumerate()
                .map(|(v, q)| (v + 1, q))
                .collect(),
        }
    }
}

impl TryFrom<EmbeddingDocument> for EmbeddingMap {
    type Error = Error;

    fn try_from(doc: EmbeddingDocument) -> Result<Self> {
        let n = doc.assignment.len();
        if doc.assignment.keys().copied().ne(1..=n) {
            return Err(Error::invalid(format!(
                "embedding vertices must be exactly 1..={n}"
            )));
        }
        Ok(EmbeddingMap {
            graph: doc.graph,
            chimera_m: doc.chimera_m,
            assignment: doc.assignment.into_values().collect(),
        })
    }
}

impl EmbeddingMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embeddings always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// `g` with vertices renumbered in the order of their qubits, the spin
    /// order a device run would use.
    pub fn physical_graph(&self, g: &Graph) -> Result<Graph> {
        if self.assignment.len() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                actual: self.assignment.len(),
            });
        }
        let mut by_qubit: Vec<usize> = (0..g.n()).collect();
        by_qubit.sort_by_key(|&v| self.assignment[v]);
        let mut rank = vec![0; g.n()];
        for (r, &v) in by_qubit.iter().enumerate() {
            rank[v] = r;
        }
        g.relabel(&VertexPermutation::new(rank)?)
    }

    /// The embedding of `g.relabel(p)` that uses the same qubits.
    pub fn relabeled(&self, p: &VertexPermutation) -> Result<EmbeddingMap> {
        if p.len() != self.assignment.len() {
            return Err(Error::DimensionMismatch {
                expected: self.assignment.len(),
                actual: p.len(),
            });
        }
        let mut assignment = vec![0; p.len()];
        for (v, &q) in self.assignment.iter().enumerate() {
            assignment[p.apply(v)] = q;
        }
        Ok(EmbeddingMap {
            assignment,
            ..self.clone()
        })
    }
}

/// True iff the map is injective, in range, and every edge of `g` lands on
/// a coupler.
pub fn verify_embedding(g: &Graph, topo: &ChimeraTopology, e: &EmbeddingMap) -> bool {
    if e.assignment.len() != g.n() || e.assignment.iter().any(|&q| q >= topo.num_qubits()) {
        return false;
    }
    let distinct: BTreeSet<usize> = e.assignment.iter().copied().collect();
    distinct.len() == g.n()
        && g.edges()
            .iter()
            .all(|&(a, b)| topo.has_coupler(e.assignment[a], e.assignment[b]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSearch {
    /// Distinct embeddings sorted by assignment.
    pub embeddings: Vec<EmbeddingMap>,
    /// Fewer than `k` were found and some restart ran out of nodes, so more
    /// may exist.
    pub budget_exhausted: bool,
    pub restarts: usize,
}

/// Up to `k` distinct native embeddings of `g` into `topo` by randomized
/// backtracking, one per restart. Non-adjacent vertices may land on coupled
/// qubits; those couplers are simply unused. Deterministic given `seed`.
pub fn find_native_embeddings(
    g: &Graph,
    name: &str,
    topo: &ChimeraTopology,
    k: usize,
    seed: u64,
) -> EmbeddingSearch {
    let mut found: Vec<EmbeddingMap> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut exhausted = false;
    let mut restarts = 0;
    while found.len() < k && restarts < MAX_RESTARTS {
        let batch: Vec<usize> = (restarts..(restarts + RESTART_BATCH).min(MAX_RESTARTS)).collect();
        restarts += batch.len();
        let results: Vec<Outcome> = batch
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(r as u64);
                let mut search = Search::new(g, topo, Some(rng), NODE_BUDGET);
                let mut first = None;
                let outcome = search.run(&mut |a| {
                    first = Some(a.to_vec());
                    false
                });
                match (first, outcome) {
                    (Some(a), _) => Outcome::Found(a),
                    (None, Stop::Budget) => Outcome::Budget,
                    (None, _) => Outcome::None,
                }
            })
            .collect();
        for r in results {
            match r {
                Outcome::Found(a) if found.len() < k => {
                    if seen.insert(a.clone()) {
                        found.push(EmbeddingMap {
                            graph: name.to_string(),
                            chimera_m: topo.m(),
                            assignment: a,
                        });
                    }
                }
                Outcome::Budget => exhausted = true,
                _ => {}
            }
        }
        if found.is_empty() && !exhausted {
            // A complete search found nothing: no embedding exists.
            break;
        }
    }
    found.sort();
    EmbeddingSearch {
        budget_exhausted: exhausted && found.len() < k,
        embeddings: found,
        restarts,
    }
}

/// Every native embedding in a fixed order, up to `limit`. `None` when the
/// node budget ran out first.
pub fn enumerate_native_embeddings(
    g: &Graph,
    topo: &ChimeraTopology,
    limit: usize,
) -> Option<Vec<Vec<usize>>> {
    let mut all = Vec::new();
    let mut search = Search::new(g, topo, None, NODE_BUDGET);
    let stop = search.run(&mut |a| {
        all.push(a.to_vec());
        all.len() < limit
    });
    (stop != Stop::Budget).then_some(all)
}

enum Outcome {
    Found(Vec<usize>),
    Budget,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Finished,
    Callback,
    Budget,
}

struct Search<'a> {
    topo: &'a ChimeraTopology,
    degree: Vec<usize>,
    order: Vec<usize>,
    /// For each vertex, its neighbors placed before it.
    earlier: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    used: Vec<bool>,
    rng: Option<ChaCha8Rng>,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(g: &Graph, topo: &'a ChimeraTopology, mut rng: Option<ChaCha8Rng>, budget: u64) -> Self {
        let n = g.n();
        let nbrs = g.neighbors();
        let degree = g.degrees();
        // Grow the order from placed vertices: most placed neighbors first,
        // then highest degree, ties broken at random (or by index).
        let tiebreak: Vec<u64> = match rng.as_mut() {
            Some(r) => (0..n).map(|_| r.gen()).collect(),
            None => (0..n).map(|v| (n - v) as u64).collect(),
        };
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], degree[v], tiebreak[v]))
                .expect("an unplaced vertex remains");
            placed[v] = true;
            order.push(v);
            for &u in &nbrs[v] {
                links[u] += 1;
            }
        }
        let mut position = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let earlier = (0..n)
            .map(|v| {
                nbrs[v]
                    .iter()
                    .copied()
                    .filter(|&u| position[u] < position[v])
                    .collect()
            })
            .collect();
        Search {
            topo,
            degree,
            order,
            earlier,
            assignment: vec![usize::MAX; n],
            used: vec![false; topo.num_qubits()],
            rng,
            budget,
        }
    }

    fn run(&mut self, on_solution: &mut dyn FnMut(&[usize]) -> bool) -> Stop {
        if self.order.is_empty() {
            return if on_solution(&[]) {
                Stop::Finished
            } else {
                Stop::Callback
            };
        }
        self.extend(0, on_solution)
    }

    fn candidates(&mut self, v: usize) -> Vec<usize> {
        let topo = self.topo;
        let need = self.degree[v];
        let free_after = need - self.earlier[v].len();
        let fits = |q: usize, used: &[bool]| {
            !used[q]
                && topo.neighbors(q).len() >= need
                && topo.neighbors(q).iter().filter(|&&r| !used[r]).count() >= free_after
        };
        let mut cands: Vec<usize> = match self.earlier[v].first() {
            None => (0..topo.num_qubits())
                .filter(|&q| fits(q, &self.used))
                .collect(),
            Some(&u) => topo
                .neighbors(self.assignment[u])
                .iter()
                .copied()
                .filter(|&q| fits(q, &self.used))
                .filter(|&q| {
                    self.earlier[v]
                        .iter()
                        .all(|&w| topo.has_coupler(q, self.assignment[w]))
                })
                .collect(),
        };
        if let Some(rng) = self.rng.as_mut() {
            cands.shuffle(rng);
        }
        cands
    }

    fn extend(&mut self, depth: usize, on_solution: &mut dyn FnMut(&[usize]) -> bool) -> Stop {
        let v = self.order[depth];
        for q in self.candidates(v) {
            if self.budget == 0 {
                return Stop::Budget;
            }
            self.budget -= 1;
            self.assignment[v] = q;
            self.used[q] = true;
            let stop = if depth + 1 == self.order.len() {
                if on_solution(&self.assignment) {
                    Stop::Finished
                } else {
                    Stop::Callback
                }
            } else {
                self.extend(depth + 1, on_solution)
            };
            self.used[q] = false;
            self.assignment[v] = usize::MAX;
            if stop != Stop::Finished {
                return stop;
            }
        }
        Stop::Finished
    }
}
