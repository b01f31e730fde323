//! Labeled simple graphs, vertex permutations and the text formats used to
//! exchange them.
//!
//! Vertices are stored 0-based. Every textual form (edge lists, JSON, the
//! catalog listings) is 1-based, and the conversion happens only at the
//! parse/serialize boundary.

pub mod catalog;
mod iso;
mod parse;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use iso::{are_isomorphic, find_isomorphism, find_isomorphism_colored};
pub use parse::{parse_graph, parse_graph_sized};

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept sorted with `i < j`, so two graphs with the same labeled
/// edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 0-based edges in any orientation and order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let mut canon = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) has an endpoint outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {}", a + 1)));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "duplicate edge ({}, {})",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        Ok(Graph { n, edges: canon })
    }

    /// Builds a graph from 1-based pairs, as they appear in listings.
    pub fn from_one_based(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a == 0 || b == 0) {
            return Err(Error::invalid(format!(
                "vertex label 0 in ({a}, {b}); labels start at 1"
            )));
        }
        Graph::new(n, pairs.iter().map(|&(a, b)| (a - 1, b - 1)))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, std::iter::empty())
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Erdős–Rényi style random graph with edge probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonically ordered 0-based edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Sorted neighbor lists.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Applies a relabeling: edge `(i, j)` becomes `(p(i), p(j))`.
    pub fn relabel(&self, p: &VertexPermutation) -> Result<Graph> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        Graph::new(
            self.n,
            self.edges.iter().map(|&(a, b)| (p.apply(a), p.apply(b))),
        )
    }

    /// Adjacency matrix with zero diagonal.
    pub fn adjacency(&self) -> DMatrix<i64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1;
            a[(j, i)] = 1;
        }
        a
    }

    /// `A(G)^k` in exact integer arithmetic.
    pub fn adjacency_power(&self, k: u32) -> Result<DMatrix<i64>> {
        if k == 0 {
            return Err(Error::invalid("adjacency power needs k >= 1"));
        }
        let a = self.adjacency();
        let mut acc = a.clone();
        for _ in 1..k {
            acc = &acc * &a;
        }
        Ok(acc)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            index[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        Graph::new(vertices.len(), edges)
    }

    /// "n <count>" header followed by one 1-based "i j" pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph documents always serialize")
    }

    /// Bracketed listing, `[(1, 2), (1, 3)]`.
    pub fn to_listing(&self) -> String {
        let pairs: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("({}, {})", a + 1, b + 1))
            .collect();
        format!("[{}]", pairs.join(", "))
    }
}

/// JSON form of a graph: `{"n": 3, "edges": [[1, 2], [2, 3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphDocument> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDocument) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_one_based(doc.n, &pairs)
    }
}

/// A bijection on `0..n`, mapping old label `i` to new label `mapping[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    mapping: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &v in &mapping {
            if v >= mapping.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!(
                    "{mapping:?} is not a permutation of 0..{}",
                    mapping.len()
                )));
            }
        }
        Ok(VertexPermutation { mapping })
    }

    pub fn from_one_based(mapping: &[usize]) -> Result<Self> {
        if mapping.contains(&0) {
            return Err(Error::invalid("1-based permutation contains 0"));
        }
        VertexPermutation::new(mapping.iter().map(|&v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(rng);
        VertexPermutation { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.mapping[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &v) in self.mapping.iter().enumerate() {
            inv[v] = i;
        }
        VertexPermutation { mapping: inv }
    }

    /// `self` after `first`: `v -> self(first(v))`.
    pub fn compose(&self, first: &VertexPermutation) -> Result<Self> {
        if first.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: first.len(),
            });
        }
        Ok(VertexPermutation {
            mapping: first.mapping.iter().map(|&v| self.mapping[v]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_degenerate_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::from_one_based(3, &[(0, 1)]).is_err());
    }

    #[test]
    fn canonical_order_makes_equal_graphs_equal() {
        let a = Graph::new(4, [(3, 1), (0, 2), (2, 1)]).unwrap();
        let b = Graph::new(4, [(1, 2), (0, 2), (1, 3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges(), &[(0, 2), (1, 2), (1, 3)]);
    }

    #[test]
    fn k2_swap_is_k2() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let swap = VertexPermutation::new(vec![1, 0]).unwrap();
        assert_eq!(k2.relabel(&swap).unwrap(), k2);
        assert!(k2.relabel(&VertexPermutation::identity(3)).is_err());
    }

    #[test]
    fn adjacency_square_of_k2_is_identity() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(k2.adjacency_power(2).unwrap(), DMatrix::identity(2, 2));
    }

    #[test]
    fn adjacency_square_of_path() {
        let p3 = Graph::path(3).unwrap();
        let a2 = p3.adjacency_power(2).unwrap();
        assert_eq!((a2[(0, 0)], a2[(1, 1)], a2[(2, 2)]), (1, 2, 1));
        assert_eq!(a2[(0, 2)], 1);
        assert_eq!(a2[(0, 1)], 0);
        assert!(p3.adjacency_power(0).is_err());
    }

    #[test]
    fn adjacency_first_power_has_two_ones_per_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Graph::random(9, 0.4, &mut rng).unwrap();
        let a = g.adjacency_power(1).unwrap();
        assert_eq!(a, a.transpose());
        assert_eq!(a.iter().filter(|&&x| x == 1).count(), 2 * g.num_edges());
        assert_eq!(a.iter().filter(|&&x| x != 0 && x != 1).count(), 0);
    }

    #[test]
    fn permutation_validation_and_inverse() {
        assert!(VertexPermutation::new(vec![0, 0]).is_err());
        assert!(VertexPermutation::new(vec![0, 2]).is_err());
        let p = VertexPermutation::new(vec![2, 0, 1]).unwrap();
        let id = p.compose(&p.inverse()).unwrap();
        assert_eq!(id, VertexPermutation::identity(3));
    }

    #[test]
    fn components_and_induced_subgraphs() {
        let g = Graph::new(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let h = g.induced(&[4, 3]).unwrap();
        assert_eq!(h.edges(), &[(0, 1)]);
    }
}
