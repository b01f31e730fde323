//! Search for rooted trees that share a rooted Ising polynomial.
//!
//! Free trees come from the Beyer-Hedetniemi rooted level-sequence
//! generator, deduplicated by the AHU code of the tree rooted at its
//! centroid(s). Roots are then deduplicated per tree by the rooted AHU code.

use std::collections::{BTreeMap, BTreeSet};

use super::{rooted_spectrum, IsingPolynomial, RootedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_TREE_SEARCH: usize = 12;

/// Non-isomorphic rooted trees with at most `max_n` vertices that have
/// identical rooted polynomials, grouped pairwise.
pub fn find_co_rooted_trees(max_n: usize) -> Result<Vec<(RootedGraph, RootedGraph)>> {
    if max_n > MAX_TREE_SEARCH {
        return Err(Error::invalid(format!(
            "tree search is limited to {MAX_TREE_SEARCH} vertices, got {max_n}"
        )));
    }
    let mut groups: BTreeMap<IsingPolynomial, Vec<RootedGraph>> = BTreeMap::new();
    for n in 1..=max_n {
        for tree in free_trees(n) {
            let mut seen = BTreeSet::new();
            for root in 0..n {
                if seen.insert(rooted_tree_code(&tree, root)) {
                    let rg = RootedGraph::new(tree.clone(), root)?;
                    groups.entry(rooted_spectrum(&rg)?).or_default().push(rg);
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for members in groups.values() {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                pairs.push((members[i].clone(), members[j].clone()));
            }
        }
    }
    Ok(pairs)
}

/// One representative of every free tree on `n` vertices.
pub fn free_trees(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for levels in RootedTrees::new(n) {
        let tree = tree_from_levels(&levels);
        if seen.insert(free_tree_code(&tree)) {
            out.push(tree);
        }
    }
    out
}

/// Canonical string of `tree` rooted at `root`; equal strings mean
/// root-preserving isomorphic trees.
pub fn rooted_tree_code(tree: &Graph, root: usize) -> String {
    let adj = tree.neighbors();
    code(&adj, root, usize::MAX)
}

fn code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| code(adj, w, v))
        .collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

fn free_tree_code(tree: &Graph) -> String {
    centroids(tree)
        .into_iter()
        .map(|c| rooted_tree_code(tree, c))
        .min()
        .expect("every tree has a centroid")
}

fn centroids(tree: &Graph) -> Vec<usize> {
    let n = tree.n();
    let adj = tree.neighbors();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let heaviest = |v: usize| -> usize {
        let up = n - size[v];
        adj[v]
            .iter()
            .filter(|&&w| parent[w] == v)
            .map(|&w| size[w])
            .max()
            .unwrap_or(0)
            .max(up)
    };
    let best = (0..n).map(heaviest).min().unwrap_or(0);
    (0..n).filter(|&v| heaviest(v) == best).collect()
}

/// Level sequence (root at level 0, preorder) to tree.
fn tree_from_levels(levels: &[usize]) -> Graph {
    let mut last_at_level: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for (v, &l) in levels.iter().enumerate() {
        last_at_level.truncate(l);
        if l > 0 {
            edges.push((last_at_level[l - 1], v));
        }
        last_at_level.push(v);
    }
    Graph::new(levels.len(), edges).expect("level sequences describe trees")
}

/// Beyer-Hedetniemi successor iteration over canonical level sequences:
/// every rooted tree on `n` vertices exactly once.
struct RootedTrees {
    levels: Option<Vec<usize>>,
}

impl RootedTrees {
    fn new(n: usize) -> Self {
        RootedTrees {
            levels: (n > 0).then(|| (0..n).collect()),
        }
    }
}

impl Iterator for RootedTrees {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.levels.take()?;
        let mut next = current.clone();
        if let Some(p) = (1..next.len()).rev().find(|&p| next[p] > 1) {
            let q = (0..p)
                .rev()
                .find(|&q| next[q] == next[p] - 1)
                .expect("parent level exists");
            let shift = p - q;
            for i in p..next.len() {
                next[i] = next[i - shift];
            }
            self.levels = Some(next);
        }
        Some(current)
    }
}
