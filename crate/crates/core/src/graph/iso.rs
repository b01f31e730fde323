//! Isomorphism testing by backtracking over color-refined candidate sets.
//!
//! Colors start from the caller's vertex colors and the degree, and are
//! refined jointly on both graphs by the multiset of neighbor colors until
//! stable. Differing color histograms prove non-isomorphism; otherwise the
//! search maps vertices in a connectivity-first order, only to vertices of
//! the same color whose adjacency to the already mapped vertices agrees.

use std::collections::BTreeMap;

use super::{Graph, VertexPermutation};

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// A permutation `p` with `g1.relabel(p) == g2`, if one exists.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<VertexPermutation> {
    find_isomorphism_colored(g1, &vec![0; g1.n()], g2, &vec![0; g2.n()])
}

/// Color-preserving isomorphism: vertex `v` of `g1` may only map to a vertex
/// of `g2` with the same color. Rooted graphs are compared by giving the
/// roots a distinct color.
pub fn find_isomorphism_colored(
    g1: &Graph,
    colors1: &[u64],
    g2: &Graph,
    colors2: &[u64],
) -> Option<VertexPermutation> {
    let n = g1.n();
    if n != g2.n() || g1.num_edges() != g2.num_edges() || colors1.len() != n || colors2.len() != n {
        return None;
    }
    let adj1 = g1.neighbors();
    let adj2 = g2.neighbors();
    let (col1, col2) = refine(&adj1, colors1, &adj2, colors2);
    if histogram(&col1) != histogram(&col2) {
        return None;
    }

    let mat1 = dense_adjacency(g1);
    let mat2 = dense_adjacency(g2);
    let class_size = histogram(&col1);
    let order = search_order(&adj1, &col1, &class_size);
    let mut position = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    // Earliest-placed neighbor of each vertex in `order`, used to narrow the
    // candidate list to neighbors of its image.
    let anchor: Vec<Option<usize>> = order
        .iter()
        .map(|&v| {
            adj1[v]
                .iter()
                .copied()
                .filter(|&w| position[w] < position[v])
                .min_by_key(|&w| position[w])
        })
        .collect();

    let mut state = Search {
        n,
        order: &order,
        anchor: &anchor,
        col1: &col1,
        col2: &col2,
        adj2: &adj2,
        mat1: &mat1,
        mat2: &mat2,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if state.extend(0) {
        Some(VertexPermutation::new(state.map).expect("search builds a bijection"))
    } else {
        None
    }
}

struct Search<'a> {
    n: usize,
    order: &'a [usize],
    anchor: &'a [Option<usize>],
    col1: &'a [usize],
    col2: &'a [usize],
    adj2: &'a [Vec<usize>],
    mat1: &'a [bool],
    mat2: &'a [bool],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.n {
            return true;
        }
        let u = self.order[k];
        let candidates: Vec<usize> = match self.anchor[k] {
            Some(a) => self.adj2[self.map[a]].clone(),
            None => (0..self.n).collect(),
        };
        for w in candidates {
            if self.used[w] || self.col2[w] != self.col1[u] || !self.consistent(k, u, w) {
                continue;
            }
            self.map[u] = w;
            self.used[w] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[u] = usize::MAX;
        }
        false
    }

    fn consistent(&self, k: usize, u: usize, w: usize) -> bool {
        self.order[..k].iter().all(|&y| {
            let img = self.map[y];
            self.mat1[u * self.n + y] == self.mat2[w * self.n + img]
        })
    }
}

fn dense_adjacency(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut m = vec![false; n * n];
    for &(a, b) in g.edges() {
        m[a * n + b] = true;
        m[b * n + a] = true;
    }
    m
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Joint 1-dimensional Weisfeiler-Leman refinement.
fn refine(
    adj1: &[Vec<usize>],
    c1: &[u64],
    adj2: &[Vec<usize>],
    c2: &[u64],
) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<(u64, usize), usize> = BTreeMap::new();
    let start = |colors: &[u64], adj: &[Vec<usize>]| -> Vec<(u64, usize)> {
        colors.iter().zip(adj).map(|(&c, a)| (c, a.len())).collect()
    };
    let s1 = start(c1, adj1);
    let s2 = start(c2, adj2);
    for key in s1.iter().chain(&s2) {
        let next = ids.len();
        ids.entry(*key).or_insert(next);
    }
    let mut col1: Vec<usize> = s1.iter().map(|k| ids[k]).collect();
    let mut col2: Vec<usize> = s2.iter().map(|k| ids[k]).collect();
    let mut classes = ids.len();
    loop {
        let sig = |col: &[usize], adj: &[Vec<usize>]| -> Vec<(usize, Vec<usize>)> {
            adj.iter()
                .enumerate()
                .map(|(v, nb)| {
                    let mut m: Vec<usize> = nb.iter().map(|&w| col[w]).collect();
                    m.sort_unstable();
                    (col[v], m)
                })
                .collect()
        };
        let sig1 = sig(&col1, adj1);
        let sig2 = sig(&col2, adj2);
        let mut table: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sig1.iter().chain(&sig2) {
            let next = table.len();
            table.entry(s).or_insert(next);
        }
        let next1: Vec<usize> = sig1.iter().map(|s| table[s]).collect();
        let next2: Vec<usize> = sig2.iter().map(|s| table[s]).collect();
        let count = table.len();
        col1 = next1;
        col2 = next2;
        if count == classes {
            break;
        }
        classes = count;
    }
    (col1, col2)
}

/// Rarest color first, then always the vertex with the most already-placed
/// neighbors.
fn search_order(
    adj: &[Vec<usize>],
    col: &[usize],
    class_size: &BTreeMap<usize, usize>,
) -> Vec<usize> {
    let n = adj.len();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                (
                    std::cmp::Reverse(links[v]),
                    class_size[&col[v]],
                    std::cmp::Reverse(adj[v].len()),
                    v,
                )
            })
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            links[w] += 1;
        }
    }
    order
}
