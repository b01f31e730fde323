//! Ising polynomials of graphs too large to enumerate, via their
//! block-cut tree.
//!
//! Rooting the block-cut tree at a vertex, the rooted polynomial of the
//! part below a vertex `v` is the rooted composition of one factor per child
//! block. A block factor enumerates the block with `v` up and, for every
//! other cut vertex `w` of the block, multiplies in the (reflected, when
//! `w` is down) rooted polynomial of what hangs below `w`, removing the
//! doubly counted spin of `w`. Only blocks are ever enumerated.

use super::enumerate::histogram;
use super::{
    compose_rooted, convolve, rooted_spectrum, IsingPolynomial, RootedGraph, ENUMERATION_LIMIT,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Polynomial of any graph whose blocks have at most
/// [`ENUMERATION_LIMIT`] vertices. Agrees with
/// [`classical_spectrum`](super::classical_spectrum) wherever both apply.
pub fn classical_spectrum_auto(g: &Graph) -> Result<IsingPolynomial> {
    let mut total: Option<IsingPolynomial> = None;
    for comp in g.components() {
        let sub = g.induced(&comp)?;
        let z = component_spectrum(&sub)?;
        total = Some(match total {
            None => z,
            Some(t) => t.disjoint_union(&z),
        });
    }
    Ok(total.expect("graphs have at least one vertex"))
}

/// Whether two graphs have identical Ising polynomials.
pub fn co_ising(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n() != g2.n() || g1.num_edges() != g2.num_edges() {
        return Ok(false);
    }
    Ok(classical_spectrum_auto(g1)? == classical_spectrum_auto(g2)?)
}

/// Cut vertices, sorted.
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let blocks = biconnected_blocks(g);
    let mut count = vec![0usize; g.n()];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    (0..g.n()).filter(|&v| count[v] > 1).collect()
}

/// The pieces hanging off `v`: each connected component of `g - v` together
/// with `v`, rooted at `v`. Vertices keep their relative order, so within a
/// piece the root is wherever `v` falls in that order.
pub fn split_at_vertex(g: &Graph, v: usize) -> Result<Vec<RootedGraph>> {
    if v >= g.n() {
        return Err(Error::invalid(format!(
            "vertex {} outside 1..={}",
            v + 1,
            g.n()
        )));
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    let without = g.induced(&rest)?;
    let mut pieces = Vec::new();
    for comp in without.components() {
        let mut verts: Vec<usize> = comp.iter().map(|&k| rest[k]).collect();
        verts.push(v);
        verts.sort_unstable();
        let root = verts.iter().position(|&u| u == v).expect("v was inserted");
        pieces.push(RootedGraph::new(g.induced(&verts)?, root)?);
    }
    Ok(pieces)
}

/// Full polynomial from the pieces at `v`: composition of their rooted
/// polynomials plus its reflection. Each piece is enumerated directly.
pub fn spectrum_from_pieces(pieces: &[RootedGraph]) -> Result<IsingPolynomial> {
    let mut acc = IsingPolynomial::rooted_vertex();
    for p in pieces {
        acc = compose_rooted(&acc, &rooted_spectrum(p)?);
    }
    acc.add(&acc.reflect_m())
}

pub(crate) struct Block {
    pub vertices: Vec<usize>,
}

/// Hopcroft-Tarjan biconnected components (iterative DFS). Isolated
/// vertices belong to no block.
pub(crate) fn biconnected_blocks(g: &Graph) -> Vec<Block> {
    let n = g.n();
    let adj = g.neighbors();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for start in 0..n {
        if disc[start] != usize::MAX || adj[start].is_empty() {
            continue;
        }
        disc[start] = time;
        low[start] = time;
        time += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        blocks.push(Block { vertices: verts });
                    }
                }
            }
        }
    }
    blocks
}

fn component_spectrum(g: &Graph) -> Result<IsingPolynomial> {
    if g.n() == 1 {
        let up = IsingPolynomial::rooted_vertex();
        return up.add(&up.reflect_m());
    }
    let blocks = biconnected_blocks(g);
    if let Some(big) = blocks.iter().find(|b| b.vertices.len() > ENUMERATION_LIMIT) {
        return Err(Error::TooLarge {
            what: "biconnected component".into(),
            size: big.vertices.len(),
            limit: ENUMERATION_LIMIT,
            hint: String::new(),
        });
    }
    let mut vertex_blocks = vec![Vec::new(); g.n()];
    for (b, block) in blocks.iter().enumerate() {
        for &v in &block.vertices {
            vertex_blocks[v].push(b);
        }
    }
    let tree = BlockTree {
        g,
        blocks: &blocks,
        vertex_blocks: &vertex_blocks,
    };
    let rooted = tree.below_vertex(0, None)?;
    rooted.add(&rooted.reflect_m())
}

struct BlockTree<'a> {
    g: &'a Graph,
    blocks: &'a [Block],
    vertex_blocks: &'a [Vec<usize>],
}

impl BlockTree<'_> {
    /// Rooted polynomial (root `v` up) of everything below `v` when entered
    /// from `parent`.
    fn below_vertex(&self, v: usize, parent: Option<usize>) -> Result<IsingPolynomial> {
        let mut acc = IsingPolynomial::rooted_vertex();
        for &b in &self.vertex_blocks[v] {
            if Some(b) != parent {
                acc = compose_rooted(&acc, &self.below_block(b, v)?);
            }
        }
        Ok(acc)
    }

    fn below_block(&self, b: usize, top: usize) -> Result<IsingPolynomial> {
        let verts = &self.blocks[b].vertices;
        let local = self.g.induced(verts)?;
        let local_top = verts
            .iter()
            .position(|&u| u == top)
            .expect("top lies in its block");
        let attach: Vec<usize> = (0..verts.len())
            .filter(|&k| k != local_top && self.vertex_blocks[verts[k]].len() > 1)
            .collect();
        // For each attachment: (factor when up, factor when down), each with
        // the attachment's own spin divided out.
        let mut factors = Vec::with_capacity(attach.len());
        for &k in &attach {
            let below = self.below_vertex(verts[k], Some(b))?;
            let extra = below.n() - 1;
            let up = convolve(&below, &IsingPolynomial::rooted_vertex(), -2, extra);
            let down = convolve(
                &below.reflect_m(),
                &IsingPolynomial::rooted_vertex(),
                0,
                extra,
            );
            factors.push((up, down));
        }
        let hist = histogram(&local, Some(local_top), &attach);
        let extra: usize = factors.iter().map(|(up, _)| up.n()).sum();
        let n_total = verts.len() + extra;
        let mut result = IsingPolynomial::from_terms(n_total, std::iter::empty());
        for (pattern, part) in hist.by_pattern().into_iter().enumerate() {
            if part.terms().is_empty() {
                continue;
            }
            let mut acc = part;
            for (t, (up, down)) in factors.iter().enumerate() {
                let f = if pattern >> t & 1 == 0 { up } else { down };
                let n = acc.n() + f.n();
                acc = convolve(&acc, f, 0, n);
            }
            result = result.add(&acc)?;
        }
        Ok(result)
    }
}
