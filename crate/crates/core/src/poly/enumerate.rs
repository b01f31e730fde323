//! Gray-code enumeration of spin configurations.
//!
//! Each step flips one spin, so `e` and `m` are updated from the flipped
//! spin's neighborhood: with spins stored as a "down" bitmask, the sum of
//! neighbor spins is `deg - 2 * popcount(down & neighbors)`.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::IsingPolynomial;
use crate::graph::Graph;

const DENSE_CELLS: usize = 1 << 26;

/// Counts keyed by (pattern of tracked spins, e, m). Bit `t` of a pattern
/// is set when tracked vertex `t` points down.
pub(crate) struct Histogram {
    pub n: usize,
    pub tracked: usize,
    counts: Counts,
    e_off: i64,
    m_off: i64,
    e_span: usize,
    m_span: usize,
}

enum Counts {
    Dense(Vec<u64>),
    Sparse(HashMap<(u32, i64, i64), u64>),
}

impl Histogram {
    /// Entries as `(pattern, e, m, count)`.
    pub fn entries(&self) -> Vec<(u32, i64, i64, u64)> {
        let mut out = Vec::new();
        match &self.counts {
            Counts::Dense(v) => {
                for (idx, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let m = (idx % self.m_span) as i64 - self.m_off;
                    let rest = idx / self.m_span;
                    let e = (rest % self.e_span) as i64 - self.e_off;
                    let pattern = (rest / self.e_span) as u32;
                    out.push((pattern, e, m, c));
                }
            }
            Counts::Sparse(map) => {
                out.extend(map.iter().map(|(&(p, e, m), &c)| (p, e, m, c)));
                out.sort_unstable();
            }
        }
        out
    }

    /// One polynomial per tracked pattern, indexed by pattern.
    pub fn by_pattern(&self) -> Vec<IsingPolynomial> {
        let mut parts: Vec<Vec<((i64, i64), BigUint)>> = vec![Vec::new(); 1 << self.tracked];
        for (p, e, m, c) in self.entries() {
            parts[p as usize].push(((e, m), BigUint::from(c)));
        }
        parts
            .into_iter()
            .map(|terms| IsingPolynomial::from_terms(self.n, terms))
            .collect()
    }

    /// All patterns merged.
    pub fn into_polynomial(self) -> IsingPolynomial {
        IsingPolynomial::from_terms(
            self.n,
            self.entries()
                .into_iter()
                .map(|(_, e, m, c)| ((e, m), BigUint::from(c))),
        )
    }
}

/// Enumerates every configuration of `g`, with `fixed_up` (if any) held at
/// spin +1, recording the spins of the `tracked` vertices.
pub(crate) fn histogram(g: &Graph, fixed_up: Option<usize>, tracked: &[usize]) -> Histogram {
    let n = g.n();
    assert!(n <= 63, "enumeration works on at most 63 vertices");
    assert!(tracked.len() < 32);
    let mut nbr = vec![0u64; n];
    for &(a, b) in g.edges() {
        nbr[a] |= 1 << b;
        nbr[b] |= 1 << a;
    }
    let deg: Vec<i64> = nbr.iter().map(|m| m.count_ones() as i64).collect();
    let mut track_bit = vec![0u32; n];
    for (t, &v) in tracked.iter().enumerate() {
        track_bit[v] = 1 << t;
    }
    let free: Vec<usize> = (0..n).filter(|&v| Some(v) != fixed_up).collect();

    let e_off = g.num_edges() as i64;
    let m_off = n as i64;
    let e_span = 2 * g.num_edges() + 1;
    let m_span = 2 * n + 1;
    let cells = (1usize << tracked.len())
        .saturating_mul(e_span)
        .saturating_mul(m_span);
    let mut counts = if cells <= DENSE_CELLS {
        Counts::Dense(vec![0u64; cells])
    } else {
        Counts::Sparse(HashMap::new())
    };

    let mut down = 0u64;
    let mut pattern = 0u32;
    let mut e = g.num_edges() as i64;
    let mut m = n as i64;
    let mut record = |pattern: u32, e: i64, m: i64| match &mut counts {
        Counts::Dense(v) => {
            let idx = ((pattern as usize * e_span) + (e + e_off) as usize) * m_span
                + (m + m_off) as usize;
            v[idx] += 1;
        }
        Counts::Sparse(map) => *map.entry((pattern, e, m)).or_insert(0) += 1,
    };
    record(pattern, e, m);
    for step in 1u64..(1u64 << free.len()) {
        let v = free[step.trailing_zeros() as usize];
        let bit = 1u64 << v;
        let s_v: i64 = if down & bit == 0 { 1 } else { -1 };
        let nbr_sum = deg[v] - 2 * (down & nbr[v]).count_ones() as i64;
        e -= 2 * s_v * nbr_sum;
        m -= 2 * s_v;
        down ^= bit;
        pattern ^= track_bit[v];
        record(pattern, e, m);
    }

    Histogram {
        n,
        tracked: tracked.len(),
        counts,
        e_off,
        m_off,
        e_span,
        m_span,
    }
}
