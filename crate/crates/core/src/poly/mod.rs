//! Exact Ising polynomials.
//!
//! `Z(G; x, y) = sum_s x^e(s) y^m(s)` with `e(s) = sum_(i,j) s_i s_j` over
//! edges and `m(s) = sum_i s_i`. Keeping the field term in its own exponent
//! makes a global spin flip act as `m -> -m` with `e` fixed, which is what
//! the rooted decomposition relies on. The classical energy of a
//! configuration under unit couplings and unit field is `e + m`, so equal
//! polynomials mean equal problem-Hamiltonian spectra.
//!
//! All counts are arbitrary-precision integers.

mod decompose;
mod enumerate;
mod trees;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use decompose::{
    articulation_points, classical_spectrum_auto, co_ising, spectrum_from_pieces, split_at_vertex,
};
pub use trees::{find_co_rooted_trees, free_trees, rooted_tree_code, MAX_TREE_SEARCH};

/// Largest vertex count enumerated directly (2^28 configurations).
pub const ENUMERATION_LIMIT: usize = 28;

/// Map from `(e, m)` to the number of spin configurations with that
/// interaction energy and magnetization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsingPolynomial {
    n: usize,
    terms: BTreeMap<(i64, i64), BigUint>,
}

impl IsingPolynomial {
    /// Builds a polynomial, dropping zero counts.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = ((i64, i64), BigUint)>) -> Self {
        let mut map: BTreeMap<(i64, i64), BigUint> = BTreeMap::new();
        for (key, count) in terms {
            if !count.is_zero() {
                *map.entry(key).or_default() += count;
            }
        }
        IsingPolynomial { n, terms: map }
    }

    /// Rooted polynomial of a single vertex with spin up: `y`.
    pub fn rooted_vertex() -> Self {
        IsingPolynomial::from_terms(1, [((0, 1), BigUint::one())])
    }

    /// Number of vertices the polynomial was computed over.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigUint> {
        &self.terms
    }

    pub fn count(&self, e: i64, m: i64) -> BigUint {
        self.terms.get(&(e, m)).cloned().unwrap_or_default()
    }

    /// Sum of all counts: `2^n` for a full polynomial, `2^(n-1)` rooted.
    pub fn total(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// `Z(x, 1/y)`: every magnetization negated.
    pub fn reflect_m(&self) -> Self {
        IsingPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(&(e, m), c)| ((e, -m), c.clone()))
                .collect(),
        }
    }

    /// Termwise sum of two polynomials over the same vertex count.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            *terms.entry(*k).or_default() += c;
        }
        Ok(IsingPolynomial { n: self.n, terms })
    }

    /// Product of polynomials of disjoint graphs.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        convolve(self, other, 0, self.n + other.n)
    }

    /// Classical spectrum of `H_p` with unit couplings and field: energy
    /// `e + m` with multiplicity.
    pub fn energy_spectrum(&self) -> BTreeMap<i64, BigUint> {
        let mut out: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (&(e, m), c) in &self.terms {
            *out.entry(e + m).or_default() += c;
        }
        out
    }

    /// `{"n": n, "terms": {"e,m": "count"}}` with sorted keys.
    pub fn to_json_value(&self) -> Value {
        let mut terms = Map::new();
        for (&(e, m), c) in &self.terms {
            terms.insert(format!("{e},{m}"), Value::String(c.to_string()));
        }
        let mut root = Map::new();
        root.insert("n".into(), Value::from(self.n));
        root.insert("terms".into(), Value::Object(terms));
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("values always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, format!("polynomial JSON: {msg}"));
        let value: Value = serde_json::from_str(text)?;
        let n = value["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let terms = value["terms"]
            .as_object()
            .ok_or_else(|| bad("missing terms"))?;
        let mut out = Vec::new();
        for (key, count) in terms {
            let (e, m) = key.split_once(',').ok_or_else(|| bad("key is not `e,m`"))?;
            let e: i64 = e.trim().parse().map_err(|_| bad("bad e"))?;
            let m: i64 = m.trim().parse().map_err(|_| bad("bad m"))?;
            let c: BigUint = count
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("count is not a decimal string"))?;
            out.push(((e, m), c));
        }
        Ok(IsingPolynomial::from_terms(n, out))
    }
}

/// `a * b * y^m_shift`, tagged with vertex count `n`.
pub(crate) fn convolve(
    a: &IsingPolynomial,
    b: &IsingPolynomial,
    m_shift: i64,
    n: usize,
) -> IsingPolynomial {
    let mut terms: BTreeMap<(i64, i64), BigUint> = BTreeMap::new();
    for (&(e1, m1), c1) in &a.terms {
        for (&(e2, m2), c2) in &b.terms {
            *terms.entry((e1 + e2, m1 + m2 + m_shift)).or_default() += c1 * c2;
        }
    }
    IsingPolynomial { n, terms }
}

/// A graph with a distinguished vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        if root >= graph.n() {
            return Err(Error::invalid(format!(
                "root {} outside 1..={}",
                root + 1,
                graph.n()
            )));
        }
        Ok(RootedGraph { graph, root })
    }

    pub fn single_vertex() -> Self {
        RootedGraph {
            graph: Graph::empty(1).expect("one vertex"),
            root: 0,
        }
    }
}

/// Polynomial by direct enumeration of all `2^n` configurations.
pub fn classical_spectrum(g: &Graph) -> Result<IsingPolynomial> {
    check_limit(g.n())?;
    let hist = enumerate::histogram(g, None, &[]);
    Ok(hist.into_polynomial())
}

/// Polynomial restricted to configurations with the root spin up.
pub fn rooted_spectrum(rg: &RootedGraph) -> Result<IsingPolynomial> {
    check_limit(rg.graph.n())?;
    let hist = enumerate::histogram(&rg.graph, Some(rg.root), &[]);
    Ok(hist.into_polynomial())
}

fn check_limit(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "graph".into(),
            size: n,
            limit: ENUMERATION_LIMIT,
            hint: "; use classical_spectrum_auto for graphs with cut vertices".into(),
        });
    }
    Ok(())
}

/// Rooted polynomial of the graph obtained by identifying two roots:
/// `Z1 * Z2 / y`.
pub fn compose_rooted(p1: &IsingPolynomial, p2: &IsingPolynomial) -> IsingPolynomial {
    convolve(p1, p2, -1, p1.n + p2.n - 1)
}

/// Glues `rg2` onto `rg1` by merging the two roots. Vertices of `rg2` other
/// than its root are appended after those of `rg1`, in their original order.
pub fn vertex_identify(rg1: &RootedGraph, rg2: &RootedGraph) -> RootedGraph {
    let n1 = rg1.graph.n();
    let mut next = n1;
    let mut map = vec![0; rg2.graph.n()];
    for (v, slot) in map.iter_mut().enumerate() {
        if v == rg2.root {
            *slot = rg1.root;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let edges = rg1
        .graph
        .edges()
        .iter()
        .copied()
        .chain(rg2.graph.edges().iter().map(|&(a, b)| (map[a], map[b])));
    RootedGraph {
        graph: Graph::new(next, edges)
            .expect("gluing two simple graphs at one vertex stays simple"),
        root: rg1.root,
    }
}
