//! Telling apart graphs that share a classical Ising spectrum.
//!
//! Two graphs are co-Ising when their problem Hamiltonians
//! `H_p = sum_(i,j) Z_i Z_j + sum_i Z_i` have the same spectrum. That
//! classical invariant is computed exactly in [`poly`]. The quantum
//! Hamiltonian `A(s) sum_i X_i + B(s) H_p` mid-anneal generally separates
//! such graphs; [`quantum`] computes thermal averages of its diagonal
//! observables and [`experiment`] runs the anneal-pause-readout protocol on
//! top of them, including gauge averaging and bootstrap statistics.
//! [`chimera`] builds the hardware topology and finds native embeddings.

pub mod chimera;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod poly;
pub mod quantum;

pub use error::{Error, Result};
pub use graph::{Graph, VertexPermutation};
