//! Exact computations on (m,n)-colored mixed graphs.
//!
//! A mixed graph carries arcs in `m` colors and edges in `n` colors over a
//! simple underlying graph. The crate covers:
//!
//! * [`graph`]: the data model and its text formats,
//! * [`rigidity`]: special 2-paths, rigid pairs, clique tests and clique numbers,
//! * [`homsearch`]: homomorphisms, quotients and exact chromatic numbers,
//! * [`constructions`]: the extremal clique families and the join operation,
//! * [`signed`]: unbalanced 4-cycles, signed cliques and the NAE-3SAT reduction,
//! * [`experiments`]: the uniform random model and exact enumeration,
//! * [`cli`]: the `mncolor` command-line front end.
//!
//! Every search returns a witness that can be re-checked with the matching
//! verifier.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod homsearch;
pub mod rigidity;
pub mod signed;

pub use error::{Error, Result};
pub use graph::{AdjacencyType, MixedGraph, Signature, SimpleGraph};
