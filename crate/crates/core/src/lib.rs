//! Acyclic dicolouring of oriented graphs.
//!
//! A dicolouring partitions the vertices of a digraph into classes that each
//! induce an acyclic subdigraph. It is *acyclic* when, in addition, the arcs
//! between any two classes form an acyclic bipartite digraph. This crate
//! provides verifiers and exact solvers for both notions, a polynomial-time
//! acyclic 2-dicolouring algorithm for tournaments, constructive bounds, and
//! generators for the extremal and gadget digraphs that appear in the theory.

pub mod bounds;
pub mod constructions;
pub mod dicolour;
pub mod digraph;
pub mod error;
pub mod format;
pub mod graph;
pub mod planarity;
pub mod random;
pub mod solver;
pub mod tournament;
pub mod vertex_set;

pub use dicolour::{AcyclicMatching, AcyclicPartition, Colouring, CycleKind, Verdict, ViolatingCycle};
pub use digraph::{Digraph, DigraphBuilder, Subdigraph};
pub use error::{Error, Result};
pub use graph::UndirectedGraph;
pub use vertex_set::VertexSet;
