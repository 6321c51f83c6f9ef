//! Commuting graphs of finite groups, with certified recognition of split,
//! threshold, 2K2-free, cograph and chordal graphs.
//!
//! Groups are enumerated once into indexed elements (identity at index 0)
//! backed by either a Cayley table or stored permutations. The commuting graph
//! is a dense bitset adjacency matrix; each recognizer returns a membership
//! certificate or an induced forbidden subgraph.

pub mod bitset;
pub mod catalog;
pub mod classes;
pub mod classify;
pub mod constructions;
pub mod exec;
pub mod graph;
pub mod group;
pub mod perm;
pub mod suite;

pub use catalog::{Catalog, CatalogEntry, CatalogError, ScanResult, TableRow};
pub use classes::{classify_graph, Certificate, ClassVerdict, GraphClass, Pattern, Witness};
pub use classify::{classify_group, ClassReport, ClassifyOptions};
pub use constructions::{ConstructionError, FamilySpec};
pub use exec::Execution;
pub use graph::{commuting_graph, UndirectedGraph, VertexScope};
pub use group::{ElementSet, Group, GroupError};
pub use perm::Perm;
