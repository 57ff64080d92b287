//! Free bases of finite-index subgroups of finitely generated free groups.
//!
//! A subgroup of finite index is stored as a pointed covering: a finite
//! fiber, one permutation of the fiber per free generator, and a
//! basepoint. From that data the crate builds the Schreier graph, grows a
//! deterministic spanning tree, and contracts it to read off a free basis
//! of `m(n−1) + 1` Schreier generators for a connected covering of index
//! `m` over rank `n`. Around the core sit reduced-word arithmetic,
//! membership testing, rewriting of members over the computed basis,
//! Stallings folding (to go from "subgroup generated by these words" to a
//! covering), and a verification suite showing that no basis-choosing rule
//! can commute with relabelling the generators, already for the index-2
//! subgroup of even-length words in rank 2.
//!
//! The `schreier` binary exposes the same operations on files and words;
//! see the module docs of [`io`] for the formats.

pub mod basis;
pub mod counterexample;
pub mod covering;
pub mod graph;
pub mod io;
pub mod word;

pub use basis::{rank_formula, rewrite_in_basis, subgroup_basis, Basis, BasisError};
pub use covering::{fold_words, Covering, CoveringError, FoldedGraph, LabeledGraph};
pub use graph::{Direction, Graph, GraphError, SpanningTree, VertexPartition};
pub use word::{enumerate_reduced, Alphabet, FiniteGroup, Letter, Sign, Word, WordError};
