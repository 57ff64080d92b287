//! Free bases of finite-index subgroups, extracted from the Schreier graph
//! by contracting a spanning tree.
//!
//! Pick the breadth-first spanning tree of the Schreier graph rooted at the
//! basepoint. Every fiber point `v` gets the word `w(v)` spelled by its
//! tree path, and every non-tree edge `(a, x)` contributes the generator
//!
//! ```text
//!     g_(a,x) = w(x) · a · w(σ_a(x))⁻¹
//! ```
//!
//! These words freely generate the subgroup, and there are exactly
//! `m(n−1) + 1` of them for a connected covering of index `m` over rank
//! `n ≥ 1`. Tracing a member word and emitting a letter per non-tree edge
//! crossed rewrites it over the basis; the tree-edge factors telescope
//! away, which is what makes the rewrite inverse to evaluation.

use std::collections::HashMap;

use thiserror::Error;

use crate::covering::{Covering, CoveringError};
use crate::graph::{Direction, SpanningTree};
use crate::word::{enumerate_reduced, Alphabet, Letter, Sign, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("word is not a member: its trace ends at {end}, not the basepoint {basepoint}")]
    NotMember { end: usize, basepoint: usize },
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("basis was computed for a covering of different shape")]
    CoveringMismatch,
    #[error("no connected covering of index {index} exists over rank {rank}")]
    NoFiniteCovering { rank: usize, index: usize },
}

/// A free basis of the subgroup presented by a connected covering, plus
/// the spanning-tree data needed to rewrite members over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    source: Alphabet,
    fiber_size: usize,
    tree: SpanningTree,
    vertex_words: Vec<Word>,
    generators: Vec<Word>,
    /// For each Schreier edge `(a, x)` (at index `a·m + x`), the basis
    /// letter it emits, or `None` for tree edges.
    edge_to_generator: Vec<Option<usize>>,
}

impl Basis {
    /// Number of free generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The generator words, in `(a, x)` order of their non-tree edges.
    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// For each fiber point, the word spelled by its tree path from the
    /// basepoint (backward tree edges contribute inverse letters).
    pub fn vertex_words(&self) -> &[Word] {
        &self.vertex_words
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn source_alphabet(&self) -> &Alphabet {
        &self.source
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    /// Position of the generator attached to non-tree edge `(gen, point)`.
    pub fn generator_for_edge(&self, gen: usize, point: usize) -> Option<usize> {
        self.edge_to_generator[gen * self.fiber_size + point]
    }

    /// Names `s0 … s{k-1}` for words over the basis.
    pub fn derived_alphabet(&self) -> Alphabet {
        Alphabet::with_names((0..self.rank()).map(|i| format!("s{i}")))
            .expect("generated names are valid")
    }

    /// Substitute the generator words for basis letters: the induced
    /// homomorphism from the free group on the basis back into the source
    /// free group. Its image is the subgroup.
    pub fn eval(&self, basis_word: &Word) -> Result<Word, BasisError> {
        if basis_word.rank() != self.rank() {
            return Err(BasisError::AlphabetMismatch {
                left: self.rank(),
                right: basis_word.rank(),
            });
        }
        basis_word
            .hom_apply(&self.generators, self.source.rank())
            .map_err(|_| BasisError::CoveringMismatch)
    }

    /// Bounded extensional freeness check: evaluation is injective on all
    /// reduced basis words of length at most `max_len` (in particular no
    /// nontrivial one evaluates to the identity).
    pub fn freeness_check(&self, max_len: usize) -> bool {
        let mut seen: HashMap<Word, Word> = HashMap::new();
        for bw in enumerate_reduced(self.rank(), max_len) {
            let value = match self.eval(&bw) {
                Ok(v) => v,
                Err(_) => return false,
            };
            if !bw.is_identity() && value.is_identity() {
                return false;
            }
            if let Some(other) = seen.insert(value, bw.clone()) {
                if other != bw {
                    return false;
                }
            }
        }
        true
    }
}

/// Index formula `m(n−1) + 1` for a connected covering of index `m ≥ 1`
/// over rank `n ≥ 1`; equals the count of non-tree Schreier edges
/// `nm − (m−1)`. Rank 0 only admits the one-point covering, whose
/// subgroup is trivial.
pub fn rank_formula(rank: usize, index: usize) -> Result<usize, BasisError> {
    if index == 0 || (rank == 0 && index > 1) {
        return Err(BasisError::NoFiniteCovering { rank, index });
    }
    if rank == 0 {
        return Ok(0);
    }
    Ok(index * (rank - 1) + 1)
}

/// Compute the canonical free basis of the subgroup presented by a
/// connected covering: breadth-first tree from the basepoint, non-tree
/// edges in `(a, x)` order.
pub fn subgroup_basis(covering: &Covering) -> Result<Basis, CoveringError> {
    let labeled = covering.schreier_graph();
    let tree = labeled.graph().spanning_tree(covering.basepoint()).map_err(|err| match err {
        crate::graph::GraphError::NotConnected { components } => {
            CoveringError::NotConnected { components }
        }
        other => panic!("spanning tree failed on a valid Schreier graph: {other}"),
    })?;

    let rank = covering.rank();
    let m = covering.fiber_size();
    let source_rank = rank;

    let mut vertex_words = Vec::with_capacity(m);
    for v in 0..m {
        let mut letters = Vec::new();
        for (edge, direction) in tree.path_from_root(v) {
            let label = labeled.label(edge);
            let sign = match direction {
                Direction::Forward => Sign::Pos,
                Direction::Backward => Sign::Neg,
            };
            letters.push(Letter { gen: label.gen, sign });
        }
        // Schreier graphs are deterministic, so tree paths spell reduced
        // words already; reduce anyway to keep the invariant local.
        vertex_words.push(Word::reduce(source_rank, letters).expect("labels are in range"));
    }

    let mut generators = Vec::new();
    let mut edge_to_generator = vec![None; rank * m];
    for edge in 0..labeled.graph().num_edges() {
        if tree.is_tree_edge(edge) {
            continue;
        }
        let label = labeled.label(edge);
        let target = covering.permutation(label.gen).apply(label.point);
        let letter = Word::letter(source_rank, label.gen, Sign::Pos).expect("label in range");
        let word = vertex_words[label.point]
            .multiply(&letter)
            .and_then(|w| w.multiply(&vertex_words[target].inverse()))
            .expect("ranks agree");
        edge_to_generator[label.gen * m + label.point] = Some(generators.len());
        generators.push(word);
    }

    Ok(Basis {
        source: covering.alphabet().clone(),
        fiber_size: m,
        tree,
        vertex_words,
        generators,
        edge_to_generator,
    })
}

/// Rewrite a member of the subgroup as a word over the basis: trace it
/// from the basepoint, emitting the basis letter of every non-tree edge
/// crossed (inverted when crossed against orientation). Tree edges emit
/// nothing. Errors with [`BasisError::NotMember`] when the trace does not
/// return to the basepoint.
pub fn rewrite_in_basis(basis: &Basis, covering: &Covering, word: &Word) -> Result<Word, BasisError> {
    if word.rank() != covering.rank() {
        return Err(BasisError::AlphabetMismatch { left: covering.rank(), right: word.rank() });
    }
    if basis.fiber_size != covering.fiber_size() || basis.source.rank() != covering.rank() {
        return Err(BasisError::CoveringMismatch);
    }
    let mut letters = Vec::new();
    let mut at = covering.basepoint();
    for l in word.letters() {
        let (edge_point, next) = match l.sign {
            Sign::Pos => (at, covering.permutation(l.gen).apply(at)),
            Sign::Neg => {
                let source = covering.permutation(l.gen).apply_inverse(at);
                (source, source)
            }
        };
        if let Some(gen) = basis.generator_for_edge(l.gen, edge_point) {
            letters.push(Letter { gen, sign: l.sign });
        }
        at = next;
    }
    if at != covering.basepoint() {
        return Err(BasisError::NotMember { end: at, basepoint: covering.basepoint() });
    }
    Ok(Word::reduce(basis.rank(), letters).expect("basis letters are in range"))
}
