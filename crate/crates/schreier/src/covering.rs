//! Finite-index subgroups of free groups, represented as pointed coverings:
//! a finite fiber, one permutation of the fiber per generator, and a
//! basepoint. A word lies in the subgroup exactly when tracing it through
//! the permutations returns to the basepoint.

use thiserror::Error;

use crate::graph::Graph;
use crate::word::{Alphabet, FiniteGroup, Sign, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("fiber must be non-empty")]
    EmptyFiber,
    #[error("expected {expected} permutation tables, got {got}")]
    WrongTableCount { expected: usize, got: usize },
    #[error("table for generator {gen} is not a permutation of the fiber")]
    NotPermutation { gen: usize },
    #[error("basepoint {basepoint} out of range for fiber of size {fiber_size}")]
    BasepointOutOfRange { basepoint: usize, fiber_size: usize },
    #[error("fiber point {point} out of range for fiber of size {fiber_size}")]
    PointOutOfRange { point: usize, fiber_size: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    BadElementIndex { index: usize, order: usize },
    #[error("covering is not connected ({} orbits)", crate::covering::orbit_count(.components))]
    NotConnected { components: Vec<usize> },
    #[error("the generated subgroup has infinite index (folded graph is not a covering)")]
    InfiniteIndex(Box<FoldedGraph>),
}

pub(crate) fn orbit_count(labels: &[usize]) -> usize {
    labels.iter().copied().max().map_or(0, |m| m + 1)
}

/// A permutation of `0..len`, stored with its inverse so that inverse
/// letters trace in constant time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
    preimage: Vec<usize>,
}

impl Permutation {
    /// `None` when `image` is not a bijection of `0..image.len()`.
    pub fn new(image: Vec<usize>) -> Option<Permutation> {
        let n = image.len();
        let mut preimage = vec![usize::MAX; n];
        for (x, &y) in image.iter().enumerate() {
            if y >= n || preimage[y] != usize::MAX {
                return None;
            }
            preimage[y] = x;
        }
        Some(Permutation { image, preimage })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (0..n).collect(), preimage: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn apply_inverse(&self, y: usize) -> usize {
        self.preimage[y]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }
}

/// A pointed covering of the free group on `alphabet`: the data of a
/// finite-index subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    alphabet: Alphabet,
    fiber_size: usize,
    action: Vec<Permutation>,
    basepoint: usize,
}

impl Covering {
    /// Build a covering from one image table per generator. Each table must
    /// be a permutation of `0..fiber_size`.
    pub fn new(
        alphabet: Alphabet,
        fiber_size: usize,
        tables: Vec<Vec<usize>>,
        basepoint: usize,
    ) -> Result<Covering, CoveringError> {
        if fiber_size == 0 {
            return Err(CoveringError::EmptyFiber);
        }
        if tables.len() != alphabet.rank() {
            return Err(CoveringError::WrongTableCount {
                expected: alphabet.rank(),
                got: tables.len(),
            });
        }
        let mut action = Vec::with_capacity(tables.len());
        for (gen, table) in tables.into_iter().enumerate() {
            if table.len() != fiber_size {
                return Err(CoveringError::NotPermutation { gen });
            }
            let perm = Permutation::new(table).ok_or(CoveringError::NotPermutation { gen })?;
            action.push(perm);
        }
        if basepoint >= fiber_size {
            return Err(CoveringError::BasepointOutOfRange { basepoint, fiber_size });
        }
        Ok(Covering { alphabet, fiber_size, action, basepoint })
    }

    /// The covering of the kernel-style subgroup cut out by a homomorphism
    /// into a finite group: the fiber is the group itself acted on by right
    /// multiplication with the generator images, based at the identity.
    /// Membership then coincides with evaluating to the identity.
    pub fn from_hom(
        alphabet: Alphabet,
        group: &FiniteGroup,
        images: &[usize],
    ) -> Result<Covering, CoveringError> {
        if images.len() != alphabet.rank() {
            return Err(CoveringError::WrongTableCount {
                expected: alphabet.rank(),
                got: images.len(),
            });
        }
        for &g in images {
            if g >= group.order() {
                return Err(CoveringError::BadElementIndex { index: g, order: group.order() });
            }
        }
        let tables = images
            .iter()
            .map(|&g| (0..group.order()).map(|x| group.mul(x, g)).collect())
            .collect();
        Covering::new(alphabet, group.order(), tables, group.identity())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    /// The index of the subgroup.
    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn permutation(&self, gen: usize) -> &Permutation {
        &self.action[gen]
    }

    /// Transport a fiber point along a word, left to right: positive
    /// letters apply the generator permutation, negative letters its
    /// inverse. Functorial: `trace(uv, x) = trace(v, trace(u, x))`.
    pub fn trace(&self, word: &Word, start: usize) -> Result<usize, CoveringError> {
        if word.rank() != self.rank() {
            return Err(CoveringError::AlphabetMismatch { left: self.rank(), right: word.rank() });
        }
        if start >= self.fiber_size {
            return Err(CoveringError::PointOutOfRange { point: start, fiber_size: self.fiber_size });
        }
        let mut at = start;
        for l in word.letters() {
            at = match l.sign {
                Sign::Pos => self.action[l.gen].apply(at),
                Sign::Neg => self.action[l.gen].apply_inverse(at),
            };
        }
        Ok(at)
    }

    /// Membership in the subgroup this covering presents: the word's trace
    /// from the basepoint returns to the basepoint.
    pub fn is_member(&self, word: &Word) -> Result<bool, CoveringError> {
        Ok(self.trace(word, self.basepoint)? == self.basepoint)
    }

    /// Orbit labels of the fiber under the group generated by the action,
    /// labelled in order of each orbit's least point.
    pub fn orbits(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.fiber_size];
        let mut next = 0;
        for start in 0..self.fiber_size {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = next;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for perm in &self.action {
                    for y in [perm.apply(x), perm.apply_inverse(x)] {
                        if labels[y] == usize::MAX {
                            labels[y] = next;
                            queue.push_back(y);
                        }
                    }
                }
            }
            next += 1;
        }
        labels
    }

    /// Connectedness of the total space: the basepoint orbit is the whole
    /// fiber. Agrees with connectivity of the Schreier graph.
    pub fn is_connected(&self) -> bool {
        orbit_count(&self.orbits()) == 1
    }

    /// The Schreier graph: one vertex per fiber point and one edge
    /// `x -> σ_a(x)` per pair `(a, x)`, listed in `(a, x)` order so edge
    /// `a·m + x` carries label `(a, x)`.
    pub fn schreier_graph(&self) -> LabeledGraph {
        let m = self.fiber_size;
        let mut edges = Vec::with_capacity(self.rank() * m);
        let mut labels = Vec::with_capacity(self.rank() * m);
        for (gen, perm) in self.action.iter().enumerate() {
            for x in 0..m {
                edges.push((x, perm.apply(x)));
                labels.push(EdgeLabel { gen, point: x });
            }
        }
        let graph = Graph::new(m, edges).expect("covering endpoints lie in the fiber");
        LabeledGraph { graph, labels }
    }

    /// Equality of the presented subgroups, decided by propagating the
    /// basepoint pair through the generator actions. Both coverings must be
    /// connected; then a basepoint- and label-preserving bijection of
    /// fibers exists exactly when the membership relations coincide.
    pub fn isomorphic(&self, other: &Covering) -> Result<bool, CoveringError> {
        if self.rank() != other.rank() {
            return Err(CoveringError::AlphabetMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        for c in [self, other] {
            let orbits = c.orbits();
            if orbit_count(&orbits) != 1 {
                return Err(CoveringError::NotConnected { components: orbits });
            }
        }
        if self.fiber_size != other.fiber_size {
            return Ok(false);
        }
        let m = self.fiber_size;
        let mut to_other = vec![usize::MAX; m];
        let mut to_self = vec![usize::MAX; m];
        to_other[self.basepoint] = other.basepoint;
        to_self[other.basepoint] = self.basepoint;
        let mut queue = std::collections::VecDeque::from([(self.basepoint, other.basepoint)]);
        while let Some((x, y)) = queue.pop_front() {
            for gen in 0..self.rank() {
                let pairs = [
                    (self.action[gen].apply(x), other.action[gen].apply(y)),
                    (self.action[gen].apply_inverse(x), other.action[gen].apply_inverse(y)),
                ];
                for (nx, ny) in pairs {
                    if to_other[nx] == usize::MAX && to_self[ny] == usize::MAX {
                        to_other[nx] = ny;
                        to_self[ny] = nx;
                        queue.push_back((nx, ny));
                    } else if to_other[nx] != ny {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Generator label of a Schreier-graph edge: the edge from `point` along
/// generator `gen`.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub struct EdgeLabel {
    pub gen: usize,
    pub point: usize,
}

/// A Schreier graph: the underlying multigraph plus the `(generator,
/// source point)` label of each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    graph: Graph,
    labels: Vec<EdgeLabel>,
}

impl LabeledGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> EdgeLabel {
        self.labels[edge]
    }

    /// Index of the edge labelled `(gen, point)` in the canonical order.
    pub fn edge_index(&self, gen: usize, point: usize, fiber_size: usize) -> usize {
        gen * fiber_size + point
    }
}

/// The result of folding when it does not close up into a covering:
/// a deterministic, connected, labelled graph with some vertices missing
/// an outgoing or incoming edge for some generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedGraph {
    pub rank: usize,
    pub num_vertices: usize,
    pub basepoint: usize,
    /// Edges `(source, generator, target)`, sorted by `(generator, source)`.
    pub edges: Vec<(usize, usize, usize)>,
}

/// A slot a full covering would have to fill: vertex `point` lacks an
/// `outgoing` (or incoming) edge for generator `gen`.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub struct MissingSlot {
    pub point: usize,
    pub gen: usize,
    pub outgoing: bool,
}

impl FoldedGraph {
    /// All unfilled slots, sorted by `(gen, point, incoming-before… )`
    /// — concretely by `(gen, point)` with outgoing listed first.
    pub fn missing_slots(&self) -> Vec<MissingSlot> {
        let mut has_out = vec![vec![false; self.num_vertices]; self.rank];
        let mut has_in = vec![vec![false; self.num_vertices]; self.rank];
        for &(src, gen, dst) in &self.edges {
            has_out[gen][src] = true;
            has_in[gen][dst] = true;
        }
        let mut missing = Vec::new();
        for gen in 0..self.rank {
            for point in 0..self.num_vertices {
                if !has_out[gen][point] {
                    missing.push(MissingSlot { point, gen, outgoing: true });
                }
                if !has_in[gen][point] {
                    missing.push(MissingSlot { point, gen, outgoing: false });
                }
            }
        }
        missing
    }
}

/// Stallings folding: build the wedge of loops spelling the generator
/// words at a base vertex, then merge equal-label edges sharing a source
/// (or a target) until none remain. If the folded graph is a full covering
/// — one outgoing and one incoming edge per generator at every vertex —
/// return it as a [`Covering`]; otherwise the generated subgroup has
/// infinite index and the folded graph is reported in the error.
///
/// The output is canonical: vertices are renumbered by breadth-first
/// discovery from the basepoint, so the result does not depend on the
/// order of the generator words.
pub fn fold_words(alphabet: &Alphabet, gens: &[Word]) -> Result<Covering, CoveringError> {
    let rank = alphabet.rank();
    for g in gens {
        if g.rank() != rank {
            return Err(CoveringError::AlphabetMismatch { left: rank, right: g.rank() });
        }
    }

    // wedge of loops at vertex 0
    let mut vertex_count = 1usize;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for g in gens {
        let len = g.len();
        let mut prev = 0;
        for (i, l) in g.letters().iter().enumerate() {
            let next = if i + 1 == len {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            match l.sign {
                Sign::Pos => edges.push((prev, l.gen, next)),
                Sign::Neg => edges.push((next, l.gen, prev)),
            }
            prev = next;
        }
    }

    // fold to a fixpoint over a union-find on vertices
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    loop {
        for e in edges.iter_mut() {
            e.0 = find(&mut parent, e.0);
            e.2 = find(&mut parent, e.2);
        }
        edges.sort_unstable_by_key(|&(src, gen, dst)| (gen, src, dst));
        edges.dedup();
        let mut merge = None;
        for pair in edges.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                merge = Some((pair[0].2, pair[1].2));
                break;
            }
        }
        if merge.is_none() {
            let mut by_target = edges.clone();
            by_target.sort_unstable_by_key(|&(src, gen, dst)| (gen, dst, src));
            for pair in by_target.windows(2) {
                if pair[0].2 == pair[1].2 && pair[0].1 == pair[1].1 {
                    merge = Some((pair[0].0, pair[1].0));
                    break;
                }
            }
        }
        match merge {
            Some((x, y)) => {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx.max(ry)] = rx.min(ry);
            }
            None => break,
        }
    }

    // canonical renumbering: BFS from the base class, generators in order,
    // outgoing before incoming
    let base = find(&mut parent, 0);
    let mut out_edge = std::collections::HashMap::new();
    let mut in_edge = std::collections::HashMap::new();
    for &(src, gen, dst) in &edges {
        out_edge.insert((src, gen), dst);
        in_edge.insert((dst, gen), src);
    }
    let mut index_of = std::collections::HashMap::new();
    index_of.insert(base, 0usize);
    let mut order = vec![base];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for gen in 0..rank {
            for next in [out_edge.get(&(u, gen)), in_edge.get(&(u, gen))].into_iter().flatten() {
                if !index_of.contains_key(next) {
                    index_of.insert(*next, order.len());
                    order.push(*next);
                }
            }
        }
    }
    let m = order.len();
    debug_assert_eq!(
        m,
        {
            let mut reps: Vec<usize> = (0..vertex_count).map(|v| find(&mut parent, v)).collect();
            reps.sort_unstable();
            reps.dedup();
            reps.len()
        },
        "the wedge is connected, so BFS reaches every class"
    );

    let renumber = |v: usize| index_of[&v];
    let mut tables: Vec<Vec<Option<usize>>> = vec![vec![None; m]; rank];
    for &(src, gen, dst) in &edges {
        tables[gen][renumber(src)] = Some(renumber(dst));
    }

    let full = (0..rank).all(|gen| {
        tables[gen].iter().all(Option::is_some) && {
            let mut seen = vec![false; m];
            tables[gen].iter().flatten().for_each(|&y| seen[y] = true);
            seen.iter().all(|&s| s)
        }
    });
    if !full {
        let mut canonical_edges: Vec<(usize, usize, usize)> = edges
            .iter()
            .map(|&(src, gen, dst)| (renumber(src), gen, renumber(dst)))
            .collect();
        canonical_edges.sort_unstable_by_key(|&(src, gen, dst)| (gen, src, dst));
        return Err(CoveringError::InfiniteIndex(Box::new(FoldedGraph {
            rank,
            num_vertices: m,
            basepoint: 0,
            edges: canonical_edges,
        })));
    }

    let tables = tables
        .into_iter()
        .map(|t| t.into_iter().map(Option::unwrap).collect())
        .collect();
    Covering::new(alphabet.clone(), m, tables, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{enumerate_reduced, Letter};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ab() -> Alphabet {
        Alphabet::with_names(["a", "b"]).unwrap()
    }

    fn w(alphabet: &Alphabet, s: &str) -> Word {
        alphabet.parse_word(s).unwrap()
    }

    /// The index-2 subgroup of even-length words: both generators swap the
    /// two fiber points.
    fn parity_covering() -> Covering {
        Covering::from_hom(ab(), &FiniteGroup::cyclic(2), &[1, 1]).unwrap()
    }

    #[test]
    fn schreier_graph_of_trivial_covering_is_bouquet() {
        let c = Covering::new(ab(), 1, vec![vec![0], vec![0]], 0).unwrap();
        let lg = c.schreier_graph();
        assert_eq!(lg.graph().num_vertices(), 1);
        assert_eq!(lg.graph().edges(), &[(0, 0), (0, 0)]);
    }

    #[test]
    fn schreier_graph_of_parity_covering() {
        let lg = parity_covering().schreier_graph();
        assert_eq!(lg.graph().num_vertices(), 2);
        assert_eq!(lg.graph().edges(), &[(0, 1), (1, 0), (0, 1), (1, 0)]);
        assert_eq!(lg.label(1), EdgeLabel { gen: 0, point: 1 });
        assert_eq!(lg.label(2), EdgeLabel { gen: 1, point: 0 });
    }

    #[test]
    fn schreier_graph_rank_zero() {
        let c = Covering::new(Alphabet::new(0), 1, vec![], 0).unwrap();
        let lg = c.schreier_graph();
        assert_eq!(lg.graph().num_vertices(), 1);
        assert_eq!(lg.graph().num_edges(), 0);
    }

    #[test]
    fn trace_examples() {
        let c = parity_covering();
        assert_eq!(c.trace(&w(&ab(), "aa"), 0).unwrap(), 0);
        assert_eq!(c.trace(&Word::identity(2), 1).unwrap(), 1);
        assert_eq!(c.trace(&w(&ab(), "a"), 0).unwrap(), 1);
    }

    #[test]
    fn trace_rejects_bad_inputs() {
        let c = parity_covering();
        assert!(matches!(
            c.trace(&Word::identity(3), 0).unwrap_err(),
            CoveringError::AlphabetMismatch { .. }
        ));
        assert!(matches!(
            c.trace(&Word::identity(2), 2).unwrap_err(),
            CoveringError::PointOutOfRange { .. }
        ));
    }

    #[test]
    fn membership_examples() {
        let c = parity_covering();
        assert!(c.is_member(&w(&ab(), "ab")).unwrap());
        assert!(c.is_member(&Word::identity(2)).unwrap());
        assert!(!c.is_member(&w(&ab(), "a")).unwrap());
        assert!(!c.is_member(&w(&ab(), "b")).unwrap());
    }

    #[test]
    fn connectivity_examples() {
        assert!(parity_covering().is_connected());
        let two_orbits =
            Covering::new(Alphabet::with_names(["a"]).unwrap(), 2, vec![vec![0, 1]], 0).unwrap();
        assert!(!two_orbits.is_connected());
        let point = Covering::new(ab(), 1, vec![vec![0], vec![0]], 0).unwrap();
        assert!(point.is_connected());
        // orbit computation agrees with graph connectivity
        assert_eq!(two_orbits.is_connected(), two_orbits.schreier_graph().graph().is_connected());
    }

    #[test]
    fn orbit_connectivity_agrees_with_graph_connectivity() {
        // two independent routes: basepoint orbit under the action vs
        // undirected reachability in the Schreier graph
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..60 {
            let rank = rng.gen_range(0..=3);
            let fiber = rng.gen_range(1..=6);
            let tables: Vec<Vec<usize>> = (0..rank)
                .map(|_| {
                    let mut table: Vec<usize> = (0..fiber).collect();
                    for i in (1..fiber).rev() {
                        table.swap(i, rng.gen_range(0..=i));
                    }
                    table
                })
                .collect();
            let c = Covering::new(Alphabet::new(rank), fiber, tables, 0).unwrap();
            assert_eq!(c.is_connected(), c.schreier_graph().graph().is_connected());
            assert_eq!(c.orbits(), c.schreier_graph().graph().connected_components());
        }
    }

    #[test]
    fn from_hom_builds_parity_covering() {
        let c = parity_covering();
        assert_eq!(c.fiber_size(), 2);
        assert_eq!(c.basepoint(), 0);
        assert_eq!(c.permutation(0).images(), &[1, 0]);
        assert_eq!(c.permutation(1).images(), &[1, 0]);
    }

    #[test]
    fn from_hom_trivial_group_gives_whole_group() {
        let c = Covering::from_hom(ab(), &FiniteGroup::trivial(), &[0, 0]).unwrap();
        assert_eq!(c.fiber_size(), 1);
        for word in enumerate_reduced(2, 4) {
            assert!(c.is_member(&word).unwrap());
        }
    }

    #[test]
    fn from_hom_cyclic_three() {
        let al = Alphabet::with_names(["a"]).unwrap();
        let c = Covering::from_hom(al.clone(), &FiniteGroup::cyclic(3), &[1]).unwrap();
        // membership agrees with exponent-sum mod 3
        for word in enumerate_reduced(1, 6) {
            let exponent: i64 = word
                .letters()
                .iter()
                .map(|l| if l.sign == Sign::Pos { 1 } else { -1 })
                .sum();
            assert_eq!(c.is_member(&word).unwrap(), exponent.rem_euclid(3) == 0);
        }
        assert!(c.is_member(&w(&al, "aaa")).unwrap());
        assert!(!c.is_member(&w(&al, "a")).unwrap());
    }

    #[test]
    fn from_hom_membership_is_kernel_membership() {
        // all words of length <= 6 over rank 2, every group of order <= 4
        let klein = FiniteGroup::new(
            (0..4usize).map(|x| (0..4).map(|y| x ^ y).collect()).collect(),
            0,
        )
        .unwrap();
        let groups = [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            klein,
        ];
        let image_sets: [[usize; 2]; 4] = [[1, 1], [1, 2], [1, 0], [2, 3]];
        for g in &groups {
            for images in image_sets {
                if images.iter().any(|&i| i >= g.order()) {
                    continue;
                }
                let c = Covering::from_hom(ab(), g, &images).unwrap();
                for word in enumerate_reduced(2, 6) {
                    let value = word.eval_in_group(g, &images).unwrap();
                    assert_eq!(c.is_member(&word).unwrap(), value == g.identity());
                }
            }
        }
    }

    #[test]
    fn from_hom_rejects_bad_element() {
        assert!(matches!(
            Covering::from_hom(ab(), &FiniteGroup::cyclic(2), &[1, 7]).unwrap_err(),
            CoveringError::BadElementIndex { index: 7, order: 2 }
        ));
    }

    #[test]
    fn new_rejects_non_permutation() {
        assert_eq!(
            Covering::new(ab(), 2, vec![vec![0, 0], vec![1, 0]], 0).unwrap_err(),
            CoveringError::NotPermutation { gen: 0 }
        );
        assert_eq!(
            Covering::new(ab(), 2, vec![vec![1, 0]], 0).unwrap_err(),
            CoveringError::WrongTableCount { expected: 2, got: 1 }
        );
        assert!(matches!(
            Covering::new(ab(), 2, vec![vec![1, 0], vec![1, 0]], 5).unwrap_err(),
            CoveringError::BasepointOutOfRange { .. }
        ));
    }

    #[test]
    fn fold_explicit_kernel_basis() {
        let gens = [w(&ab(), "aa"), w(&ab(), "ab"), w(&ab(), "ab'")];
        let c = fold_words(&ab(), &gens).unwrap();
        assert_eq!(c.fiber_size(), 2);
        assert!(c.isomorphic(&parity_covering()).unwrap());
        for g in &gens {
            assert!(c.is_member(g).unwrap());
        }
    }

    #[test]
    fn fold_single_letters_gives_whole_group() {
        let gens = [w(&ab(), "a"), w(&ab(), "b")];
        let c = fold_words(&ab(), &gens).unwrap();
        assert_eq!(c.fiber_size(), 1);
    }

    #[test]
    fn fold_commutator_has_infinite_index() {
        let gens = [w(&ab(), "aba'b'")];
        match fold_words(&ab(), &gens).unwrap_err() {
            CoveringError::InfiniteIndex(folded) => {
                assert_eq!(folded.rank, 2);
                assert!(!folded.missing_slots().is_empty());
                assert_eq!(folded.edges.len(), 4);
            }
            other => panic!("expected InfiniteIndex, got {other:?}"),
        }
    }

    #[test]
    fn fold_empty_generators() {
        // trivial subgroup: infinite index for rank >= 1, the whole group
        // for rank 0
        assert!(matches!(
            fold_words(&ab(), &[]).unwrap_err(),
            CoveringError::InfiniteIndex(_)
        ));
        let c = fold_words(&Alphabet::new(0), &[]).unwrap();
        assert_eq!(c.fiber_size(), 1);
    }

    #[test]
    fn fold_result_contains_generators() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..40 {
            let gens = random_words(&mut rng, 2, 4, 6);
            if let Ok(c) = fold_words(&ab(), &gens) {
                for g in &gens {
                    assert!(c.is_member(g).unwrap(), "generator must lie in the subgroup");
                }
            }
        }
    }

    #[test]
    fn fold_is_order_independent() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..25 {
            let mut gens = random_words(&mut rng, 2, 4, 6);
            let first = fold_words(&ab(), &gens);
            for _ in 0..6 {
                for i in (1..gens.len()).rev() {
                    gens.swap(i, rng.gen_range(0..=i));
                }
                let again = fold_words(&ab(), &gens);
                match (&first, &again) {
                    (Ok(c1), Ok(c2)) => {
                        assert!(c1.isomorphic(c2).unwrap());
                        // canonical renumbering makes them literally equal
                        assert_eq!(c1, c2);
                    }
                    (Err(CoveringError::InfiniteIndex(_)), Err(CoveringError::InfiniteIndex(_))) => {}
                    other => panic!("fold changed verdict under shuffle: {other:?}"),
                }
            }
        }
    }

    fn random_words(rng: &mut StdRng, rank: usize, count_max: usize, len_max: usize) -> Vec<Word> {
        let count = rng.gen_range(1..=count_max);
        (0..count)
            .map(|_| {
                let len = rng.gen_range(0..=len_max);
                let letters: Vec<Letter> = (0..len)
                    .map(|_| Letter {
                        gen: rng.gen_range(0..rank),
                        sign: if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg },
                    })
                    .collect();
                Word::reduce(rank, letters).unwrap()
            })
            .filter(|word| !word.is_identity())
            .collect()
    }

    fn random_connected_covering(rng: &mut StdRng, rank: usize, fiber: usize) -> Covering {
        loop {
            let tables: Vec<Vec<usize>> = (0..rank)
                .map(|_| {
                    let mut table: Vec<usize> = (0..fiber).collect();
                    for i in (1..fiber).rev() {
                        table.swap(i, rng.gen_range(0..=i));
                    }
                    table
                })
                .collect();
            let c = Covering::new(Alphabet::new(rank), fiber, tables, 0).unwrap();
            if c.is_connected() {
                return c;
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let c = parity_covering();
        assert!(c.isomorphic(&c).unwrap());
        let trivial = Covering::new(ab(), 1, vec![vec![0], vec![0]], 0).unwrap();
        assert!(!c.isomorphic(&trivial).unwrap());
        // same subgroup under a relabelled fiber
        let relabeled = Covering::new(ab(), 2, vec![vec![1, 0], vec![1, 0]], 1).unwrap();
        assert!(c.isomorphic(&relabeled).unwrap());
        // index 2 but a different subgroup: a fixes, b swaps
        let other = Covering::new(ab(), 2, vec![vec![0, 1], vec![1, 0]], 0).unwrap();
        assert!(!c.isomorphic(&other).unwrap());
    }

    #[test]
    fn isomorphism_requires_connectedness() {
        let two_orbits =
            Covering::new(Alphabet::with_names(["a"]).unwrap(), 2, vec![vec![0, 1]], 0).unwrap();
        assert!(matches!(
            two_orbits.isomorphic(&two_orbits).unwrap_err(),
            CoveringError::NotConnected { .. }
        ));
    }

    #[test]
    fn isomorphism_is_an_equivalence_relation() {
        let mut rng = StdRng::seed_from_u64(31);
        let coverings: Vec<Covering> = (0..12)
            .map(|_| {
                let rank = rng.gen_range(1..=3);
                let fiber = rng.gen_range(1..=4);
                random_connected_covering(&mut rng, rank, fiber)
            })
            .collect();
        for c in &coverings {
            assert!(c.isomorphic(c).unwrap());
        }
        for c1 in &coverings {
            for c2 in &coverings {
                if c1.rank() != c2.rank() {
                    continue;
                }
                let ab = c1.isomorphic(c2).unwrap();
                assert_eq!(ab, c2.isomorphic(c1).unwrap());
                for c3 in &coverings {
                    if c3.rank() != c1.rank() {
                        continue;
                    }
                    if ab && c2.isomorphic(c3).unwrap() {
                        assert!(c1.isomorphic(c3).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphic_coverings_agree_on_membership() {
        let folded = fold_words(&ab(), &[w(&ab(), "aa"), w(&ab(), "ab"), w(&ab(), "ab'")]).unwrap();
        let direct = parity_covering();
        for word in enumerate_reduced(2, 5) {
            assert_eq!(folded.is_member(&word).unwrap(), direct.is_member(&word).unwrap());
        }
    }

    #[test]
    fn trace_is_functorial() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..30 {
            let fiber = rng.gen_range(1..=5);
            let c = random_connected_covering(&mut rng, 2, fiber);
            for _ in 0..20 {
                let u = random_words(&mut rng, 2, 1, 8).pop().unwrap_or(Word::identity(2));
                let v = random_words(&mut rng, 2, 1, 8).pop().unwrap_or(Word::identity(2));
                let x = rng.gen_range(0..c.fiber_size());
                let uv = u.multiply(&v).unwrap();
                assert_eq!(
                    c.trace(&uv, x).unwrap(),
                    c.trace(&v, c.trace(&u, x).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn membership_is_closed_under_product_and_inverse() {
        let mut rng = StdRng::seed_from_u64(29);
        let c = parity_covering();
        let mut members = Vec::new();
        while members.len() < 40 {
            if let Some(word) = random_words(&mut rng, 2, 1, 10).pop() {
                if c.is_member(&word).unwrap() {
                    members.push(word);
                }
            }
        }
        for u in &members {
            assert!(c.is_member(&u.inverse()).unwrap());
            for v in &members {
                assert!(c.is_member(&u.multiply(v).unwrap()).unwrap());
            }
        }
    }
}
