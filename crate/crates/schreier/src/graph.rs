//! Finite directed multigraphs with deterministic spanning-tree growth.
//!
//! Edges are ordered pairs of vertex indices; parallel edges and self-loops
//! are allowed. Connectivity always treats edges as undirected, but each
//! edge keeps its orientation so that tree traversals can report whether
//! they run with or against it.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} touches vertex {vertex}, but the graph has {num_vertices} vertices")]
    InvalidEndpoint { edge: usize, vertex: usize, num_vertices: usize },
    #[error("graph is not connected ({} components)", component_count(.components))]
    NotConnected { components: Vec<usize> },
    #[error("root {root} out of range for {num_vertices} vertices")]
    RootOutOfRange { root: usize, num_vertices: usize },
    #[error("partition covers {got} vertices, graph has {expected}")]
    PartitionSizeMismatch { expected: usize, got: usize },
    #[error("a vertex partition needs both classes non-empty")]
    EmptyColorClass,
    #[error("no edge crosses the partition (the graph cannot be connected)")]
    NoCrossingEdge,
}

fn component_count(labels: &[usize]) -> usize {
    labels.iter().copied().max().map_or(0, |m| m + 1)
}

/// A finite directed multigraph: a vertex count and an ordered edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph, GraphError> {
        for (i, &(src, dst)) in edges.iter().enumerate() {
            for v in [src, dst] {
                if v >= num_vertices {
                    return Err(GraphError::InvalidEndpoint { edge: i, vertex: v, num_vertices });
                }
            }
        }
        Ok(Graph { num_vertices, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Incidence lists: for each vertex, `(edge index, other endpoint,
    /// orientation as seen from this vertex)`, sorted by edge index.
    /// A self-loop contributes two entries at its vertex.
    fn incidence(&self) -> Vec<Vec<(usize, usize, Direction)>> {
        let mut incid = vec![Vec::new(); self.num_vertices];
        for (i, &(src, dst)) in self.edges.iter().enumerate() {
            incid[src].push((i, dst, Direction::Forward));
            incid[dst].push((i, src, Direction::Backward));
        }
        incid
    }

    /// Component labels `0..k`, where labels are assigned in order of each
    /// component's least vertex. Two vertices share a label exactly when an
    /// undirected edge path joins them.
    pub fn connected_components(&self) -> Vec<usize> {
        let incid = self.incidence();
        let mut labels = vec![usize::MAX; self.num_vertices];
        let mut next = 0;
        for start in 0..self.num_vertices {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = next;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(_, w, _) in &incid[u] {
                    if labels[w] == usize::MAX {
                        labels[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        labels
    }

    /// True when the graph has at least one vertex and every vertex is
    /// reachable from vertex 0. The empty graph is not connected: connected
    /// spaces are inhabited.
    pub fn is_connected(&self) -> bool {
        self.num_vertices >= 1 && component_count(&self.connected_components()) == 1
    }

    /// Rank of the fundamental group of a connected graph:
    /// `|E| - |V| + 1`, the number of edges outside any spanning tree.
    pub fn euler_rank(&self) -> Result<usize, GraphError> {
        let components = self.connected_components();
        if component_count(&components) != 1 {
            return Err(GraphError::NotConnected { components });
        }
        Ok(self.edges.len() - (self.num_vertices - 1))
    }

    /// Least-index edge whose endpoints carry different colors. For a
    /// connected graph with both classes inhabited such an edge always
    /// exists; failure therefore signals a disconnected input.
    pub fn find_crossing_edge(&self, partition: &VertexPartition) -> Result<usize, GraphError> {
        if partition.color.len() != self.num_vertices {
            return Err(GraphError::PartitionSizeMismatch {
                expected: self.num_vertices,
                got: partition.color.len(),
            });
        }
        self.edges
            .iter()
            .position(|&(src, dst)| partition.color[src] != partition.color[dst])
            .ok_or(GraphError::NoCrossingEdge)
    }

    /// Breadth-first spanning tree from `root`, deterministic: vertices are
    /// processed in discovery order and each vertex scans its incident
    /// edges in increasing edge-index order, ignoring orientation.
    pub fn spanning_tree(&self, root: usize) -> Result<SpanningTree, GraphError> {
        if root >= self.num_vertices {
            return Err(GraphError::RootOutOfRange { root, num_vertices: self.num_vertices });
        }
        let components = self.connected_components();
        if component_count(&components) != 1 {
            return Err(GraphError::NotConnected { components });
        }
        let incid = self.incidence();
        let mut parent: Vec<Option<ParentLink>> = vec![None; self.num_vertices];
        let mut visited = vec![false; self.num_vertices];
        visited[root] = true;
        let mut tree_edges = Vec::with_capacity(self.num_vertices.saturating_sub(1));
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(edge, w, direction) in &incid[u] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(ParentLink { vertex: u, edge, direction });
                    tree_edges.push(edge);
                    queue.push_back(w);
                }
            }
        }
        tree_edges.sort_unstable();
        Ok(SpanningTree { root, parent, tree_edges })
    }
}

/// Orientation of an edge relative to a traversal: `Forward` means the
/// traversal runs source-to-destination.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// How a non-root vertex hangs off its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentLink {
    pub vertex: usize,
    pub edge: usize,
    /// `Forward` when the tree edge points parent -> child.
    pub direction: Direction,
}

/// A rooted spanning tree: parent links plus the sorted set of tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<ParentLink>>,
    tree_edges: Vec<usize>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    /// Tree edge indices in increasing order; always `|V| - 1` of them.
    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.tree_edges.binary_search(&edge).is_ok()
    }

    pub fn parent(&self, vertex: usize) -> Option<&ParentLink> {
        self.parent[vertex].as_ref()
    }

    /// The unique tree path root -> `vertex` as `(edge, direction)` pairs,
    /// where the direction says how the traversal crosses the edge. Empty
    /// for the root.
    pub fn path_from_root(&self, vertex: usize) -> Vec<(usize, Direction)> {
        let mut path = Vec::new();
        let mut v = vertex;
        while let Some(link) = &self.parent[v] {
            path.push((link.edge, link.direction));
            v = link.vertex;
        }
        path.reverse();
        path
    }
}

/// A two-coloring of the vertices with both classes inhabited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    color: Vec<bool>,
}

impl VertexPartition {
    pub fn new(color: Vec<bool>) -> Result<VertexPartition, GraphError> {
        if !color.contains(&true) || !color.contains(&false) {
            return Err(GraphError::EmptyColorClass);
        }
        Ok(VertexPartition { color })
    }

    pub fn colors(&self) -> &[bool] {
        &self.color
    }
}
