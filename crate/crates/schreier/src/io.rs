//! File formats shared between the library and the CLI.
//!
//! Coverings travel as JSON documents
//!
//! ```json
//! { "rank": 2, "names": ["a", "b"], "fiber": 2,
//!   "action": [[1, 0], [1, 0]], "basepoint": 0 }
//! ```
//!
//! with one image table per generator, each a permutation of the fiber.
//! Graphs travel either as JSON `{ "vertices": 3, "edges": [[0,1],[1,2]] }`
//! or as plain text, one declaration per line:
//!
//! ```text
//! vertices 3
//! edge 0 1
//! edge 1 2
//! ```
//!
//! Edge indices are line order. Words everywhere use the apostrophe
//! syntax of [`Alphabet::format_word`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::Basis;
use crate::covering::{Covering, CoveringError, FoldedGraph};
use crate::graph::Graph;
use crate::word::{Alphabet, AlphabetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("names list has {got} entries but rank is {rank}")]
    NamesLength { rank: usize, got: usize },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Wire form of a covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringDoc {
    pub rank: usize,
    pub names: Vec<String>,
    pub fiber: usize,
    pub action: Vec<Vec<usize>>,
    pub basepoint: usize,
}

impl CoveringDoc {
    pub fn from_covering(covering: &Covering) -> CoveringDoc {
        CoveringDoc {
            rank: covering.rank(),
            names: covering.alphabet().names().to_vec(),
            fiber: covering.fiber_size(),
            action: (0..covering.rank())
                .map(|gen| covering.permutation(gen).images().to_vec())
                .collect(),
            basepoint: covering.basepoint(),
        }
    }

    pub fn to_covering(&self) -> Result<Covering, DocError> {
        if self.names.len() != self.rank {
            return Err(DocError::NamesLength { rank: self.rank, got: self.names.len() });
        }
        let alphabet = Alphabet::with_names(self.names.clone())?;
        Ok(Covering::new(alphabet, self.fiber, self.action.clone(), self.basepoint)?)
    }
}

/// Wire form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn from_graph(graph: &Graph) -> GraphDoc {
        GraphDoc { vertices: graph.num_vertices(), edges: graph.edges().to_vec() }
    }

    pub fn to_graph(&self) -> Result<Graph, DocError> {
        Ok(Graph::new(self.vertices, self.edges.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GraphTextError {
    pub line: usize,
    pub message: String,
}

/// Parse the line-oriented graph format: a `vertices N` header, then one
/// `edge SRC DST` line per edge. Blank lines are skipped; edge indices
/// follow line order.
pub fn parse_graph_text(input: &str) -> Result<GraphDoc, GraphTextError> {
    let mut vertices = None;
    let mut edges = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            ["vertices", n] if vertices.is_none() => {
                let n = n.parse().map_err(|_| GraphTextError {
                    line,
                    message: format!("invalid vertex count {n:?}"),
                })?;
                vertices = Some(n);
            }
            ["vertices", ..] => {
                return Err(GraphTextError {
                    line,
                    message: "duplicate or malformed vertices line".to_string(),
                });
            }
            ["edge", src, dst] => {
                if vertices.is_none() {
                    return Err(GraphTextError {
                        line,
                        message: "edge before the vertices line".to_string(),
                    });
                }
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| GraphTextError {
                        line,
                        message: format!("invalid vertex index {s:?}"),
                    })
                };
                edges.push((parse(src)?, parse(dst)?));
            }
            _ => {
                return Err(GraphTextError {
                    line,
                    message: format!("expected `vertices N` or `edge SRC DST`, got {raw:?}"),
                });
            }
        }
    }
    let vertices = vertices.ok_or(GraphTextError {
        line: input.lines().count() + 1,
        message: "missing vertices line".to_string(),
    })?;
    Ok(GraphDoc { vertices, edges })
}

/// Render a graph in the line-oriented text format.
pub fn graph_to_text(doc: &GraphDoc) -> String {
    let mut out = format!("vertices {}\n", doc.vertices);
    for &(src, dst) in &doc.edges {
        out.push_str(&format!("edge {src} {dst}\n"));
    }
    out
}

/// Wire form of a computed basis: generator words (in `(a, x)` order of
/// their non-tree edges), the tree edges as `(generator, source point)`
/// labels, and the tree-path word of every fiber point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub rank: usize,
    pub names: Vec<String>,
    pub fiber: usize,
    pub formula: usize,
    pub generators: Vec<String>,
    pub tree: Vec<(usize, usize)>,
    pub vertex_words: Vec<String>,
}

impl BasisDoc {
    pub fn from_basis(basis: &Basis, covering: &Covering) -> BasisDoc {
        let al = covering.alphabet();
        let labeled = covering.schreier_graph();
        BasisDoc {
            rank: basis.rank(),
            names: al.names().to_vec(),
            fiber: covering.fiber_size(),
            formula: basis.rank(),
            generators: basis.generators().iter().map(|g| al.format_word(g)).collect(),
            tree: basis
                .tree()
                .tree_edges()
                .iter()
                .map(|&e| {
                    let label = labeled.label(e);
                    (label.gen, label.point)
                })
                .collect(),
            vertex_words: basis.vertex_words().iter().map(|w| al.format_word(w)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub word: String,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteDoc {
    pub word: String,
    pub basis_word: String,
    pub roundtrip: String,
    pub roundtrip_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDoc {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Doc {
    pub rank: usize,
    pub non_tree_edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub checks: Vec<CheckDoc>,
    pub all_passed: bool,
}

/// Diagnostic emitted when folding does not close up into a covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteIndexDoc {
    pub error: String,
    pub rank: usize,
    pub vertices: usize,
    pub basepoint: usize,
    /// `(source, generator, target)` triples of the folded graph.
    pub edges: Vec<(usize, usize, usize)>,
    /// `(point, generator, direction)` slots a covering would need,
    /// direction `"out"` or `"in"`.
    pub missing: Vec<(usize, usize, String)>,
}

impl InfiniteIndexDoc {
    pub fn from_folded(folded: &FoldedGraph) -> InfiniteIndexDoc {
        InfiniteIndexDoc {
            error: "infinite_index".to_string(),
            rank: folded.rank,
            vertices: folded.num_vertices,
            basepoint: folded.basepoint,
            edges: folded.edges.clone(),
            missing: folded
                .missing_slots()
                .iter()
                .map(|slot| {
                    (slot.point, slot.gen, if slot.outgoing { "out" } else { "in" }.to_string())
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::fold_words;
    use crate::word::FiniteGroup;

    fn parity_covering() -> Covering {
        let al = Alphabet::with_names(["a", "b"]).unwrap();
        Covering::from_hom(al, &FiniteGroup::cyclic(2), &[1, 1]).unwrap()
    }

    #[test]
    fn covering_doc_roundtrip() {
        let c = parity_covering();
        let doc = CoveringDoc::from_covering(&c);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: CoveringDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_covering().unwrap(), c);
    }

    #[test]
    fn covering_doc_schema_shape() {
        let doc = CoveringDoc::from_covering(&parity_covering());
        let value: serde_json::Value = serde_json::to_value(&doc).unwrap();
        assert_eq!(value["rank"], 2);
        assert_eq!(value["names"], serde_json::json!(["a", "b"]));
        assert_eq!(value["fiber"], 2);
        assert_eq!(value["action"], serde_json::json!([[1, 0], [1, 0]]));
        assert_eq!(value["basepoint"], 0);
    }

    #[test]
    fn covering_doc_rejects_invalid_data() {
        let doc = CoveringDoc {
            rank: 1,
            names: vec!["a".to_string()],
            fiber: 2,
            action: vec![vec![0, 0]],
            basepoint: 0,
        };
        assert!(matches!(
            doc.to_covering().unwrap_err(),
            DocError::Covering(CoveringError::NotPermutation { gen: 0 })
        ));
        let doc = CoveringDoc {
            rank: 2,
            names: vec!["a".to_string()],
            fiber: 1,
            action: vec![vec![0], vec![0]],
            basepoint: 0,
        };
        assert!(matches!(doc.to_covering().unwrap_err(), DocError::NamesLength { .. }));
    }

    #[test]
    fn graph_doc_roundtrip_and_schema() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let doc = GraphDoc::from_graph(&g);
        let value = serde_json::to_value(&doc).unwrap();
        assert_eq!(value, serde_json::json!({"vertices": 3, "edges": [[0, 1], [1, 2]]}));
        let parsed: GraphDoc = serde_json::from_value(value).unwrap();
        assert_eq!(parsed.to_graph().unwrap(), g);
    }

    #[test]
    fn graph_text_roundtrip() {
        let text = "vertices 2\nedge 0 1\nedge 1 0\n";
        let doc = parse_graph_text(text).unwrap();
        assert_eq!(doc.vertices, 2);
        assert_eq!(doc.edges, vec![(0, 1), (1, 0)]);
        assert_eq!(graph_to_text(&doc), text);
    }

    #[test]
    fn graph_text_errors_carry_line_numbers() {
        let err = parse_graph_text("vertices 2\nedge 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_graph_text("edge 0 1\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_graph_text("").unwrap_err();
        assert_eq!(err.message, "missing vertices line");
    }

    #[test]
    fn basis_doc_contents() {
        let c = parity_covering();
        let basis = crate::basis::subgroup_basis(&c).unwrap();
        let doc = BasisDoc::from_basis(&basis, &c);
        assert_eq!(doc.rank, 3);
        assert_eq!(doc.generators, vec!["aa", "ba'", "ab"]);
        assert_eq!(doc.tree, vec![(0, 0)]);
        assert_eq!(doc.vertex_words, vec!["1", "a"]);
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: BasisDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
    }

    #[test]
    fn infinite_index_doc_from_commutator() {
        let al = Alphabet::with_names(["a", "b"]).unwrap();
        let gens = [al.parse_word("aba'b'").unwrap()];
        match fold_words(&al, &gens).unwrap_err() {
            CoveringError::InfiniteIndex(folded) => {
                let doc = InfiniteIndexDoc::from_folded(&folded);
                assert_eq!(doc.error, "infinite_index");
                assert!(!doc.missing.is_empty());
                let json = serde_json::to_string(&doc).unwrap();
                let parsed: InfiniteIndexDoc = serde_json::from_str(&json).unwrap();
                assert_eq!(parsed, doc);
            }
            other => panic!("expected InfiniteIndex, got {other:?}"),
        }
    }
}
