//! Finite directed multigraphs with no sinks or sources, and the path
//! combinatorics used for symbolic coding: paths of fixed length, cycles, and
//! the ultrametric on truncated infinite paths.
//!
//! Conventions used throughout the crate: an edge `e` points from its source
//! `s(e)` to its range `r(e)`; a path `α = (α₁, …, α_k)` chains so that
//! `r(α_i) = s(α_{i+1})`, has source `s(α) = s(α₁)` and range `r(α) = r(α_k)`,
//! and the composite contraction associated with it applies `α_k` first.
//! Edge ids must be dense integers `0..n`, so permutations of edges can act on
//! plain indices.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Identifier of a vertex. Vertex ids are arbitrary distinct integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Identifier of an edge. Edge ids are required to be dense `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A single defect found while validating a raw graph description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphIssue {
    /// Vertex with no outgoing edge.
    SinkVertex(VertexId),
    /// Vertex with no incoming edge.
    SourceVertex(VertexId),
    /// Edge endpoint that names no declared vertex.
    DanglingEdgeEndpoint(EdgeId),
    DuplicateVertexId(VertexId),
    DuplicateEdgeId(EdgeId),
    /// Edge ids must be exactly `0..n`.
    NonDenseEdgeIds,
    NoVertices,
    NoEdges,
}

impl fmt::Display for GraphIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphIssue::SinkVertex(v) => write!(f, "{v} has no outgoing edge"),
            GraphIssue::SourceVertex(v) => write!(f, "{v} has no incoming edge"),
            GraphIssue::DanglingEdgeEndpoint(e) => {
                write!(f, "{e} has an endpoint that is not a declared vertex")
            }
            GraphIssue::DuplicateVertexId(v) => write!(f, "duplicate vertex id {v}"),
            GraphIssue::DuplicateEdgeId(e) => write!(f, "duplicate edge id {e}"),
            GraphIssue::NonDenseEdgeIds => write!(f, "edge ids are not dense 0..n"),
            GraphIssue::NoVertices => write!(f, "graph has no vertices"),
            GraphIssue::NoEdges => write!(f, "graph has no edges"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    /// Validation failed; every defect is listed, not just the first.
    #[error("invalid graph: {}", issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid { issues: Vec<GraphIssue> },
    #[error("path edges do not chain: r({prev}) != s({next})")]
    BrokenChain { prev: EdgeId, next: EdgeId },
    #[error("empty edge sequence")]
    EmptyPath,
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("paths start at different vertices and are not comparable")]
    DifferentStartVertex,
}

/// Raw graph description as it appears in configuration files: explicit ids,
/// nothing validated yet.
#[derive(Debug, Clone, Default)]
pub struct RawGraph {
    pub vertices: Vec<VertexId>,
    /// `(edge id, source vertex, range vertex)` triples.
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
}

/// A validated directed multigraph: every vertex has an incoming and an
/// outgoing edge, edge ids are dense, endpoints resolve.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    vertices: Vec<VertexId>,
    /// Edge endpoints indexed by edge id: `endpoints[e] = (s(e), r(e))`.
    endpoints: Vec<(VertexId, VertexId)>,
    /// Outgoing edge ids per vertex position, each list sorted.
    outgoing: Vec<Vec<EdgeId>>,
    /// Incoming edge ids per vertex position, each list sorted.
    incoming: Vec<Vec<EdgeId>>,
}

/// Checks a raw description and builds the validated graph. The error lists
/// every sink, source, dangling endpoint, and id defect at once.
pub fn validate_graph(raw: &RawGraph) -> Result<DirectedGraph, GraphError> {
    let mut issues = Vec::new();

    if raw.vertices.is_empty() {
        issues.push(GraphIssue::NoVertices);
    }
    if raw.edges.is_empty() {
        issues.push(GraphIssue::NoEdges);
    }

    let mut seen = BTreeSet::new();
    for &v in &raw.vertices {
        if !seen.insert(v) {
            issues.push(GraphIssue::DuplicateVertexId(v));
        }
    }

    let mut edge_ids = BTreeSet::new();
    for &(id, _, _) in &raw.edges {
        if !edge_ids.insert(id) {
            issues.push(GraphIssue::DuplicateEdgeId(id));
        }
    }
    let dense = edge_ids.len() == raw.edges.len()
        && edge_ids
            .iter()
            .enumerate()
            .all(|(i, id)| id.0 as usize == i);
    if !raw.edges.is_empty() && !dense {
        issues.push(GraphIssue::NonDenseEdgeIds);
    }

    let vertex_set: BTreeSet<VertexId> = raw.vertices.iter().copied().collect();
    for &(id, s, r) in &raw.edges {
        if !vertex_set.contains(&s) || !vertex_set.contains(&r) {
            issues.push(GraphIssue::DanglingEdgeEndpoint(id));
        }
    }

    // Sink/source detection only makes sense once endpoints resolve.
    if issues.is_empty() {
        for &v in &raw.vertices {
            if !raw.edges.iter().any(|&(_, s, _)| s == v) {
                issues.push(GraphIssue::SinkVertex(v));
            }
            if !raw.edges.iter().any(|&(_, _, r)| r == v) {
                issues.push(GraphIssue::SourceVertex(v));
            }
        }
    }

    if !issues.is_empty() {
        return Err(GraphError::Invalid { issues });
    }

    let vertices = raw.vertices.clone();
    let mut endpoints = vec![(VertexId(0), VertexId(0)); raw.edges.len()];
    for &(id, s, r) in &raw.edges {
        endpoints[id.0 as usize] = (s, r);
    }
    let pos = |v: VertexId| vertices.iter().position(|&u| u == v).unwrap();
    let mut outgoing = vec![Vec::new(); vertices.len()];
    let mut incoming = vec![Vec::new(); vertices.len()];
    for (i, &(s, r)) in endpoints.iter().enumerate() {
        outgoing[pos(s)].push(EdgeId(i as u32));
        incoming[pos(r)].push(EdgeId(i as u32));
    }

    Ok(DirectedGraph {
        vertices,
        endpoints,
        outgoing,
        incoming,
    })
}

impl DirectedGraph {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.endpoints.len() as u32).map(EdgeId)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        (e.0 as usize) < self.endpoints.len()
    }

    /// Source vertex `s(e)`.
    pub fn source(&self, e: EdgeId) -> VertexId {
        self.endpoints[e.0 as usize].0
    }

    /// Range vertex `r(e)`.
    pub fn range(&self, e: EdgeId) -> VertexId {
        self.endpoints[e.0 as usize].1
    }

    /// Position of a vertex id in the declared vertex list.
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    /// Edges leaving `v`, sorted by id.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[self.vertex_index(v).expect("vertex not in graph")]
    }

    /// Edges entering `v`, sorted by id.
    pub fn incoming(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[self.vertex_index(v).expect("vertex not in graph")]
    }

    /// Two graphs are structurally identical when the identity on dense edge
    /// ids and on the vertex list is a graph isomorphism.
    pub fn same_shape(&self, other: &DirectedGraph) -> bool {
        self.vertices == other.vertices && self.endpoints == other.endpoints
    }
}

/// A nonempty chained edge sequence through a graph.
///
/// Stored together with its source and range vertices so later stages never
/// need the graph to answer `s(α)`/`r(α)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinitePath {
    edges: Vec<EdgeId>,
    source: VertexId,
    range: VertexId,
}

/// A finite truncation `α|n` of an infinite path: same data as a
/// [`FinitePath`], read as "the first `n` edges of an infinite path". All
/// infinite-path computations in the crate work on truncations with an
/// explicit depth-dependent error bound.
pub type PathPrefix = FinitePath;

impl FinitePath {
    /// Validates chaining against the graph.
    pub fn new(graph: &DirectedGraph, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        for &e in &edges {
            if !graph.contains_edge(e) {
                return Err(GraphError::UnknownEdge(e));
            }
        }
        for w in edges.windows(2) {
            if graph.range(w[0]) != graph.source(w[1]) {
                return Err(GraphError::BrokenChain {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(FinitePath {
            source: graph.source(edges[0]),
            range: graph.range(*edges.last().unwrap()),
            edges,
        })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false // paths are nonempty by construction
    }

    /// Source vertex `s(α) = s(α₁)`.
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// Range vertex `r(α) = r(α_k)`.
    pub fn range(&self) -> VertexId {
        self.range
    }

    /// Longest common prefix length in edges (defined for paths from the same
    /// start vertex).
    pub fn common_prefix_len(&self, other: &FinitePath) -> usize {
        self.edges
            .iter()
            .zip(&other.edges)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// The truncation consisting of the first `n` edges (`n ≥ 1`).
    pub fn truncate(&self, graph: &DirectedGraph, n: usize) -> Result<FinitePath, GraphError> {
        FinitePath::new(graph, self.edges[..n.min(self.edges.len())].to_vec())
    }

    /// Prepends an edge `e` with `r(e) = s(α)`, as the shift section does.
    pub fn prepend(&self, graph: &DirectedGraph, e: EdgeId) -> Result<FinitePath, GraphError> {
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        FinitePath::new(graph, edges)
    }
}

impl fmt::Display for FinitePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.edges.iter().map(|e| e.0.to_string()).collect();
        write!(f, "({})", ids.join(","))
    }
}

/// All chained paths of exactly `k` edges starting at `v`, in lexicographic
/// edge-id order. `k ≥ 1`.
pub fn paths_of_length(graph: &DirectedGraph, v: VertexId, k: usize) -> Vec<FinitePath> {
    assert!(k >= 1, "paths have at least one edge");
    let mut out = Vec::new();
    let mut stack: Vec<EdgeId> = Vec::with_capacity(k);
    fn recurse(
        graph: &DirectedGraph,
        at: VertexId,
        k: usize,
        stack: &mut Vec<EdgeId>,
        out: &mut Vec<FinitePath>,
    ) {
        if stack.len() == k {
            out.push(FinitePath::new(graph, stack.clone()).expect("chained by construction"));
            return;
        }
        for &e in graph.outgoing(at) {
            stack.push(e);
            recurse(graph, graph.range(e), k, stack, out);
            stack.pop();
        }
    }
    recurse(graph, v, k, &mut stack, &mut out);
    out
}

/// All cycles (paths with `s(α) = r(α)`) of length `1..=max_len` based at `v`,
/// shortest first, lexicographic within a length.
pub fn cycles_up_to(graph: &DirectedGraph, v: VertexId, max_len: usize) -> Vec<FinitePath> {
    let mut out = Vec::new();
    for k in 1..=max_len {
        out.extend(
            paths_of_length(graph, v, k)
                .into_iter()
                .filter(|p| p.range() == v),
        );
    }
    out
}

/// The ultrametric `δ(α, β) = c^{|common prefix|}` on truncated infinite paths
/// from a common start vertex, where `0 < c < 1` is the system's global upper
/// contraction ratio. Distinct-at-the-first-edge pairs get distance 1; two
/// truncations that agree entirely get `c^{min length}` (they may still
/// diverge past the truncation depth, so the value is an upper bound in the
/// usual truncation sense).
pub fn path_metric(a: &PathPrefix, b: &PathPrefix, c: f64) -> Result<f64, GraphError> {
    assert!(c > 0.0 && c < 1.0, "ratio must lie in (0,1)");
    if a.source() != b.source() {
        return Err(GraphError::DifferentStartVertex);
    }
    let k = a.common_prefix_len(b);
    Ok(c.powi(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One vertex, two loop edges: the Cantor-style graph.
    fn loop_graph(n: u32) -> DirectedGraph {
        let raw = RawGraph {
            vertices: vec![VertexId(0)],
            edges: (0..n)
                .map(|i| (EdgeId(i), VertexId(0), VertexId(0)))
                .collect(),
        };
        validate_graph(&raw).unwrap()
    }

    /// Two vertices, edges 0: a→b, 1: b→a, 2: b→b.
    fn two_vertex_graph() -> DirectedGraph {
        let a = VertexId(0);
        let b = VertexId(1);
        let raw = RawGraph {
            vertices: vec![a, b],
            edges: vec![(EdgeId(0), a, b), (EdgeId(1), b, a), (EdgeId(2), b, b)],
        };
        validate_graph(&raw).unwrap()
    }

    #[test]
    fn validate_accepts_loop_graph() {
        let g = loop_graph(2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.source(EdgeId(1)), VertexId(0));
        assert_eq!(g.range(EdgeId(1)), VertexId(0));
    }

    #[test]
    fn validate_reports_every_defect_at_once() {
        // v1 is a sink (no outgoing) and v2 is a source (no incoming).
        let raw = RawGraph {
            vertices: vec![VertexId(0), VertexId(1), VertexId(2)],
            edges: vec![
                (EdgeId(0), VertexId(0), VertexId(0)),
                (EdgeId(1), VertexId(2), VertexId(1)),
            ],
        };
        let err = validate_graph(&raw).unwrap_err();
        let GraphError::Invalid { issues } = err else {
            panic!("expected Invalid")
        };
        assert!(issues.contains(&GraphIssue::SinkVertex(VertexId(1))));
        assert!(issues.contains(&GraphIssue::SourceVertex(VertexId(2))));
        assert_eq!(issues.len(), 2);
    }

    #[test]
    fn validate_rejects_dangling_endpoint() {
        let raw = RawGraph {
            vertices: vec![VertexId(0)],
            edges: vec![
                (EdgeId(0), VertexId(0), VertexId(0)),
                (EdgeId(1), VertexId(0), VertexId(7)),
            ],
        };
        let err = validate_graph(&raw).unwrap_err();
        let GraphError::Invalid { issues } = err else {
            panic!("expected Invalid")
        };
        assert!(issues.contains(&GraphIssue::DanglingEdgeEndpoint(EdgeId(1))));
    }

    #[test]
    fn validate_rejects_non_dense_edge_ids() {
        let raw = RawGraph {
            vertices: vec![VertexId(0)],
            edges: vec![
                (EdgeId(0), VertexId(0), VertexId(0)),
                (EdgeId(2), VertexId(0), VertexId(0)),
            ],
        };
        let err = validate_graph(&raw).unwrap_err();
        let GraphError::Invalid { issues } = err else {
            panic!("expected Invalid")
        };
        assert!(issues.contains(&GraphIssue::NonDenseEdgeIds));
    }

    #[test]
    fn paths_chain_and_enumerate_lexicographically() {
        let g = two_vertex_graph();
        // From a: length 2 paths are (0,1) and (0,2).
        let paths = paths_of_length(&g, VertexId(0), 2);
        let as_ids: Vec<Vec<u32>> = paths
            .iter()
            .map(|p| p.edges().iter().map(|e| e.0).collect())
            .collect();
        assert_eq!(as_ids, vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(paths[0].source(), VertexId(0));
        assert_eq!(paths[0].range(), VertexId(0));
        assert_eq!(paths[1].range(), VertexId(1));
    }

    #[test]
    fn loop_graph_path_count_is_edge_count_to_the_k() {
        let g = loop_graph(2);
        // Brute-force oracle: 2^k chained sequences, all valid on a loop graph.
        for k in 1..=6 {
            assert_eq!(paths_of_length(&g, VertexId(0), k).len(), 1usize << k);
        }
    }

    #[test]
    fn rejects_broken_chain() {
        let g = two_vertex_graph();
        // Edge 0 ends at b, edge 0 starts at a: (0,0) does not chain.
        let err = FinitePath::new(&g, vec![EdgeId(0), EdgeId(0)]).unwrap_err();
        assert!(matches!(err, GraphError::BrokenChain { .. }));
    }

    #[test]
    fn cycles_up_to_finds_loops_and_composites() {
        let g = two_vertex_graph();
        // Cycles at a: length 2 (0,1); length 3 (0,2,1).
        let cycles = cycles_up_to(&g, VertexId(0), 3);
        let as_ids: Vec<Vec<u32>> = cycles
            .iter()
            .map(|p| p.edges().iter().map(|e| e.0).collect())
            .collect();
        assert_eq!(as_ids, vec![vec![0, 1], vec![0, 2, 1]]);
    }

    #[test]
    fn path_metric_is_ratio_to_common_prefix_length() {
        let g = loop_graph(2);
        let c = 0.5;
        let a = FinitePath::new(&g, vec![EdgeId(0), EdgeId(1), EdgeId(0)]).unwrap();
        let b = FinitePath::new(&g, vec![EdgeId(0), EdgeId(1), EdgeId(1)]).unwrap();
        let d = path_metric(&a, &b, c).unwrap();
        assert_eq!(d, 0.25); // prefix length 2
                             // Same truncations at distinct first edges are at distance 1.
        let e = FinitePath::new(&g, vec![EdgeId(1)]).unwrap();
        assert_eq!(path_metric(&a, &e, c).unwrap(), 1.0);
    }

    #[test]
    fn path_metric_requires_common_start() {
        let g = two_vertex_graph();
        let a = FinitePath::new(&g, vec![EdgeId(0)]).unwrap();
        let b = FinitePath::new(&g, vec![EdgeId(1)]).unwrap();
        assert!(matches!(
            path_metric(&a, &b, 0.5),
            Err(GraphError::DifferentStartVertex)
        ));
    }

    #[test]
    fn prepend_acts_as_shift_section() {
        let g = two_vertex_graph();
        let tail = FinitePath::new(&g, vec![EdgeId(1), EdgeId(0)]).unwrap(); // b→a→b
        let whole = tail.prepend(&g, EdgeId(0)).unwrap(); // a→b prepended
        assert_eq!(whole.source(), VertexId(0));
        assert_eq!(whole.len(), 3);
        // Prepending an edge whose range is not s(α) must fail.
        assert!(tail.prepend(&g, EdgeId(1)).is_err());
    }
}
