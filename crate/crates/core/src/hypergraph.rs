//! k-uniform hypergraphs on the labeled vertex set `[0, n)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex label in `[0, n)` of the owning hypergraph.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got {0}")]
    UniformityTooSmall(usize),
    #[error("edge {edge:?} has {found} distinct vertices, expected {expected}")]
    Uniformity {
        edge: Vec<Vertex>,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} out of range [0, {n})")]
    Range { vertex: Vertex, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A sorted set of exactly `k` distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Box<[Vertex]>);

impl Edge {
    /// Builds an edge from any collection of vertices; the result is sorted and
    /// deduplicated, so the caller checks the size against `k`.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let set: BTreeSet<Vertex> = vertices.into_iter().collect();
        Edge(set.into_iter().collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Number of common vertices (merge over the sorted representations).
    pub fn intersection_size(&self, other: &Edge) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn intersection(&self, other: &Edge) -> Vec<Vertex> {
        self.0.iter().copied().filter(|&v| other.contains(v)).collect()
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        self.intersection_size(other) == 0
    }

    /// The edge `self ∪ {v}`.
    pub fn with_vertex(&self, v: Vertex) -> Edge {
        Edge::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simple k-uniform hypergraph.
///
/// Edges keep the order in which they were first supplied; detectors walk them
/// in that order, which keeps witnesses reproducible. Equality compares edge
/// sets and ignores order.
#[derive(Debug, Clone, Serialize)]
pub struct KHypergraph {
    n: usize,
    k: usize,
    edges: Vec<Edge>,
    #[serde(skip)]
    index: HashMap<Edge, usize>,
}

impl PartialEq for KHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.edges.len() == other.edges.len()
            && self.edges.iter().all(|e| other.contains_edge(e))
    }
}

impl Eq for KHypergraph {}

impl KHypergraph {
    /// Validates and builds a hypergraph. Repeated edges collapse to one.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        let mut graph = KHypergraph::empty(n, k)?;
        for raw in edges {
            let raw: Vec<Vertex> = raw.into_iter().collect();
            if let Some(&vertex) = raw.iter().find(|&&v| v as usize >= n) {
                return Err(HypergraphError::Range { vertex, n });
            }
            let edge = Edge::new(raw.iter().copied());
            if edge.len() != k {
                return Err(HypergraphError::Uniformity {
                    edge: raw,
                    expected: k,
                    found: edge.len(),
                });
            }
            graph.push_unchecked(edge);
        }
        Ok(graph)
    }

    pub fn empty(n: usize, k: usize) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::UniformityTooSmall(k));
        }
        Ok(KHypergraph {
            n,
            k,
            edges: Vec::new(),
            index: HashMap::new(),
        })
    }

    /// Builds from edges already known to be valid for `(n, k)`.
    pub(crate) fn from_valid_edges(n: usize, k: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(k >= 2);
        let mut graph = KHypergraph {
            n,
            k,
            edges: Vec::with_capacity(edges.len()),
            index: HashMap::with_capacity(edges.len()),
        };
        for e in edges {
            debug_assert_eq!(e.len(), k);
            debug_assert!(e.iter().all(|v| (v as usize) < n));
            graph.push_unchecked(e);
        }
        graph
    }

    fn push_unchecked(&mut self, edge: Edge) -> bool {
        if self.index.contains_key(&edge) {
            return false;
        }
        self.index.insert(edge.clone(), self.edges.len());
        self.edges.push(edge);
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.index.contains_key(edge)
    }

    pub fn edge_index(&self, edge: &Edge) -> Option<usize> {
        self.index.get(edge).copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// A new hypergraph with `edge` appended (no-op if already present).
    pub fn with_edge<I: IntoIterator<Item = Vertex>>(&self, edge: I) -> Result<Self, HypergraphError> {
        let raw: Vec<Vertex> = edge.into_iter().collect();
        let extra = KHypergraph::new(self.n, self.k, [raw])?;
        let mut graph = self.clone();
        graph.push_unchecked(extra.edges[0].clone());
        Ok(graph)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &KHypergraph) -> Result<Self, HypergraphError> {
        if self.k != other.k {
            return Err(HypergraphError::Uniformity {
                edge: other.edges.first().map(|e| e.vertices().to_vec()).unwrap_or_default(),
                expected: self.k,
                found: other.k,
            });
        }
        let shift = self.n as Vertex;
        let edges = self
            .edges
            .iter()
            .cloned()
            .chain(other.edges.iter().map(|e| Edge::new(e.iter().map(|v| v + shift))))
            .collect();
        Ok(KHypergraph::from_valid_edges(self.n + other.n, self.k, edges))
    }

    fn check_range(&self, vertices: &[Vertex]) -> Result<(), HypergraphError> {
        match vertices.iter().find(|&&v| v as usize >= self.n) {
            Some(&vertex) => Err(HypergraphError::Range { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// Deletes `removed` and every edge touching it, relabeling the surviving
    /// vertices order-preservingly onto `[0, n - |removed|)`.
    pub fn remove_vertices(&self, removed: &[Vertex]) -> Result<Reduced, HypergraphError> {
        self.check_range(removed)?;
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v as usize] = true;
        }
        let mut new_label = vec![Vertex::MAX; self.n];
        let mut original = Vec::with_capacity(self.n);
        for v in 0..self.n {
            if !gone[v] {
                new_label[v] = original.len() as Vertex;
                original.push(v as Vertex);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| !gone[v as usize]))
            .map(|e| Edge::new(e.iter().map(|v| new_label[v as usize])))
            .collect();
        Ok(Reduced {
            graph: KHypergraph::from_valid_edges(original.len(), self.k, edges),
            original,
        })
    }

    /// Number of edges meeting `set`.
    pub fn incident_edge_count(&self, set: &[Vertex]) -> Result<usize, HypergraphError> {
        self.check_range(set)?;
        let mut marked = vec![false; self.n];
        for &v in set {
            marked[v as usize] = true;
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.iter().any(|v| marked[v as usize]))
            .count())
    }

    /// First pair of edges (in edge order) meeting in exactly one vertex.
    pub fn find_pair_sharing_exactly_one(&self) -> Option<(&Edge, &Edge)> {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                if a.intersection_size(b) == 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Same hypergraph restricted to the edges for which `keep` holds.
    pub fn filter_edges<F: FnMut(&Edge) -> bool>(&self, mut keep: F) -> KHypergraph {
        let edges = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        KHypergraph::from_valid_edges(self.n, self.k, edges)
    }

    /// Vertices covered by at least one edge.
    pub fn covered_vertices(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| e.iter()).collect()
    }
}

/// Result of [`KHypergraph::remove_vertices`]: the smaller hypergraph plus the
/// map from its labels back to the labels of the original.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub graph: KHypergraph,
    /// `original[new_label] = old_label`.
    pub original: Vec<Vertex>,
}

impl Reduced {
    pub fn lift(&self, v: Vertex) -> Vertex {
        self.original[v as usize]
    }

    pub fn lift_edge(&self, e: &Edge) -> Edge {
        Edge::new(e.iter().map(|v| self.lift(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, k: usize, edges: &[&[Vertex]]) -> KHypergraph {
        KHypergraph::new(n, k, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn new_accepts_single_edge() {
        assert_eq!(hg(5, 4, &[&[0, 1, 2, 3]]).edge_count(), 1);
    }

    #[test]
    fn duplicate_edges_collapse() {
        assert_eq!(hg(5, 4, &[&[0, 1, 2, 3], &[3, 2, 1, 0]]).edge_count(), 1);
    }

    #[test]
    fn out_of_range_vertex_is_rejected() {
        let err = KHypergraph::new(4, 4, [vec![0, 1, 2, 4]]).unwrap_err();
        assert_eq!(err, HypergraphError::Range { vertex: 4, n: 4 });
    }

    #[test]
    fn wrong_edge_size_is_rejected() {
        let err = KHypergraph::new(5, 4, [vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, HypergraphError::Uniformity { found: 3, .. }));
        // repeated vertex shrinks the set
        let err = KHypergraph::new(5, 3, [vec![0, 1, 1]]).unwrap_err();
        assert!(matches!(err, HypergraphError::Uniformity { found: 2, .. }));
    }

    #[test]
    fn uniformity_below_two_is_rejected() {
        assert!(matches!(
            KHypergraph::empty(3, 1),
            Err(HypergraphError::UniformityTooSmall(1))
        ));
    }

    #[test]
    fn remove_non_incident_vertex() {
        let h = hg(6, 4, &[&[0, 1, 2, 3]]);
        let r = h.remove_vertices(&[5]).unwrap();
        assert_eq!(r.graph.n(), 5);
        assert_eq!(r.graph.edges(), &[Edge::new([0, 1, 2, 3])]);
    }

    #[test]
    fn remove_incident_vertex() {
        let h = hg(6, 4, &[&[0, 1, 2, 3]]);
        let r = h.remove_vertices(&[0]).unwrap();
        assert_eq!(r.graph.n(), 5);
        assert_eq!(r.graph.edge_count(), 0);
    }

    #[test]
    fn remove_relabels_and_lifts() {
        let h = hg(6, 4, &[&[0, 1, 2, 3], &[2, 3, 4, 5]]);
        let r = h.remove_vertices(&[4]).unwrap();
        assert_eq!(r.graph.n(), 5);
        assert_eq!(r.graph.edge_count(), 1);
        let r = h.remove_vertices(&[1]).unwrap();
        // {2,3,4,5} becomes {1,2,3,4}
        assert_eq!(r.graph.edges(), &[Edge::new([1, 2, 3, 4])]);
        assert_eq!(r.lift_edge(&r.graph.edges()[0]), Edge::new([2, 3, 4, 5]));
    }

    #[test]
    fn remove_out_of_range_errors() {
        let h = hg(6, 4, &[&[0, 1, 2, 3]]);
        assert!(h.remove_vertices(&[6]).is_err());
    }

    #[test]
    fn incident_counts() {
        let h = hg(6, 4, &[&[0, 1, 2, 3], &[2, 3, 4, 5]]);
        assert_eq!(h.incident_edge_count(&[2]).unwrap(), 2);
        assert_eq!(h.incident_edge_count(&[]).unwrap(), 0);
        assert_eq!(h.incident_edge_count(&[0, 4]).unwrap(), 2);
    }

    #[test]
    fn pair_sharing_one_vertex() {
        let h = hg(5, 3, &[&[0, 1, 2], &[2, 3, 4]]);
        let (a, b) = h.find_pair_sharing_exactly_one().unwrap();
        assert_eq!(a.intersection(b), vec![2]);
        assert!(hg(4, 3, &[&[0, 1, 2], &[1, 2, 3]])
            .find_pair_sharing_exactly_one()
            .is_none());
    }

    #[test]
    fn complete_triple_system_on_six_has_a_pair() {
        let all = itertools::Itertools::combinations(0..6u32, 3);
        let h = KHypergraph::new(6, 3, all).unwrap();
        assert_eq!(h.edge_count(), 20);
        assert!(h.find_pair_sharing_exactly_one().is_some());
    }

    #[test]
    fn equality_ignores_edge_order() {
        let a = hg(5, 3, &[&[0, 1, 2], &[2, 3, 4]]);
        let b = hg(5, 3, &[&[2, 3, 4], &[0, 1, 2]]);
        assert_eq!(a, b);
        assert_ne!(a, hg(6, 3, &[&[0, 1, 2], &[2, 3, 4]]));
    }
}
