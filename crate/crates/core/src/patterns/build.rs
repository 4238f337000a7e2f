use super::{PatternError, PatternKind};
use crate::hypergraph::{Edge, KHypergraph, Vertex};

/// The linear path on `length * (k - 1) + 1` vertices; edge `i` starts at
/// vertex `i * (k - 1)`.
pub fn build_linear_path(k: usize, length: usize) -> Result<KHypergraph, PatternError> {
    if k < 2 {
        return Err(PatternError::Uniformity { what: "a linear path", k });
    }
    if length < 1 {
        return Err(PatternError::Length {
            kind: PatternKind::LinearPath,
            length,
            min: 1,
        });
    }
    let step = (k - 1) as Vertex;
    let edges = (0..length as Vertex)
        .map(|i| Edge::new((0..k as Vertex).map(|j| i * step + j)))
        .collect();
    Ok(KHypergraph::from_valid_edges(length * (k - 1) + 1, k, edges))
}

/// The linear cycle on `length * (k - 1)` vertices; consecutive edges share
/// vertex `i * (k - 1)`, wrapping around to 0.
pub fn build_linear_cycle(k: usize, length: usize) -> Result<KHypergraph, PatternError> {
    if k < 3 {
        return Err(PatternError::Uniformity { what: "a linear cycle", k });
    }
    if length < 3 {
        return Err(PatternError::Length {
            kind: PatternKind::LinearCycle,
            length,
            min: 3,
        });
    }
    let n = length * (k - 1);
    let step = (k - 1) as Vertex;
    let edges = (0..length as Vertex)
        .map(|i| Edge::new((0..k as Vertex).map(|j| (i * step + j) % n as Vertex)))
        .collect();
    Ok(KHypergraph::from_valid_edges(n, k, edges))
}
