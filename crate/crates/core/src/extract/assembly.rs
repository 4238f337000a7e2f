//! Building a cycle through the terminal set `U` out of (k-1)-edges of the
//! auxiliary hypergraph on the common sets `R_U`.

use std::collections::BTreeSet;

use super::{ExtractionError, Stage};
use crate::hypergraph::{Edge, KHypergraph, Vertex};
use crate::patterns::{contains_pattern, PatternKind, Witness};

/// Greedily picks `count` pairs of edges of `h0` meeting in exactly one
/// vertex, pairwise vertex-disjoint and avoiding `avoid`.
pub fn claim1_pairs(h0: &KHypergraph, avoid: &[Vertex], count: usize) -> Result<Vec<(Edge, Edge)>, ExtractionError> {
    let mut blocked: BTreeSet<Vertex> = avoid.iter().copied().collect();
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let free = h0.filter_edges(|e| e.iter().all(|v| !blocked.contains(&v)));
        let Some((a, b)) = free.find_pair_sharing_exactly_one() else {
            return Err(ExtractionError::new(
                Stage::Claim1,
                format!(
                    "pair {} of {count}: no two of the {} free edges meet in exactly one vertex",
                    pairs.len() + 1,
                    free.edge_count()
                ),
            ));
        };
        blocked.extend(a.iter().chain(b.iter()));
        pairs.push((a.clone(), b.clone()));
    }
    Ok(pairs)
}

/// A linear 3-path `(x, y, z)` among the edges of `h0` avoiding `avoid`.
pub fn find_p3_avoiding(h0: &KHypergraph, avoid: &[Vertex]) -> Result<[Edge; 3], ExtractionError> {
    let blocked: BTreeSet<Vertex> = avoid.iter().copied().collect();
    let free = h0.filter_edges(|e| e.iter().all(|v| !blocked.contains(&v)));
    match contains_pattern(&free, PatternKind::LinearPath, 3) {
        Ok(Some(w)) => {
            let [x, y, z]: [Edge; 3] = w.edges.try_into().expect("a 3-path has three edges");
            Ok([x, y, z])
        }
        Ok(None) => Err(ExtractionError::new(
            Stage::P3,
            format!("no linear 3-path among the {} free edges", free.edge_count()),
        )),
        Err(e) => Err(ExtractionError::new(Stage::P3, e.to_string())),
    }
}

/// Even length `2m`: edges `a_i + u_i`, `b_i + u_{i+1}`, with `u_{m+1} = u_1`.
pub fn assemble_even(pairs: &[(Edge, Edge)], u: &[Vertex]) -> Result<Witness, ExtractionError> {
    let m = pairs.len();
    if m < 2 || u.len() != m {
        return Err(ExtractionError::new(
            Stage::Assembly,
            format!("even assembly needs m >= 2 pairs and m terminal vertices, got {m} and {}", u.len()),
        ));
    }
    let mut edges = Vec::with_capacity(2 * m);
    for (i, (a, b)) in pairs.iter().enumerate() {
        edges.push(a.with_vertex(u[i]));
        edges.push(b.with_vertex(u[(i + 1) % m]));
    }
    finish(edges)
}

/// Odd length `2m + 3`: edges `a_i + u_i`, `b_i + u_{i+1}` for the `m` pairs,
/// then `x + u_{m+1}`, `y + u_{m+2}`, `z + u_1`.
pub fn assemble_odd(pairs: &[(Edge, Edge)], u: &[Vertex], path: &[Edge; 3]) -> Result<Witness, ExtractionError> {
    let m = pairs.len();
    if u.len() != m + 2 {
        return Err(ExtractionError::new(
            Stage::Assembly,
            format!("odd assembly with {m} pairs needs {} terminal vertices, got {}", m + 2, u.len()),
        ));
    }
    let [x, y, z] = path;
    if x.intersection_size(y) != 1 || y.intersection_size(z) != 1 || !x.is_disjoint(z) {
        return Err(ExtractionError::new(Stage::Assembly, format!("{x},{y},{z} is not a linear 3-path")));
    }
    let mut edges = Vec::with_capacity(2 * m + 3);
    for (i, (a, b)) in pairs.iter().enumerate() {
        edges.push(a.with_vertex(u[i]));
        edges.push(b.with_vertex(u[i + 1]));
    }
    edges.push(x.with_vertex(u[m]));
    edges.push(y.with_vertex(u[m + 1]));
    edges.push(z.with_vertex(u[0]));
    finish(edges)
}

fn finish(edges: Vec<Edge>) -> Result<Witness, ExtractionError> {
    let l = edges.len();
    if let Some(e) = edges.windows(2).find(|w| w[0].len() != w[1].len()) {
        return Err(ExtractionError::new(Stage::Assembly, format!("edge {} gained no new vertex", e[1])));
    }
    let connectors = (0..l)
        .map(|i| edges[i].intersection(&edges[(i + 1) % l]).first().copied().unwrap_or(Vertex::MAX))
        .collect();
    let w = Witness {
        kind: PatternKind::LinearCycle,
        length: l,
        edges,
        connectors,
    };
    for kind in [PatternKind::MinimalCycle, PatternKind::LinearCycle] {
        w.validate_as(kind)
            .map_err(|e| ExtractionError::new(Stage::Assembly, e.to_string()))?;
    }
    Ok(w)
}
