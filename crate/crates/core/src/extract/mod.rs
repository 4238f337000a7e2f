//! Constructive extraction of vertex-disjoint cycles from a dense hypergraph,
//! following the induction on the number of cycles.
//!
//! Each level finds a first cycle `C`, groups the terminal edges (edges with
//! exactly one vertex in `C`) by their part `R` outside `C`, picks the
//! terminal set `U` shared by the most `R`, removes `U` and recurses on the
//! remaining lengths to get the vertex set `W`. The first cycle is then
//! rebuilt through `U` from pairs of common sets `R_U` meeting in one vertex,
//! avoiding `W`. Any step that cannot be carried out falls back to exhaustive
//! search, first for the current cycle only and then for the whole level.

mod assembly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use serde::Serialize;

pub use assembly::{assemble_even, assemble_odd, claim1_pairs, find_p3_avoiding};

use crate::formulas::CycleVariant;
use crate::hypergraph::{Edge, KHypergraph, Vertex};
use crate::patterns::{
    check_family_witnesses, contains_disjoint_family, contains_pattern, FamilySpec, PatternError, PatternKind,
    Witness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    FirstCycle,
    Recursion,
    TerminalSet,
    Claim1,
    P3,
    Assembly,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::FirstCycle => "first-cycle",
            Stage::Recursion => "recursion",
            Stage::TerminalSet => "terminal-set",
            Stage::Claim1 => "claim1",
            Stage::P3 => "p3",
            Stage::Assembly => "assembly",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("extraction failed at {stage}: {detail}")]
pub struct ExtractionError {
    pub stage: Stage,
    pub detail: String,
}

impl ExtractionError {
    pub fn new(stage: Stage, detail: impl Into<String>) -> Self {
        ExtractionError {
            stage,
            detail: detail.into(),
        }
    }
}

/// How a level produced its cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Every step of the construction succeeded.
    ProofPath,
    /// The construction failed after the recursion; the cycle was found by
    /// search avoiding `W`.
    CycleFallback,
    /// The whole level was solved by search.
    FullFallback,
    Failed,
}

/// One recursion level. Vertex labels are those of the input hypergraph.
#[derive(Debug, Clone, Serialize)]
pub struct LevelTrace {
    pub depth: usize,
    pub lengths: Vec<usize>,
    pub cycle_edges: Vec<Edge>,
    pub cycle_vertices: Vec<Vertex>,
    pub terminal_edges: usize,
    pub x_size: usize,
    pub y_size: usize,
    pub terminal_set: Vec<Vertex>,
    pub r_u_size: usize,
    pub w: Vec<Vertex>,
    pub pairs: Vec<(Edge, Edge)>,
    pub triple: Option<[Edge; 3]>,
    pub assembled: Option<Witness>,
    pub outcome: Outcome,
    pub failure: Option<ExtractionError>,
    pub micros: u64,
}

impl LevelTrace {
    fn new(depth: usize, lengths: &[usize]) -> Self {
        LevelTrace {
            depth,
            lengths: lengths.to_vec(),
            cycle_edges: Vec::new(),
            cycle_vertices: Vec::new(),
            terminal_edges: 0,
            x_size: 0,
            y_size: 0,
            terminal_set: Vec::new(),
            r_u_size: 0,
            w: Vec::new(),
            pairs: Vec::new(),
            triple: None,
            assembled: None,
            outcome: Outcome::Failed,
            failure: None,
            micros: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtractionTrace {
    pub variant: CycleVariant,
    /// Lengths in processing order (even lengths first for linear cycles).
    pub order: Vec<usize>,
    pub levels: Vec<LevelTrace>,
}

impl ExtractionTrace {
    pub fn strip_timings(&mut self) {
        for l in &mut self.levels {
            l.micros = 0;
        }
    }
}

/// The (k-1)-sets `R = e \ C` of terminal edges `e`, split by how many
/// vertices of `C` they attach to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XyPartition {
    pub x: Vec<Edge>,
    pub y: Vec<Edge>,
    /// For every `R`, the sorted vertices `c` of `C` with `R + c` an edge.
    pub neighbors: BTreeMap<Edge, Vec<Vertex>>,
    pub threshold: usize,
}

/// Edges with exactly one vertex in `c`.
pub fn terminal_edges(h: &KHypergraph, c: &[Vertex]) -> Vec<Edge> {
    let c: BTreeSet<Vertex> = c.iter().copied().collect();
    h.edges()
        .iter()
        .filter(|e| e.iter().filter(|v| c.contains(v)).count() == 1)
        .cloned()
        .collect()
}

/// `R` goes to `Y` when it forms terminal edges with at least
/// `floor((l1 + 1) / 2)` vertices of `C`.
pub fn partition_xy(h: &KHypergraph, c: &[Vertex], l1: usize) -> XyPartition {
    let cset: BTreeSet<Vertex> = c.iter().copied().collect();
    let mut neighbors: BTreeMap<Edge, Vec<Vertex>> = BTreeMap::new();
    for e in terminal_edges(h, c) {
        let hub = e.iter().find(|v| cset.contains(v)).expect("terminal edge meets C");
        let r = Edge::new(e.iter().filter(|&v| v != hub));
        neighbors.entry(r).or_default().push(hub);
    }
    for hubs in neighbors.values_mut() {
        hubs.sort_unstable();
    }
    let threshold = (l1 + 1) / 2;
    let (y, x): (Vec<Edge>, Vec<Edge>) = neighbors.keys().cloned().partition(|r| neighbors[r].len() >= threshold);
    XyPartition { x, y, neighbors, threshold }
}

/// Terminal set `U` and the common sets `R_U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSelection {
    pub u: Vec<Vertex>,
    pub r_u: Vec<Edge>,
    pub supporters: usize,
}

/// Each `R` in `Y` takes its first `threshold` neighbours in `C` as its
/// terminal set; `U` is the one chosen by the most `R` (ties to the
/// lexicographically least), and `R_U` is every `R` attached to all of `U`.
pub fn select_terminal_set(part: &XyPartition) -> Result<TerminalSelection, ExtractionError> {
    let mut votes: BTreeMap<&[Vertex], usize> = BTreeMap::new();
    for r in &part.y {
        *votes.entry(&part.neighbors[r][..part.threshold]).or_default() += 1;
    }
    let mut best: Option<(&[Vertex], usize)> = None;
    for (&u, &count) in &votes {
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((u, count));
        }
    }
    let Some((u, supporters)) = best else {
        return Err(ExtractionError::new(
            Stage::TerminalSet,
            format!("no (k-1)-set attaches to {} vertices of the cycle", part.threshold),
        ));
    };
    let r_u = part
        .y
        .iter()
        .filter(|r| u.iter().all(|x| part.neighbors[*r].binary_search(x).is_ok()))
        .cloned()
        .collect();
    Ok(TerminalSelection {
        u: u.to_vec(),
        r_u,
        supporters,
    })
}

/// Vertex-disjoint minimal cycles of the given lengths, with the trace.
pub fn extract_disjoint_minimal(
    h: &KHypergraph,
    lengths: &[usize],
) -> Result<(Vec<Witness>, ExtractionTrace), ExtractionError> {
    let (result, trace) = extract_with_trace(h, lengths, CycleVariant::Minimal);
    result.map(|w| (w, trace))
}

/// Vertex-disjoint linear cycles; even lengths are processed first.
pub fn extract_disjoint_linear(
    h: &KHypergraph,
    lengths: &[usize],
) -> Result<(Vec<Witness>, ExtractionTrace), ExtractionError> {
    let (result, trace) = extract_with_trace(h, lengths, CycleVariant::Linear);
    result.map(|w| (w, trace))
}

/// Exhaustive search; the fallback of the extractor.
pub fn brute_force_extract(h: &KHypergraph, spec: &FamilySpec) -> Result<Option<Vec<Witness>>, PatternError> {
    contains_disjoint_family(h, spec)
}

/// Runs the extractor and returns the trace whether or not it succeeds.
/// Witnesses are listed in the order of `lengths`.
pub fn extract_with_trace(
    h: &KHypergraph,
    lengths: &[usize],
    variant: CycleVariant,
) -> (Result<Vec<Witness>, ExtractionError>, ExtractionTrace) {
    let kind = match variant {
        CycleVariant::Minimal => PatternKind::MinimalCycle,
        CycleVariant::Linear => PatternKind::LinearCycle,
    };
    let mut slots: Vec<usize> = (0..lengths.len()).collect();
    if variant == CycleVariant::Linear {
        slots.sort_by_key(|&i| lengths[i] % 2);
    }
    let order: Vec<usize> = slots.iter().map(|&i| lengths[i]).collect();
    let mut trace = ExtractionTrace {
        variant,
        order: order.clone(),
        levels: Vec::new(),
    };
    let spec = match FamilySpec::cycles(h.k(), kind, lengths) {
        Ok(s) => s,
        Err(e) => return (Err(ExtractionError::new(Stage::FirstCycle, e.to_string())), trace),
    };
    let labels: Vec<Vertex> = (0..h.n() as Vertex).collect();
    let mut ex = Extractor {
        kind,
        levels: Vec::new(),
    };
    let result = ex.level(h, &order, 0, &labels).and_then(|found| {
        let mut out = vec![None; lengths.len()];
        for (w, &slot) in found.into_iter().zip(&slots) {
            out[slot] = Some(w);
        }
        let out: Vec<Witness> = out.into_iter().map(|w| w.expect("every slot filled")).collect();
        check_family_witnesses(h, &spec, &out)
            .map_err(|e| ExtractionError::new(Stage::Assembly, format!("output failed validation: {e}")))?;
        Ok(out)
    });
    trace.levels = ex.levels;
    (result, trace)
}

struct Extractor {
    kind: PatternKind,
    levels: Vec<LevelTrace>,
}

/// Why the construction stopped, and what was already settled.
struct Failure {
    error: ExtractionError,
    /// Witnesses for the later lengths and their vertices, once the
    /// recursion has returned.
    rest: Option<(Vec<Witness>, Vec<Vertex>)>,
    /// The failure proves that no solution exists.
    conclusive: bool,
}

impl Failure {
    fn at(stage: Stage, detail: impl Into<String>) -> Self {
        Failure {
            error: ExtractionError::new(stage, detail),
            rest: None,
            conclusive: false,
        }
    }
}

impl Extractor {
    /// Witnesses for `lengths` in `h`, in that order. `labels` maps vertices
    /// of `h` to those of the input, for the trace.
    fn level(
        &mut self,
        h: &KHypergraph,
        lengths: &[usize],
        depth: usize,
        labels: &[Vertex],
    ) -> Result<Vec<Witness>, ExtractionError> {
        let start = Instant::now();
        let slot = self.levels.len();
        self.levels.push(LevelTrace::new(depth, lengths));
        let mut lt = LevelTrace::new(depth, lengths);
        let map = |v: Vertex| labels[v as usize];

        let attempt = if h.k() >= 3 {
            self.construct(h, lengths, depth, labels, &mut lt)
        } else {
            Err(Failure::at(Stage::Claim1, "uniformity below 3 leaves no (k-1)-edges to pair"))
        };
        let result = match attempt {
            Ok(found) => {
                lt.outcome = Outcome::ProofPath;
                Ok(found)
            }
            Err(failure) => {
                lt.failure = Some(failure.error.clone());
                self.fall_back(h, lengths, failure, &mut lt)
            }
        };
        if let Ok(found) = &result {
            if lt.outcome != Outcome::ProofPath {
                lt.assembled = Some(found[0].relabel(map));
            }
        }
        lt.micros = start.elapsed().as_micros() as u64;
        self.levels[slot] = lt;
        result
    }

    fn fall_back(
        &mut self,
        h: &KHypergraph,
        lengths: &[usize],
        failure: Failure,
        lt: &mut LevelTrace,
    ) -> Result<Vec<Witness>, ExtractionError> {
        if failure.conclusive {
            return Err(failure.error);
        }
        if let Some((rest, w)) = &failure.rest {
            let blocked: BTreeSet<Vertex> = w.iter().copied().collect();
            let free = h.filter_edges(|e| e.iter().all(|v| !blocked.contains(&v)));
            if let Ok(Some(cycle)) = contains_pattern(&free, self.kind, lengths[0]) {
                lt.outcome = Outcome::CycleFallback;
                let mut found = vec![cycle];
                found.extend(rest.iter().cloned());
                return Ok(found);
            }
        }
        let spec = FamilySpec::cycles(h.k(), self.kind, lengths)
            .map_err(|e| ExtractionError::new(Stage::FirstCycle, e.to_string()))?;
        match contains_disjoint_family(h, &spec) {
            Ok(Some(found)) => {
                lt.outcome = Outcome::FullFallback;
                Ok(found)
            }
            Ok(None) => Err(ExtractionError::new(
                failure.error.stage,
                format!("{}; exhaustive search confirms the family is absent", failure.error.detail),
            )),
            Err(e) => Err(ExtractionError::new(failure.error.stage, e.to_string())),
        }
    }

    fn construct(
        &mut self,
        h: &KHypergraph,
        lengths: &[usize],
        depth: usize,
        labels: &[Vertex],
        lt: &mut LevelTrace,
    ) -> Result<Vec<Witness>, Failure> {
        let map = |v: Vertex| labels[v as usize];
        let l1 = lengths[0];
        let first = contains_pattern(h, self.kind, l1).map_err(|e| Failure::at(Stage::FirstCycle, e.to_string()))?;
        let Some(first) = first else {
            return Err(Failure {
                error: ExtractionError::new(Stage::FirstCycle, format!("no {} {l1}-cycle", self.kind.short_name())),
                rest: None,
                conclusive: true,
            });
        };
        let c: Vec<Vertex> = first.vertex_set().into_iter().collect();
        lt.cycle_edges = first.relabel(map).edges;
        lt.cycle_vertices = c.iter().map(|&v| map(v)).collect();

        let part = partition_xy(h, &c, l1);
        lt.terminal_edges = part.neighbors.values().map(Vec::len).sum();
        lt.x_size = part.x.len();
        lt.y_size = part.y.len();
        let sel = select_terminal_set(&part).map_err(|error| Failure {
            error,
            rest: None,
            conclusive: false,
        })?;
        lt.terminal_set = sel.u.iter().map(|&v| map(v)).collect();
        lt.r_u_size = sel.r_u.len();

        let (rest, w) = if lengths.len() > 1 {
            let reduced = h
                .remove_vertices(&sel.u)
                .map_err(|e| Failure::at(Stage::Recursion, e.to_string()))?;
            let sub_labels: Vec<Vertex> = reduced.original.iter().map(|&v| map(v)).collect();
            let found = self
                .level(&reduced.graph, &lengths[1..], depth + 1, &sub_labels)
                .map_err(|e| Failure::at(Stage::Recursion, e.to_string()))?;
            let found: Vec<Witness> = found.iter().map(|w| w.relabel(|v| reduced.lift(v))).collect();
            let w: Vec<Vertex> = found.iter().flat_map(|w| w.vertex_set()).collect::<BTreeSet<_>>().into_iter().collect();
            (found, w)
        } else {
            (Vec::new(), Vec::new())
        };
        lt.w = w.iter().map(|&v| map(v)).collect();
        let settled = |error: ExtractionError| Failure {
            error,
            rest: Some((rest.clone(), w.clone())),
            conclusive: false,
        };

        let h0 = KHypergraph::new(h.n(), h.k() - 1, sel.r_u.iter().map(|r| r.iter()))
            .map_err(|e| settled(ExtractionError::new(Stage::Claim1, e.to_string())))?;
        let cycle = if l1 % 2 == 0 {
            let pairs = claim1_pairs(&h0, &w, l1 / 2).map_err(settled)?;
            lt.pairs = relabel_pairs(&pairs, map);
            assemble_even(&pairs, &sel.u).map_err(settled)?
        } else {
            let pairs = claim1_pairs(&h0, &w, (l1 - 3) / 2).map_err(settled)?;
            lt.pairs = relabel_pairs(&pairs, map);
            let mut q = w.clone();
            q.extend(pairs.iter().flat_map(|(a, b)| a.iter().chain(b.iter())));
            let path = find_p3_avoiding(&h0, &q).map_err(settled)?;
            lt.triple = Some(path.clone().map(|e| Edge::new(e.iter().map(map))));
            assemble_odd(&pairs, &sel.u, &path).map_err(settled)?
        };
        let cycle = Witness {
            kind: self.kind,
            ..cycle
        };
        if let Some(e) = cycle.edges.iter().find(|e| !h.contains_edge(e)) {
            return Err(settled(ExtractionError::new(Stage::Assembly, format!("edge {e} is not in the host"))));
        }
        lt.assembled = Some(cycle.relabel(map));
        let mut found = vec![cycle];
        found.extend(rest);
        Ok(found)
    }
}

fn relabel_pairs(pairs: &[(Edge, Edge)], map: impl Fn(Vertex) -> Vertex) -> Vec<(Edge, Edge)> {
    pairs
        .iter()
        .map(|(a, b)| (Edge::new(a.iter().map(&map)), Edge::new(b.iter().map(&map))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_linear_extremal, build_minimal_extremal};
    use crate::patterns::build_linear_cycle;

    fn e<const N: usize>(v: [Vertex; N]) -> Edge {
        Edge::new(v)
    }

    #[test]
    fn terminal_edges_meet_once() {
        let h = KHypergraph::new(7, 4, [[0, 1, 2, 3], [3, 4, 5, 6]]).unwrap();
        assert_eq!(terminal_edges(&h, &[0, 1, 2, 3]), vec![e([3, 4, 5, 6])]);
        assert!(terminal_edges(&h, &[0, 1, 2, 3, 4, 5, 6]).is_empty());
        assert!(terminal_edges(&h, &[]).is_empty());
    }

    #[test]
    fn partition_threshold() {
        let h = KHypergraph::new(10, 4, [[9, 1, 2, 3], [8, 1, 2, 3], [7, 4, 5, 6]]).unwrap();
        let part = partition_xy(&h, &[7, 8, 9], 3);
        assert_eq!(part.y, vec![e([1, 2, 3])]);
        assert_eq!(part.x, vec![e([4, 5, 6])]);
        assert_eq!(part.neighbors[&e([1, 2, 3])], vec![8, 9]);
        let empty = KHypergraph::empty(10, 4).unwrap();
        assert!(partition_xy(&empty, &[0], 3).y.is_empty());
    }

    #[test]
    fn terminal_set_majority() {
        // five sets attach to {0,1}, three to {2,3}
        let mut edges = Vec::new();
        for i in 0..5u32 {
            let r = [10 + 3 * i, 11 + 3 * i, 12 + 3 * i];
            edges.push([0, r[0], r[1], r[2]]);
            edges.push([1, r[0], r[1], r[2]]);
        }
        for i in 0..3u32 {
            let r = [30 + 3 * i, 31 + 3 * i, 32 + 3 * i];
            edges.push([2, r[0], r[1], r[2]]);
            edges.push([3, r[0], r[1], r[2]]);
        }
        let h = KHypergraph::new(40, 4, edges).unwrap();
        let part = partition_xy(&h, &[0, 1, 2, 3], 3);
        let sel = select_terminal_set(&part).unwrap();
        assert_eq!((sel.u, sel.supporters, sel.r_u.len()), (vec![0, 1], 5, 5));
        let empty = KHypergraph::empty(10, 4).unwrap();
        let err = select_terminal_set(&partition_xy(&empty, &[0], 3)).unwrap_err();
        assert_eq!(err.stage, Stage::TerminalSet);
    }

    #[test]
    fn unanimous_terminal_set() {
        let h = KHypergraph::new(9, 4, [[0, 3, 4, 5], [1, 3, 4, 5], [0, 6, 7, 8], [1, 6, 7, 8], [2, 6, 7, 8]]).unwrap();
        let sel = select_terminal_set(&partition_xy(&h, &[0, 1, 2], 3)).unwrap();
        assert_eq!(sel.u, vec![0, 1]);
        assert_eq!(sel.r_u, vec![e([3, 4, 5]), e([6, 7, 8])]);
    }

    #[test]
    fn extremal_plus_edge_yields_a_cycle() {
        let h = build_minimal_extremal(12, 4, &[3]).unwrap().with_edge([1, 2, 3, 4]).unwrap();
        let (ws, trace) = extract_disjoint_minimal(&h, &[3]).unwrap();
        assert_eq!(ws.len(), 1);
        ws[0].validate_as(PatternKind::MinimalCycle).unwrap();
        assert_eq!(trace.levels.len(), 1);
    }

    #[test]
    fn extremal_family_has_nothing_to_extract() {
        let h = build_minimal_extremal(12, 4, &[3]).unwrap();
        assert_eq!(h.edge_count(), 165);
        let err = extract_disjoint_minimal(&h, &[3]).unwrap_err();
        assert_eq!(err.stage, Stage::FirstCycle);
        let h = build_linear_extremal(13, 5, &[3]).unwrap();
        assert!(extract_disjoint_linear(&h, &[3]).is_err());
    }

    #[test]
    fn linear_extremal_plus_edge() {
        let h = build_linear_extremal(13, 5, &[3]).unwrap().with_edge([1, 2, 3, 4, 5]).unwrap();
        let (ws, _) = extract_disjoint_linear(&h, &[3]).unwrap();
        ws[0].validate_as(PatternKind::LinearCycle).unwrap();
    }

    #[test]
    fn two_disjoint_copies() {
        let c = build_linear_cycle(4, 3).unwrap();
        let two = c.disjoint_union(&c).unwrap();
        let h = KHypergraph::new(18, 4, two.edges().iter().map(|e| e.iter())).unwrap();
        for variant in [CycleVariant::Minimal, CycleVariant::Linear] {
            let (result, trace) = extract_with_trace(&h, &[3, 3], variant);
            let ws = result.unwrap();
            assert!(ws[0].vertex_set().is_disjoint(&ws[1].vertex_set()));
            // no edge leaves the first copy, so there is no terminal set
            let top = &trace.levels[0];
            assert_eq!(top.failure.as_ref().unwrap().stage, Stage::TerminalSet);
            assert_eq!(top.outcome, Outcome::FullFallback);
        }
    }

    #[test]
    fn linear_processes_even_lengths_first() {
        let c3 = build_linear_cycle(5, 3).unwrap();
        let c4 = build_linear_cycle(5, 4).unwrap();
        let both = c3.disjoint_union(&c4).unwrap();
        let (result, trace) = extract_with_trace(&both, &[3, 4], CycleVariant::Linear);
        assert_eq!(trace.order, vec![4, 3]);
        let ws = result.unwrap();
        assert_eq!((ws[0].length, ws[1].length), (3, 4));
    }

    #[test]
    fn dense_instance_takes_the_proof_path() {
        // every 4-set meeting {0,1,2} plus one more: the first 3-cycle leaves
        // plenty of common sets outside it
        let h = build_minimal_extremal(16, 4, &[3, 3]).unwrap().with_edge([5, 6, 7, 8]).unwrap();
        let (result, trace) = extract_with_trace(&h, &[3], CycleVariant::Minimal);
        result.unwrap();
        let top = &trace.levels[0];
        assert_eq!(top.outcome, Outcome::ProofPath, "{top:?}");
        assert_eq!(top.terminal_set.len(), 2);
        assert!(top.triple.is_some());
    }

    #[test]
    fn brute_force_on_empty() {
        let h = KHypergraph::empty(8, 4).unwrap();
        let spec = FamilySpec::parse("minimal:3", 4).unwrap();
        assert!(brute_force_extract(&h, &spec).unwrap().is_none());
    }
}
