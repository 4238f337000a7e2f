//! True Turán numbers at tiny scale by branch and bound, plus random
//! instances and saturation probes.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{ConstructionSpec, ConstructionVariant};
use crate::formulas::{binom, FormulaParams, CycleVariant};
use crate::hypergraph::{Edge, KHypergraph, Vertex};
use crate::patterns::oracle::oracle_contains;
use crate::patterns::{contains_disjoint_family, find_family_using_edge, FamilySpec, PatternError, PatternKind};

/// Largest candidate-edge count accepted by [`max_edges_avoiding`].
pub const MAX_CANDIDATES: usize = 10_000;
/// Largest candidate-edge count accepted by [`max_edges_unpruned`].
pub const MAX_UNPRUNED_CANDIDATES: usize = 20;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("C({n},{k}) = {count} candidate edges exceeds the limit {limit}")]
    TooLarge { n: usize, k: usize, count: String, limit: usize },
    #[error("cannot choose {m} distinct edges out of C({n},{k}) = {total}")]
    Infeasible { n: usize, k: usize, m: usize, total: String },
    #[error("the hypergraph already contains the family")]
    NotFree,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// Force the first candidate edge at the root.
    pub symmetry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            max_time: Duration::from_secs(60),
            symmetry: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub max_edges: usize,
    pub witness: KHypergraph,
    /// True when the search finished, so `max_edges` is the Turán number;
    /// false when the budget ran out and it is only a lower bound.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// All k-subsets of `[n]` in colex order.
pub fn colex_edges(n: usize, k: usize) -> Vec<Edge> {
    let total = binom(n as i64, k as i64).to_usize().unwrap_or(usize::MAX);
    (0..total as u64).map(|r| unrank_colex(r, k)).collect()
}

/// The k-set of colex rank `rank`: the unique `c_k > .. > c_1` with
/// `rank = sum C(c_i, i)`.
pub fn unrank_colex(mut rank: u64, k: usize) -> Edge {
    let mut out = Vec::with_capacity(k);
    for i in (1..=k).rev() {
        // largest c with C(c, i) <= rank
        let mut c = i as u64 - 1;
        while small_binom(c + 1, i as u64) <= rank {
            c += 1;
        }
        rank -= small_binom(c, i as u64);
        out.push(c as Vertex);
    }
    Edge::new(out)
}

fn small_binom(a: u64, b: u64) -> u64 {
    binom(a as i64, b as i64).to_u64().unwrap_or(u64::MAX)
}

fn candidate_count(n: usize, k: usize, limit: usize) -> Result<usize, SearchError> {
    let total = binom(n as i64, k as i64);
    match total.to_usize() {
        Some(c) if c <= limit => Ok(c),
        _ => Err(SearchError::TooLarge { n, k, count: total.to_string(), limit }),
    }
}

/// Uniform random `m`-subset of the k-subsets of `[n]`, determined by `seed`.
pub fn random_hypergraph(n: usize, k: usize, m: usize, seed: u64) -> Result<KHypergraph, SearchError> {
    if k < 2 {
        return Err(SearchError::Uniformity(k));
    }
    let total: BigUint = binom(n as i64, k as i64);
    let infeasible = || SearchError::Infeasible { n, k, m, total: total.to_string() };
    if BigUint::from(m) > total {
        return Err(infeasible());
    }
    let size = total.to_usize().ok_or_else(infeasible)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = index::sample(&mut rng, size, m).into_vec();
    ranks.sort_unstable();
    let edges = ranks.into_iter().map(|r| unrank_colex(r as u64, k)).collect();
    Ok(KHypergraph::from_valid_edges(n, k, edges))
}

fn check_spec(k: usize, spec: &FamilySpec) -> Result<(), SearchError> {
    if k < 2 {
        return Err(SearchError::Uniformity(k));
    }
    if spec.k != k {
        return Err(PatternError::UniformityMismatch { spec: spec.k, host: k }.into());
    }
    Ok(())
}

/// Maximum edge count of a k-graph on `[n]` avoiding `spec`.
///
/// Branch and bound over the candidate k-sets in colex order, include branch
/// first. A branch is cut when its edges plus the remaining candidates cannot
/// beat the incumbent. Each inclusion is checked only for occurrences using
/// the new edge.
pub fn max_edges_avoiding(
    n: usize,
    k: usize,
    spec: &FamilySpec,
    budget: SearchBudget,
) -> Result<SearchResult, SearchError> {
    check_spec(k, spec)?;
    candidate_count(n, k, MAX_CANDIDATES)?;
    let candidates = colex_edges(n, k);
    let mut search = Search {
        n,
        k,
        spec,
        candidates: &candidates,
        current: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
        start: Instant::now(),
        truncated: false,
    };
    // Any nonempty solution relabels to one containing the first candidate.
    let forced = budget.symmetry && !candidates.is_empty() && search.admits(&candidates[0])?;
    if forced {
        search.current.push(candidates[0].clone());
        search.best = search.current.clone();
        search.branch(1)?;
    } else {
        search.branch(0)?;
    }
    let witness = KHypergraph::from_valid_edges(n, k, search.best.clone());
    debug_assert!(contains_disjoint_family(&witness, spec)?.is_none());
    Ok(SearchResult {
        max_edges: search.best.len(),
        witness,
        exhaustive: !search.truncated,
        nodes: search.nodes,
    })
}

struct Search<'a> {
    n: usize,
    k: usize,
    spec: &'a FamilySpec,
    candidates: &'a [Edge],
    current: Vec<Edge>,
    best: Vec<Edge>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    truncated: bool,
}

impl Search<'_> {
    /// Whether adding `edge` to the current set keeps it family-free.
    fn admits(&self, edge: &Edge) -> Result<bool, SearchError> {
        let mut edges = self.current.clone();
        edges.push(edge.clone());
        let last = edges.len() - 1;
        let g = KHypergraph::from_valid_edges(self.n, self.k, edges);
        Ok(find_family_using_edge(&g, self.spec, last)?.is_none())
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.max_nodes
            || (self.nodes % 256 == 0 && self.start.elapsed() >= self.budget.max_time)
        {
            self.truncated = true;
        }
        self.truncated
    }

    fn branch(&mut self, next: usize) -> Result<(), SearchError> {
        if self.out_of_budget() {
            return Ok(());
        }
        self.nodes += 1;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        let remaining = self.candidates.len() - next;
        if next == self.candidates.len() || self.current.len() + remaining <= self.best.len() {
            return Ok(());
        }
        let edge = &self.candidates[next];
        if self.admits(edge)? {
            self.current.push(edge.clone());
            self.branch(next + 1)?;
            self.current.pop();
        }
        self.branch(next + 1)
    }
}

/// Same maximum by plain enumeration of every edge subset, checked with the
/// brute-force oracle. Only for up to [`MAX_UNPRUNED_CANDIDATES`] candidates.
pub fn max_edges_unpruned(n: usize, k: usize, spec: &FamilySpec) -> Result<usize, SearchError> {
    check_spec(k, spec)?;
    let m = candidate_count(n, k, MAX_UNPRUNED_CANDIDATES)?;
    let candidates = colex_edges(n, k);
    let mut best = 0;
    for mask in 0u32..(1u32 << m) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let edges = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i].clone()).collect();
        let g = KHypergraph::from_valid_edges(n, k, edges);
        if !oracle_contains(&g, spec) {
            best = size;
        }
    }
    Ok(best)
}

/// Exact search next to the closed form at one parameter point.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdProbe {
    pub n: usize,
    pub k: usize,
    pub lengths: Vec<usize>,
    pub variant: CycleVariant,
    pub formula: String,
    /// Edge count of the extremal construction, when it is feasible.
    pub construction: Option<usize>,
    pub search_max: usize,
    pub exhaustive: bool,
    /// The exhaustive maximum exceeds the formula: `n` is below the range
    /// where the formula is the Turán number.
    pub above_formula: bool,
    pub below_formula: bool,
}

pub fn probe_threshold(
    n: usize,
    k: usize,
    lengths: &[usize],
    variant: CycleVariant,
    budget: SearchBudget,
) -> Result<ThresholdProbe, SearchError> {
    let params = FormulaParams::new(n, k, lengths.to_vec(), variant)
        .map_err(|e| PatternError::Parse { input: format!("{lengths:?}"), reason: e.to_string() })?;
    let formula = crate::formulas::family_turan(&params).value;
    let kind = match variant {
        CycleVariant::Minimal => PatternKind::MinimalCycle,
        CycleVariant::Linear => PatternKind::LinearCycle,
    };
    let spec = FamilySpec::cycles(k, kind, lengths)?;
    let cvariant = match variant {
        CycleVariant::Minimal => ConstructionVariant::Minimal,
        CycleVariant::Linear => ConstructionVariant::Linear,
    };
    let construction = ConstructionSpec::new(n, k, lengths, cvariant).build().ok().map(|h| h.edge_count());
    let result = max_edges_avoiding(n, k, &spec, budget)?;
    let found = BigUint::from(result.max_edges);
    Ok(ThresholdProbe {
        n,
        k,
        lengths: lengths.to_vec(),
        variant,
        formula: formula.to_string(),
        construction,
        search_max: result.max_edges,
        exhaustive: result.exhaustive,
        above_formula: result.exhaustive && found > formula,
        below_formula: result.exhaustive && found < formula,
    })
}

/// Fraction of sampled absent edges whose addition creates the family.
/// `host` must avoid the family. A sample size of 0 yields 0.0.
pub fn saturation_fraction(
    host: &KHypergraph,
    spec: &FamilySpec,
    sample_size: usize,
    seed: u64,
) -> Result<f64, SearchError> {
    check_spec(host.k(), spec)?;
    if contains_disjoint_family(host, spec)?.is_some() {
        return Err(SearchError::NotFree);
    }
    if sample_size == 0 {
        log::warn!("saturation sample size is 0; reporting 0.0");
        return Ok(0.0);
    }
    let (n, k) = (host.n(), host.k());
    let total = binom(n as i64, k as i64);
    let absent_total = &total - BigUint::from(host.edge_count());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<Edge> = match absent_total.to_usize() {
        Some(0) => return Ok(0.0),
        Some(a) if a <= sample_size => colex_edges(n, k).into_iter().filter(|e| !host.contains_edge(e)).collect(),
        _ => {
            let mut picked = std::collections::BTreeSet::new();
            while picked.len() < sample_size {
                let e = Edge::new(index::sample(&mut rng, n, k).into_iter().map(|v| v as Vertex));
                if !host.contains_edge(&e) {
                    picked.insert(e);
                }
            }
            picked.into_iter().collect()
        }
    };
    let mut hits = 0usize;
    for e in &sample {
        let g = host.with_edge(e.iter()).expect("sampled edge is valid");
        let idx = g.edge_index(e).expect("edge was just added");
        if find_family_using_edge(&g, spec, idx)?.is_some() {
            hits += 1;
        }
    }
    Ok(hits as f64 / sample.len() as f64)
}
