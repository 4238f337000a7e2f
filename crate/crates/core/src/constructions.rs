//! The extremal families: every k-set meeting a fixed t-set `S`, plus the
//! even-length correction (one extra edge for minimal cycles, every k-set
//! outside `S` through two fixed elements for linear cycles and paths).

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{binom, compute_t, FormulaError};
use crate::hypergraph::{Edge, KHypergraph, Vertex};

/// Default cap on `C(n, k)` for materialized constructions.
pub const DEFAULT_EDGE_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("infeasible construction: {0}")]
    Infeasible(String),
    #[error("C({n},{k}) exceeds the edge limit {limit}")]
    TooLarge { n: usize, k: usize, limit: u64 },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionVariant {
    Minimal,
    Linear,
    Path,
}

impl std::str::FromStr for ConstructionVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(ConstructionVariant::Minimal),
            "linear" => Ok(ConstructionVariant::Linear),
            "path" => Ok(ConstructionVariant::Path),
            other => Err(format!("unknown construction variant `{other}`")),
        }
    }
}

/// Parameters of an extremal construction.
///
/// For the path variant `lengths` holds the single path length. `s` defaults
/// to `{0, .., t-1}`. `extra` overrides the even-case correction: the whole
/// extra edge (k vertices) for the minimal variant, or the two fixed
/// elements for the linear and path variants; defaults are
/// `{t, .., t+k-1}` and `{t, t+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub n: usize,
    pub k: usize,
    pub lengths: Vec<usize>,
    pub variant: ConstructionVariant,
    pub s: Option<Vec<Vertex>>,
    pub extra: Option<Vec<Vertex>>,
    pub edge_limit: u64,
}

impl ConstructionSpec {
    pub fn new(n: usize, k: usize, lengths: &[usize], variant: ConstructionVariant) -> Self {
        ConstructionSpec {
            n,
            k,
            lengths: lengths.to_vec(),
            variant,
            s: None,
            extra: None,
            edge_limit: DEFAULT_EDGE_LIMIT,
        }
    }

    /// Size of the fixed set.
    pub fn t(&self) -> Result<usize, ConstructionError> {
        match self.variant {
            ConstructionVariant::Path => match self.lengths.as_slice() {
                [l] if *l >= 2 => Ok((l - 1) / 2),
                [l] => Err(FormulaError::UnsupportedPathLength(*l).into()),
                _ => Err(ConstructionError::Infeasible("the path variant takes exactly one length".into())),
            },
            _ => {
                if self.lengths.is_empty() {
                    return Err(FormulaError::NoLengths.into());
                }
                if let Some(&l) = self.lengths.iter().find(|&&l| l < 3) {
                    return Err(FormulaError::CycleTooShort(l).into());
                }
                Ok(compute_t(&self.lengths))
            }
        }
    }

    fn all_even(&self) -> bool {
        self.lengths.iter().all(|l| l % 2 == 0)
    }

    pub fn build(&self) -> Result<KHypergraph, ConstructionError> {
        let (n, k) = (self.n, self.k);
        if k < 2 {
            return Err(FormulaError::Uniformity(k).into());
        }
        if k > n {
            return Err(ConstructionError::Infeasible(format!("k = {k} exceeds n = {n}")));
        }
        let total = binom(n as i64, k as i64).to_u64().unwrap_or(u64::MAX);
        if total > self.edge_limit {
            return Err(ConstructionError::TooLarge { n, k, limit: self.edge_limit });
        }
        let t = self.t()?;
        let s = match &self.s {
            Some(s) => checked_set(s, n, "S")?,
            None => (0..t as Vertex).collect(),
        };
        if s.len() != t {
            return Err(ConstructionError::Infeasible(format!("|S| = {} but t = {t}", s.len())));
        }
        let mut in_s = vec![false; n];
        for &v in &s {
            in_s[v as usize] = true;
        }
        let mut edges: Vec<Edge> = (0..n as Vertex)
            .combinations(k)
            .filter(|c| c.iter().any(|&v| in_s[v as usize]))
            .map(Edge::new)
            .collect();

        if self.all_even() {
            let outside: Vec<Vertex> = (0..n as Vertex).filter(|&v| !in_s[v as usize]).collect();
            if outside.len() < k {
                return Err(ConstructionError::Infeasible(format!(
                    "no k-set avoids S when n = {n} < t + k = {}",
                    t + k
                )));
            }
            let want = match self.variant {
                ConstructionVariant::Minimal => k,
                _ => 2,
            };
            let fixed = match &self.extra {
                Some(x) => checked_set(x, n, "extra")?,
                None => outside[..want].to_vec(),
            };
            if fixed.len() != want {
                return Err(ConstructionError::Infeasible(format!(
                    "expected {want} extra vertices, got {}",
                    fixed.len()
                )));
            }
            if fixed.iter().any(|&v| in_s[v as usize]) {
                return Err(ConstructionError::Infeasible("extra vertices must lie outside S".into()));
            }
            match self.variant {
                ConstructionVariant::Minimal => edges.push(Edge::new(fixed)),
                _ => {
                    let rest: Vec<Vertex> = outside.iter().copied().filter(|v| !fixed.contains(v)).collect();
                    edges.extend(
                        rest.into_iter()
                            .combinations(k - 2)
                            .map(|c| Edge::new(c.into_iter().chain(fixed.iter().copied()))),
                    );
                }
            }
        }
        Ok(KHypergraph::from_valid_edges(n, k, edges))
    }
}

fn checked_set(set: &[Vertex], n: usize, what: &str) -> Result<Vec<Vertex>, ConstructionError> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != set.len() {
        return Err(ConstructionError::Infeasible(format!("{what} has repeated vertices")));
    }
    if let Some(&x) = v.iter().find(|&&x| x as usize >= n) {
        return Err(ConstructionError::Infeasible(format!("{what} vertex {x} out of range [0, {n})")));
    }
    Ok(v)
}

/// Every k-subset of `[n]` meeting `s`.
pub fn build_meeting_family(n: usize, k: usize, s: &[Vertex]) -> Result<KHypergraph, ConstructionError> {
    let s = checked_set(s, n, "S")?;
    if k < 2 {
        return Err(FormulaError::Uniformity(k).into());
    }
    let mut in_s = vec![false; n];
    for &v in &s {
        in_s[v as usize] = true;
    }
    if binom(n as i64, k as i64).to_u64().unwrap_or(u64::MAX) > DEFAULT_EDGE_LIMIT {
        return Err(ConstructionError::TooLarge { n, k, limit: DEFAULT_EDGE_LIMIT });
    }
    let edges = (0..n as Vertex)
        .combinations(k)
        .filter(|c| c.iter().any(|&v| in_s[v as usize]))
        .map(Edge::new)
        .collect();
    Ok(KHypergraph::from_valid_edges(n, k, edges))
}

pub fn build_minimal_extremal(n: usize, k: usize, lengths: &[usize]) -> Result<KHypergraph, ConstructionError> {
    ConstructionSpec::new(n, k, lengths, ConstructionVariant::Minimal).build()
}

pub fn build_linear_extremal(n: usize, k: usize, lengths: &[usize]) -> Result<KHypergraph, ConstructionError> {
    ConstructionSpec::new(n, k, lengths, ConstructionVariant::Linear).build()
}

pub fn build_path_extremal(n: usize, k: usize, length: usize) -> Result<KHypergraph, ConstructionError> {
    ConstructionSpec::new(n, k, &[length], ConstructionVariant::Path).build()
}
