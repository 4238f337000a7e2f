//! Path and cycle patterns: constructors, witness validation, and detectors
//! for vertex-disjoint unions of them.
//!
//! Conventions used throughout the crate:
//!
//! * Edges of every witness are pairwise distinct.
//! * A minimal cycle `A_1, ..., A_l` has consecutive edges (cyclically)
//!   meeting and non-consecutive edges disjoint. For `l = 3` the three edges
//!   must additionally have no common vertex; without that condition every
//!   three edges through one vertex would qualify and the star would not be
//!   extremal for the 3-cycle.
//! * A linear cycle has consecutive intersections of size exactly one and
//!   pairwise distinct connector vertices, so it is always a minimal cycle.

mod build;
pub mod oracle;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Edge, KHypergraph, Vertex};

pub use build::{build_linear_cycle, build_linear_path};
pub use search::{contains_disjoint_family, contains_pattern, find_family_using_edge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("{kind} needs length at least {min}, got {length}")]
    Length {
        kind: PatternKind,
        length: usize,
        min: usize,
    },
    #[error("uniformity {k} too small for {what}")]
    Uniformity { what: &'static str, k: usize },
    #[error("family is {spec}-uniform but hypergraph is {host}-uniform")]
    UniformityMismatch { spec: usize, host: usize },
    #[error("family needs at least one component")]
    EmptyFamily,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    BergePath,
    LinearPath,
    BergeCycle,
    MinimalCycle,
    LinearCycle,
}

impl PatternKind {
    pub const ALL: [PatternKind; 5] = [
        PatternKind::BergePath,
        PatternKind::LinearPath,
        PatternKind::BergeCycle,
        PatternKind::MinimalCycle,
        PatternKind::LinearCycle,
    ];

    pub fn is_cycle(self) -> bool {
        matches!(
            self,
            PatternKind::BergeCycle | PatternKind::MinimalCycle | PatternKind::LinearCycle
        )
    }

    pub fn min_length(self) -> usize {
        if self.is_cycle() {
            3
        } else {
            1
        }
    }

    /// Short name used in family-spec strings.
    pub fn short_name(self) -> &'static str {
        match self {
            PatternKind::BergePath => "berge-path",
            PatternKind::LinearPath => "linear-path",
            PatternKind::BergeCycle => "berge-cycle",
            PatternKind::MinimalCycle => "minimal",
            PatternKind::LinearCycle => "linear",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for PatternKind {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "berge-path" => PatternKind::BergePath,
            "linear-path" => PatternKind::LinearPath,
            "berge-cycle" => PatternKind::BergeCycle,
            "minimal" | "minimal-cycle" => PatternKind::MinimalCycle,
            "linear" | "linear-cycle" => PatternKind::LinearCycle,
            other => {
                return Err(PatternError::Parse {
                    input: other.to_string(),
                    reason: "unknown pattern kind (expected minimal, linear, linear-path, berge-path or berge-cycle)"
                        .into(),
                })
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub kind: PatternKind,
    pub length: usize,
}

impl Component {
    pub fn new(kind: PatternKind, length: usize) -> Result<Self, PatternError> {
        if length < kind.min_length() {
            return Err(PatternError::Length {
                kind,
                length,
                min: kind.min_length(),
            });
        }
        Ok(Component { kind, length })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.length)
    }
}

/// A forbidden configuration: vertex-disjoint copies of the listed patterns,
/// all `k`-uniform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub k: usize,
    pub components: Vec<Component>,
}

impl FamilySpec {
    pub fn new(k: usize, components: Vec<Component>) -> Result<Self, PatternError> {
        if components.is_empty() {
            return Err(PatternError::EmptyFamily);
        }
        if k < 2 {
            return Err(PatternError::Uniformity { what: "a family", k });
        }
        for c in &components {
            Component::new(c.kind, c.length)?;
        }
        Ok(FamilySpec { k, components })
    }

    /// Vertex-disjoint cycles of one kind with the given lengths.
    pub fn cycles(k: usize, kind: PatternKind, lengths: &[usize]) -> Result<Self, PatternError> {
        let components = lengths
            .iter()
            .map(|&l| Component::new(kind, l))
            .collect::<Result<Vec<_>, _>>()?;
        FamilySpec::new(k, components)
    }

    pub fn single(k: usize, kind: PatternKind, length: usize) -> Result<Self, PatternError> {
        FamilySpec::new(k, vec![Component::new(kind, length)?])
    }

    /// Parses `kind:length(+kind:length)*`, e.g. `minimal:3+linear:4`.
    pub fn parse(text: &str, k: usize) -> Result<Self, PatternError> {
        let parse_err = |reason: &str| PatternError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let mut components = Vec::new();
        for part in text.split('+') {
            let (kind, length) = part
                .split_once(':')
                .ok_or_else(|| parse_err("each component must look like kind:length"))?;
            let kind: PatternKind = kind.parse()?;
            let length: usize = length
                .trim()
                .parse()
                .map_err(|_| parse_err("length must be a non-negative integer"))?;
            components.push(Component::new(kind, length)?);
        }
        FamilySpec::new(k, components)
    }

    pub fn total_edges(&self) -> usize {
        self.components.iter().map(|c| c.length).sum()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An explicit occurrence of a pattern.
///
/// `connectors` lists the designated vertices where the kind has them:
/// `length + 1` for Berge paths, `length` for Berge and linear cycles
/// (`connectors[i]` lies in edges `i` and `i + 1`), `length - 1` for linear
/// paths. Minimal-cycle witnesses from the detector carry none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: PatternKind,
    pub length: usize,
    pub edges: Vec<Edge>,
    pub connectors: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {kind} witness: {reason}")]
pub struct InvalidWitness {
    pub kind: PatternKind,
    pub reason: String,
}

impl Witness {
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| e.iter()).collect()
    }

    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, map: F) -> Witness {
        Witness {
            kind: self.kind,
            length: self.length,
            edges: self.edges.iter().map(|e| Edge::new(e.iter().map(&map))).collect(),
            connectors: self.connectors.iter().map(|&v| map(v)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), InvalidWitness> {
        self.validate_as(self.kind)
    }

    /// Checks the structure against `kind`, regardless of the kind the witness
    /// was produced as. Linear connectors are recomputed when absent; Berge
    /// kinds need their connectors.
    pub fn validate_as(&self, kind: PatternKind) -> Result<(), InvalidWitness> {
        let fail = |reason: String| Err(InvalidWitness { kind, reason });
        let l = self.edges.len();
        if l != self.length {
            return fail(format!("length {} but {} edges", self.length, l));
        }
        if l < kind.min_length() {
            return fail(format!("length {l} below minimum {}", kind.min_length()));
        }
        if let Some(first) = self.edges.first() {
            if self.edges.iter().any(|e| e.len() != first.len()) {
                return fail("edges of different sizes".into());
            }
        }
        for i in 0..l {
            for j in i + 1..l {
                if self.edges[i] == self.edges[j] {
                    return fail(format!("edges {i} and {j} coincide"));
                }
            }
        }
        let e = &self.edges;
        match kind {
            PatternKind::MinimalCycle | PatternKind::LinearCycle => {
                let linear = kind == PatternKind::LinearCycle;
                for i in 0..l {
                    for j in i + 1..l {
                        let adjacent = j == i + 1 || (i == 0 && j == l - 1);
                        let common = e[i].intersection_size(&e[j]);
                        if adjacent && common == 0 {
                            return fail(format!("consecutive edges {i},{j} are disjoint"));
                        }
                        if adjacent && linear && common != 1 {
                            return fail(format!("consecutive edges {i},{j} share {common} vertices"));
                        }
                        if !adjacent && common != 0 {
                            return fail(format!("non-consecutive edges {i},{j} intersect"));
                        }
                    }
                }
                if l == 3 && e[0].iter().any(|v| e[1].contains(v) && e[2].contains(v)) {
                    return fail("all three edges share a vertex".into());
                }
                if linear {
                    let links: Vec<Vertex> = (0..l).map(|i| e[i].intersection(&e[(i + 1) % l])[0]).collect();
                    let distinct: BTreeSet<Vertex> = links.iter().copied().collect();
                    if distinct.len() != l {
                        return fail("connector vertices are not distinct".into());
                    }
                    if !self.connectors.is_empty() && self.connectors != links {
                        return fail(format!("connectors {:?} do not match intersections {links:?}", self.connectors));
                    }
                }
            }
            PatternKind::LinearPath => {
                for i in 0..l {
                    for j in i + 1..l {
                        let common = e[i].intersection_size(&e[j]);
                        if j == i + 1 && common != 1 {
                            return fail(format!("consecutive edges {i},{j} share {common} vertices"));
                        }
                        if j > i + 1 && common != 0 {
                            return fail(format!("non-consecutive edges {i},{j} intersect"));
                        }
                    }
                }
                if !self.connectors.is_empty() {
                    let links: Vec<Vertex> = (0..l.saturating_sub(1)).map(|i| e[i].intersection(&e[i + 1])[0]).collect();
                    if self.connectors != links {
                        return fail("connectors do not match intersections".into());
                    }
                }
            }
            PatternKind::BergePath | PatternKind::BergeCycle => {
                let cyclic = kind == PatternKind::BergeCycle;
                let want = if cyclic { l } else { l + 1 };
                let v = &self.connectors;
                if v.len() != want {
                    return fail(format!("needs {want} connectors, has {}", v.len()));
                }
                if v.iter().collect::<BTreeSet<_>>().len() != want {
                    return fail("connectors are not distinct".into());
                }
                for i in 0..l {
                    let next = if cyclic { v[(i + 1) % l] } else { v[i + 1] };
                    if !e[i].contains(v[i]) || !e[i].contains(next) {
                        return fail(format!("edge {i} misses its connectors"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks that `witnesses` is a valid occurrence of `spec` inside `host`:
/// one valid witness per component, edges present in the host, and pairwise
/// vertex-disjoint components.
pub fn check_family_witnesses(
    host: &KHypergraph,
    spec: &FamilySpec,
    witnesses: &[Witness],
) -> Result<(), InvalidWitness> {
    if witnesses.len() != spec.components.len() {
        return Err(InvalidWitness {
            kind: spec.components[0].kind,
            reason: format!("{} witnesses for {} components", witnesses.len(), spec.components.len()),
        });
    }
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for (w, c) in witnesses.iter().zip(&spec.components) {
        let fail = |reason: String| Err(InvalidWitness { kind: c.kind, reason });
        if w.length != c.length {
            return fail(format!("length {} for component {c}", w.length));
        }
        w.validate_as(c.kind)?;
        if let Some(e) = w.edges.iter().find(|e| !host.contains_edge(e)) {
            return fail(format!("edge {e} is not in the host"));
        }
        let verts = w.vertex_set();
        if verts.iter().any(|v| seen.contains(v)) {
            return fail("components are not vertex-disjoint".into());
        }
        seen.extend(verts);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(kind: PatternKind, edges: &[&[Vertex]], connectors: &[Vertex]) -> Witness {
        Witness {
            kind,
            length: edges.len(),
            edges: edges.iter().map(|e| Edge::new(e.iter().copied())).collect(),
            connectors: connectors.to_vec(),
        }
    }

    #[test]
    fn parse_family_specs() {
        let s = FamilySpec::parse("minimal:3+minimal:4", 4).unwrap();
        assert_eq!(s.components.len(), 2);
        assert_eq!(s.to_string(), "minimal:3+minimal:4");
        let s = FamilySpec::parse("linear:4+linear:4+linear:6", 5).unwrap();
        assert_eq!(s.total_edges(), 14);
        let s = FamilySpec::parse("berge-path:5", 3).unwrap();
        assert_eq!(s.components[0].kind, PatternKind::BergePath);
        assert_eq!(FamilySpec::parse("linear-cycle:3", 3).unwrap().to_string(), "linear:3");
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert!(FamilySpec::parse("minimal:2", 4).is_err());
        assert!(FamilySpec::parse("circle:3", 4).is_err());
        assert!(FamilySpec::parse("minimal", 4).is_err());
        assert!(FamilySpec::parse("minimal:x", 4).is_err());
        assert!(FamilySpec::parse("linear-path:0", 4).is_err());
        assert!(FamilySpec::parse("linear-path:1", 4).is_ok());
    }

    #[test]
    fn linear_triangle_is_valid_both_ways() {
        let t = w(PatternKind::LinearCycle, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 0]], &[2, 4, 0]);
        t.validate().unwrap();
        t.validate_as(PatternKind::MinimalCycle).unwrap();
    }

    #[test]
    fn sunflower_is_not_a_cycle() {
        let s = w(PatternKind::MinimalCycle, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]], &[]);
        assert!(s.validate().is_err());
        assert!(s.validate_as(PatternKind::LinearCycle).is_err());
    }

    #[test]
    fn minimal_but_not_linear() {
        let c = w(PatternKind::MinimalCycle, &[&[0, 1, 2], &[1, 2, 3], &[3, 4, 0]], &[]);
        c.validate().unwrap();
        assert!(c.validate_as(PatternKind::LinearCycle).is_err());
    }

    #[test]
    fn chords_break_minimality() {
        let c = w(
            PatternKind::MinimalCycle,
            &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[6, 7, 0], ],
            &[],
        );
        c.validate().unwrap();
        let chord = w(
            PatternKind::MinimalCycle,
            &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 1], &[5, 6, 0]],
            &[],
        );
        assert!(chord.validate().is_err());
    }

    #[test]
    fn berge_connectors_checked() {
        let p = w(PatternKind::BergePath, &[&[0, 1, 2], &[1, 2, 3]], &[0, 1, 2]);
        p.validate().unwrap();
        let bad = w(PatternKind::BergePath, &[&[0, 1, 2], &[1, 2, 3]], &[0, 1, 1]);
        assert!(bad.validate().is_err());
        let cyc = w(PatternKind::BergeCycle, &[&[0, 1, 2], &[1, 2, 3], &[0, 2, 3]], &[0, 1, 2]);
        cyc.validate().unwrap();
    }

    #[test]
    fn repeated_edges_rejected() {
        let r = w(PatternKind::BergePath, &[&[0, 1, 2], &[0, 1, 2]], &[0, 1, 2]);
        assert!(r.validate().is_err());
    }
}
