//! Backtracking detectors.
//!
//! Each edge is a bitmask over the vertices. A component is searched by
//! ordered backtracking over edge choices, checking the intersection rules of
//! its kind as each edge is placed. Vertex-disjoint families are placed one
//! component at a time, longest first; whenever a partial component has been
//! placed the remaining components are tested against the vertices still
//! free, and those sub-results are memoized by (component, blocked vertices),
//! so a partial placement that leaves no room for the rest is cut off early.
//!
//! Cycles are enumerated with their minimum-index edge first (unless an
//! anchor edge is forced) and with the second edge below the last one, so
//! each cycle is visited once per orientation class. Scale: a few thousand
//! edges with total family length up to about ten.

use std::collections::HashMap;

use super::{check_family_witnesses, Component, FamilySpec, PatternError, PatternKind, Witness};
use crate::hypergraph::{Edge, KHypergraph, Vertex};

/// First occurrence of a single pattern, in deterministic order.
pub fn contains_pattern(
    host: &KHypergraph,
    kind: PatternKind,
    length: usize,
) -> Result<Option<Witness>, PatternError> {
    let spec = FamilySpec::single(host.k(), kind, length)?;
    Ok(contains_disjoint_family(host, &spec)?.map(|mut w| w.remove(0)))
}

/// Vertex-disjoint witnesses for every component of `spec`, listed in the
/// order of `spec.components`, or `None` when the host avoids the family.
pub fn contains_disjoint_family(
    host: &KHypergraph,
    spec: &FamilySpec,
) -> Result<Option<Vec<Witness>>, PatternError> {
    check_uniformity(host, spec)?;
    let bits = Bits::new(host);
    let order = longest_first(&spec.components, None);
    let found = Family::new(&bits, &spec.components, order, None).run();
    Ok(found.map(|f| finish(host, spec, f)))
}

/// Like [`contains_disjoint_family`], but only occurrences that use the edge
/// with index `edge` count. When the host minus that edge avoids the family
/// this decides whether adding the edge creates it.
pub fn find_family_using_edge(
    host: &KHypergraph,
    spec: &FamilySpec,
    edge: usize,
) -> Result<Option<Vec<Witness>>, PatternError> {
    check_uniformity(host, spec)?;
    assert!(edge < host.edge_count(), "edge index out of range");
    let bits = Bits::new(host);
    let mut tried: Vec<Component> = Vec::new();
    for (slot, comp) in spec.components.iter().enumerate() {
        if tried.contains(comp) {
            continue;
        }
        tried.push(*comp);
        let order = longest_first(&spec.components, Some(slot));
        if let Some(f) = Family::new(&bits, &spec.components, order, Some(edge as u32)).run() {
            return Ok(Some(finish(host, spec, f)));
        }
    }
    Ok(None)
}

fn check_uniformity(host: &KHypergraph, spec: &FamilySpec) -> Result<(), PatternError> {
    if spec.k != host.k() {
        return Err(PatternError::UniformityMismatch {
            spec: spec.k,
            host: host.k(),
        });
    }
    Ok(())
}

/// Component indices by descending length, stable; `first` is forced to the
/// front.
fn longest_first(components: &[Component], first: Option<usize>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..components.len()).filter(|&i| Some(i) != first).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(components[i].length));
    if let Some(f) = first {
        order.insert(0, f);
    }
    order
}

fn finish(host: &KHypergraph, spec: &FamilySpec, found: Vec<(usize, Found)>) -> Vec<Witness> {
    let mut slots: Vec<Option<Witness>> = vec![None; spec.components.len()];
    for (slot, f) in found {
        slots[slot] = Some(f.into_witness(host, spec.components[slot]));
    }
    let witnesses: Vec<Witness> = slots.into_iter().map(Option::unwrap).collect();
    debug_assert!(
        check_family_witnesses(host, spec, &witnesses).is_ok(),
        "detector produced an invalid witness: {:?}",
        check_family_witnesses(host, spec, &witnesses)
    );
    witnesses
}

struct Bits {
    words: usize,
    edges: usize,
    data: Vec<u64>,
    vertices: Vec<Vec<Vertex>>,
    n: usize,
}

impl Bits {
    fn new(host: &KHypergraph) -> Self {
        let words = host.n().div_ceil(64).max(1);
        let mut data = vec![0u64; words * host.edge_count()];
        for (i, e) in host.edges().iter().enumerate() {
            for v in e.iter() {
                data[i * words + v as usize / 64] |= 1 << (v % 64);
            }
        }
        Bits {
            words,
            edges: host.edge_count(),
            data,
            vertices: host.edges().iter().map(|e| e.vertices().to_vec()).collect(),
            n: host.n(),
        }
    }

    #[inline]
    fn mask(&self, e: u32) -> &[u64] {
        let start = e as usize * self.words;
        &self.data[start..start + self.words]
    }
}

#[inline]
fn meets(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[inline]
fn common(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
fn meets3(a: &[u64], b: &[u64], c: &[u64]) -> bool {
    a.iter().zip(b).zip(c).any(|((x, y), z)| x & y & z != 0)
}

#[inline]
fn union_into(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
        *d = x | y;
    }
}

#[derive(Debug, Clone)]
struct Found {
    edges: Vec<u32>,
    connectors: Vec<Vertex>,
}

impl Found {
    fn into_witness(self, host: &KHypergraph, comp: Component) -> Witness {
        let edges: Vec<Edge> = self.edges.iter().map(|&i| host.edges()[i as usize].clone()).collect();
        let l = edges.len();
        let connectors = match comp.kind {
            PatternKind::LinearCycle => (0..l).map(|i| edges[i].intersection(&edges[(i + 1) % l])[0]).collect(),
            PatternKind::LinearPath => (0..l.saturating_sub(1)).map(|i| edges[i].intersection(&edges[i + 1])[0]).collect(),
            PatternKind::MinimalCycle => Vec::new(),
            PatternKind::BergePath | PatternKind::BergeCycle => self.connectors,
        };
        Witness {
            kind: comp.kind,
            length: comp.length,
            edges,
            connectors,
        }
    }
}

trait Visitor {
    /// True when no completion of a partial placement using `used` can work.
    fn prune(&mut self, used: &[u64]) -> bool;
    /// Offers a complete component; true stops the search.
    fn leaf(&mut self, found: Found, used: &[u64]) -> bool;
}

/// Witnesses for the remaining components, keyed by component slot.
type Placement = Option<Vec<(usize, Found)>>;

struct Family<'a> {
    bits: &'a Bits,
    components: &'a [Component],
    order: Vec<usize>,
    required: Option<u32>,
    memo: HashMap<(usize, Vec<u64>), Placement>,
}

impl<'a> Family<'a> {
    fn new(bits: &'a Bits, components: &'a [Component], order: Vec<usize>, required: Option<u32>) -> Self {
        Family {
            bits,
            components,
            order,
            required,
            memo: HashMap::new(),
        }
    }

    fn run(mut self) -> Option<Vec<(usize, Found)>> {
        let blocked = vec![0u64; self.bits.words];
        self.place(0, &blocked)
    }

    fn place(&mut self, level: usize, blocked: &[u64]) -> Option<Vec<(usize, Found)>> {
        if level == self.order.len() {
            return Some(Vec::new());
        }
        let key = (level, blocked.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let bits = self.bits;
        let comp = self.components[self.order[level]];
        let avail: Vec<u32> = (0..bits.edges as u32).filter(|&e| !meets(bits.mask(e), blocked)).collect();
        let need: usize = self.order[level..].iter().map(|&i| self.components[i].length).sum();
        let result = if avail.len() < need {
            None
        } else {
            let required = if level == 0 { self.required } else { None };
            let job = Job {
                bits,
                comp,
                blocked,
                avail,
                anchor: required.filter(|_| comp.kind.is_cycle()),
                must_use: required.filter(|_| !comp.kind.is_cycle()),
            };
            let mut visitor = LevelVisitor {
                family: self,
                level,
                found: None,
            };
            job.run(&mut visitor);
            visitor.found
        };
        self.memo.insert(key, result.clone());
        result
    }
}

struct LevelVisitor<'f, 'a> {
    family: &'f mut Family<'a>,
    level: usize,
    found: Option<Vec<(usize, Found)>>,
}

impl Visitor for LevelVisitor<'_, '_> {
    fn prune(&mut self, used: &[u64]) -> bool {
        self.level + 1 < self.family.order.len() && self.family.place(self.level + 1, used).is_none()
    }

    fn leaf(&mut self, found: Found, used: &[u64]) -> bool {
        if let Some(rest) = self.family.place(self.level + 1, used) {
            let mut all = vec![(self.family.order[self.level], found)];
            all.extend(rest);
            self.found = Some(all);
            true
        } else {
            false
        }
    }
}

/// Search for one component among the edges in `avail`.
struct Job<'a> {
    bits: &'a Bits,
    comp: Component,
    blocked: &'a [u64],
    avail: Vec<u32>,
    /// Cycles: forced first edge.
    anchor: Option<u32>,
    /// Paths: edge that must appear somewhere.
    must_use: Option<u32>,
}

/// Per-depth scratch masks: `row(d)` is blocked ∪ first d edges.
struct Stack {
    words: usize,
    data: Vec<u64>,
}

impl Stack {
    fn new(words: usize, depth: usize, base: &[u64]) -> Self {
        let mut data = vec![0u64; words * (depth + 1)];
        data[..words].copy_from_slice(base);
        Stack { words, data }
    }

    fn row(&self, d: usize) -> &[u64] {
        &self.data[d * self.words..(d + 1) * self.words]
    }

    /// row(d) = row(d - 1) ∪ mask
    fn push(&mut self, d: usize, mask: &[u64]) {
        let (lo, hi) = self.data.split_at_mut(d * self.words);
        union_into(&mut hi[..self.words], &lo[(d - 1) * self.words..], mask);
    }
}

impl Job<'_> {
    fn run(&self, visitor: &mut dyn Visitor) -> bool {
        match self.comp.kind {
            PatternKind::MinimalCycle => self.cycles(false, visitor),
            PatternKind::LinearCycle => self.cycles(true, visitor),
            PatternKind::LinearPath => self.linear_paths(visitor),
            PatternKind::BergePath => self.berge(false, visitor),
            PatternKind::BergeCycle => self.berge(true, visitor),
        }
    }

    fn firsts(&self) -> Vec<u32> {
        match self.anchor {
            Some(a) => vec![a],
            None => self.avail.clone(),
        }
    }

    fn cycles(&self, linear: bool, visitor: &mut dyn Visitor) -> bool {
        let len = self.comp.length;
        let w = self.bits.words;
        let mut st = CycleState {
            job: self,
            linear,
            len,
            chosen: Vec::with_capacity(len),
            all: Stack::new(w, len, self.blocked),
            // tail.row(d) = A_2 ∪ ... ∪ A_d
            tail: Stack::new(w, len, &vec![0; w]),
        };
        for a1 in self.firsts() {
            st.chosen.clear();
            st.chosen.push(a1);
            st.all.push(1, self.bits.mask(a1));
            st.tail.push(1, &vec![0; w]);
            if visitor.prune(st.all.row(1)) {
                continue;
            }
            if st.extend(2, visitor) {
                return true;
            }
        }
        false
    }

    fn linear_paths(&self, visitor: &mut dyn Visitor) -> bool {
        let len = self.comp.length;
        let mut chosen = Vec::with_capacity(len);
        let mut all = Stack::new(self.bits.words, len, self.blocked);
        for &f1 in &self.avail {
            chosen.clear();
            chosen.push(f1);
            all.push(1, self.bits.mask(f1));
            if len == 1 {
                if self.must_use.is_none_or(|r| r == f1)
                    && visitor.leaf(
                        Found {
                            edges: chosen.clone(),
                            connectors: Vec::new(),
                        },
                        all.row(1),
                    )
                {
                    return true;
                }
                continue;
            }
            if visitor.prune(all.row(1)) {
                continue;
            }
            if self.extend_path(2, &mut chosen, &mut all, visitor) {
                return true;
            }
        }
        false
    }

    fn extend_path(&self, d: usize, chosen: &mut Vec<u32>, all: &mut Stack, visitor: &mut dyn Visitor) -> bool {
        let len = self.comp.length;
        let prev = self.bits.mask(chosen[d - 2]);
        for &c in &self.avail {
            let cm = self.bits.mask(c);
            if common(cm, prev) != 1 || meets(cm, all.row(d - 2)) {
                continue;
            }
            if d == len && c < chosen[0] {
                continue;
            }
            chosen.push(c);
            all.push(d, cm);
            let stop = if d == len {
                self.must_use.is_none_or(|r| chosen.contains(&r))
                    && visitor.leaf(
                        Found {
                            edges: chosen.clone(),
                            connectors: Vec::new(),
                        },
                        all.row(d),
                    )
            } else {
                !visitor.prune(all.row(d)) && self.extend_path(d + 1, chosen, all, visitor)
            };
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn berge(&self, cyclic: bool, visitor: &mut dyn Visitor) -> bool {
        let len = self.comp.length;
        let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); self.bits.n];
        for &e in &self.avail {
            for &v in &self.bits.vertices[e as usize] {
                incidence[v as usize].push(e);
            }
        }
        let mut st = BergeState {
            job: self,
            cyclic,
            len,
            incidence,
            chosen: Vec::with_capacity(len),
            connectors: Vec::with_capacity(len + 1),
            used: vec![false; self.bits.n],
            all: Stack::new(self.bits.words, len, self.blocked),
        };
        if cyclic {
            for a1 in self.firsts() {
                st.chosen.clear();
                st.chosen.push(a1);
                st.all.push(1, self.bits.mask(a1));
                if visitor.prune(st.all.row(1)) {
                    continue;
                }
                let verts = &self.bits.vertices[a1 as usize];
                for &v1 in verts {
                    for &v2 in verts {
                        if v1 == v2 {
                            continue;
                        }
                        st.connectors.clear();
                        st.connectors.extend([v1, v2]);
                        st.used[v1 as usize] = true;
                        st.used[v2 as usize] = true;
                        let stop = st.extend(2, visitor);
                        st.used[v1 as usize] = false;
                        st.used[v2 as usize] = false;
                        if stop {
                            return true;
                        }
                    }
                }
            }
        } else {
            for v1 in 0..self.bits.n as Vertex {
                if st.incidence[v1 as usize].is_empty() {
                    continue;
                }
                st.chosen.clear();
                st.connectors.clear();
                st.connectors.push(v1);
                st.used[v1 as usize] = true;
                let stop = st.extend(1, visitor);
                st.used[v1 as usize] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

struct CycleState<'j> {
    job: &'j Job<'j>,
    linear: bool,
    len: usize,
    chosen: Vec<u32>,
    all: Stack,
    tail: Stack,
}

impl CycleState<'_> {
    fn related(&self, a: &[u64], b: &[u64]) -> bool {
        if self.linear {
            common(a, b) == 1
        } else {
            meets(a, b)
        }
    }

    /// Chooses edge number `d` (1-based).
    fn extend(&mut self, d: usize, visitor: &mut dyn Visitor) -> bool {
        let job = self.job;
        let bits = job.bits;
        let last = d == self.len;
        let a1 = self.chosen[0];
        let anchored = job.anchor.is_some();
        for &c in &job.avail {
            if (!anchored && c <= a1) || self.chosen.contains(&c) {
                continue;
            }
            let cm = bits.mask(c);
            if !self.related(cm, bits.mask(self.chosen[d - 2])) {
                continue;
            }
            if last {
                let a1m = bits.mask(a1);
                if c < self.chosen[1]
                    || meets(cm, self.tail.row(d - 2))
                    || !self.related(cm, a1m)
                    || (self.len == 3 && meets3(cm, a1m, bits.mask(self.chosen[1])))
                {
                    continue;
                }
            } else if meets(cm, self.all.row(d - 2)) {
                continue;
            }
            self.chosen.push(c);
            self.all.push(d, cm);
            self.tail.push(d, cm);
            let stop = if last {
                visitor.leaf(
                    Found {
                        edges: self.chosen.clone(),
                        connectors: Vec::new(),
                    },
                    self.all.row(d),
                )
            } else {
                !visitor.prune(self.all.row(d)) && self.extend(d + 1, visitor)
            };
            self.chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

struct BergeState<'j> {
    job: &'j Job<'j>,
    cyclic: bool,
    len: usize,
    incidence: Vec<Vec<u32>>,
    chosen: Vec<u32>,
    connectors: Vec<Vertex>,
    used: Vec<bool>,
    all: Stack,
}

impl BergeState<'_> {
    /// Chooses edge number `i` (1-based) through connector `i`.
    fn extend(&mut self, i: usize, visitor: &mut dyn Visitor) -> bool {
        let v_i = self.connectors[i - 1];
        let candidates = std::mem::take(&mut self.incidence[v_i as usize]);
        let stop = self.try_candidates(i, &candidates, visitor);
        self.incidence[v_i as usize] = candidates;
        stop
    }

    fn try_candidates(&mut self, i: usize, candidates: &[u32], visitor: &mut dyn Visitor) -> bool {
        let job = self.job;
        let bits = job.bits;
        let anchored = job.anchor.is_some();
        for &c in candidates {
            if self.chosen.contains(&c) || (self.cyclic && !anchored && c <= self.chosen[0]) {
                continue;
            }
            self.chosen.push(c);
            self.all.push(i, bits.mask(c));
            let stop = if self.cyclic && i == self.len {
                bits.vertices[c as usize].contains(&self.connectors[0])
                    && visitor.leaf(
                        Found {
                            edges: self.chosen.clone(),
                            connectors: self.connectors.clone(),
                        },
                        self.all.row(i),
                    )
            } else if visitor.prune(self.all.row(i)) {
                false
            } else {
                self.next_connector(i, c, visitor)
            };
            self.chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// Picks connector `i + 1` inside edge `c`, then continues.
    fn next_connector(&mut self, i: usize, c: u32, visitor: &mut dyn Visitor) -> bool {
        let job = self.job;
        for &v in &job.bits.vertices[c as usize] {
            if self.used[v as usize] {
                continue;
            }
            let path_end = !self.cyclic && i == self.len;
            if path_end && v < self.connectors[0] {
                continue;
            }
            self.connectors.push(v);
            let stop = if path_end {
                job.must_use.is_none_or(|r| self.chosen.contains(&r))
                    && visitor.leaf(
                        Found {
                            edges: self.chosen.clone(),
                            connectors: self.connectors.clone(),
                        },
                        self.all.row(i),
                    )
            } else {
                self.used[v as usize] = true;
                let s = self.extend(i + 1, visitor);
                self.used[v as usize] = false;
                s
            };
            self.connectors.pop();
            if stop {
                return true;
            }
        }
        false
    }
}
