//! Brute-force containment oracle for tests.
//!
//! Tries every ordered tuple of distinct edges of the total family length and
//! checks the definitions directly. No pruning and no shared code with the
//! detectors beyond the edge type; only usable for about 25 edges or fewer.

use std::collections::BTreeSet;

use super::{FamilySpec, PatternKind};
use crate::hypergraph::{KHypergraph, Vertex};

pub fn oracle_contains(host: &KHypergraph, spec: &FamilySpec) -> bool {
    if host.k() != spec.k {
        return false;
    }
    let sets: Vec<BTreeSet<Vertex>> = host.edges().iter().map(|e| e.iter().collect()).collect();
    let m = sets.len();
    let total = spec.total_edges();
    if total > m {
        return false;
    }
    let meet: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| sets[i].intersection(&sets[j]).count()).collect())
        .collect();
    let oracle = Oracle { sets, meet, spec };
    let mut tuple = Vec::with_capacity(total);
    let mut taken = vec![false; m];
    oracle.any_tuple(total, &mut tuple, &mut taken)
}

struct Oracle<'s> {
    sets: Vec<BTreeSet<Vertex>>,
    meet: Vec<Vec<usize>>,
    spec: &'s FamilySpec,
}

impl Oracle<'_> {
    fn any_tuple(&self, total: usize, tuple: &mut Vec<usize>, taken: &mut [bool]) -> bool {
        if tuple.len() == total {
            return self.accepts(tuple);
        }
        for e in 0..self.sets.len() {
            if taken[e] {
                continue;
            }
            taken[e] = true;
            tuple.push(e);
            let hit = self.any_tuple(total, tuple, taken);
            tuple.pop();
            taken[e] = false;
            if hit {
                return true;
            }
        }
        false
    }

    fn accepts(&self, tuple: &[usize]) -> bool {
        let mut start = 0;
        let mut parts = Vec::new();
        for c in &self.spec.components {
            let part = &tuple[start..start + c.length];
            start += c.length;
            if !self.is_pattern(c.kind, part) {
                return false;
            }
            parts.push(part);
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let touching = parts[i].iter().any(|&a| parts[j].iter().any(|&b| self.meet[a][b] > 0));
                if touching {
                    return false;
                }
            }
        }
        true
    }

    fn is_pattern(&self, kind: PatternKind, e: &[usize]) -> bool {
        let l = e.len();
        let meet = |a: usize, b: usize| self.meet[e[a]][e[b]];
        match kind {
            PatternKind::MinimalCycle | PatternKind::LinearCycle => {
                let linear = kind == PatternKind::LinearCycle;
                for i in 0..l {
                    for j in 0..l {
                        if i == j {
                            continue;
                        }
                        let consecutive = (i + 1) % l == j || (j + 1) % l == i;
                        let c = meet(i, j);
                        let ok = if consecutive {
                            if linear {
                                c == 1
                            } else {
                                c >= 1
                            }
                        } else {
                            c == 0
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
                // no vertex common to a whole triangle
                if l == 3 {
                    let all: BTreeSet<Vertex> = self.sets[e[0]]
                        .intersection(&self.sets[e[1]])
                        .copied()
                        .collect::<BTreeSet<_>>()
                        .intersection(&self.sets[e[2]])
                        .copied()
                        .collect();
                    if !all.is_empty() {
                        return false;
                    }
                }
                true
            }
            PatternKind::LinearPath => {
                for i in 0..l {
                    for j in 0..l {
                        if i == j {
                            continue;
                        }
                        let c = meet(i, j);
                        let ok = if i.abs_diff(j) == 1 { c == 1 } else { c == 0 };
                        if !ok {
                            return false;
                        }
                    }
                }
                true
            }
            PatternKind::BergePath => {
                // v_1 in F_1, v_i in F_{i-1} ∩ F_i, v_{l+1} in F_l
                let mut slots: Vec<BTreeSet<Vertex>> = Vec::with_capacity(l + 1);
                slots.push(self.sets[e[0]].clone());
                for i in 1..l {
                    slots.push(self.sets[e[i - 1]].intersection(&self.sets[e[i]]).copied().collect());
                }
                slots.push(self.sets[e[l - 1]].clone());
                distinct_representatives(&slots, &mut Vec::new())
            }
            PatternKind::BergeCycle => {
                // v_i in A_{i-1} ∩ A_i, cyclically
                let slots: Vec<BTreeSet<Vertex>> = (0..l)
                    .map(|i| {
                        self.sets[e[(i + l - 1) % l]]
                            .intersection(&self.sets[e[i]])
                            .copied()
                            .collect()
                    })
                    .collect();
                distinct_representatives(&slots, &mut Vec::new())
            }
        }
    }
}

fn distinct_representatives(slots: &[BTreeSet<Vertex>], picked: &mut Vec<Vertex>) -> bool {
    let Some(slot) = slots.get(picked.len()) else {
        return true;
    };
    for &v in slot {
        if picked.contains(&v) {
            continue;
        }
        picked.push(v);
        let ok = distinct_representatives(slots, picked);
        picked.pop();
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{build_linear_cycle, contains_pattern};

    #[test]
    fn linear_four_cycle() {
        let c = build_linear_cycle(4, 4).unwrap();
        assert!(oracle_contains(&c, &FamilySpec::parse("linear:4", 4).unwrap()));
        assert!(!oracle_contains(&c, &FamilySpec::parse("linear:3", 4).unwrap()));
    }

    #[test]
    fn too_few_edges() {
        let h = KHypergraph::new(6, 3, [vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(!oracle_contains(&h, &FamilySpec::parse("minimal:3", 3).unwrap()));
    }

    #[test]
    fn matches_detector_on_seeded_instance() {
        let h = crate::exact::random_hypergraph(12, 4, 12, 7).unwrap();
        let spec = FamilySpec::parse("minimal:3", 4).unwrap();
        let detector = contains_pattern(&h, PatternKind::MinimalCycle, 3).unwrap().is_some();
        assert_eq!(oracle_contains(&h, &spec), detector);
    }
}
