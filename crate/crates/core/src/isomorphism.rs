//! Isomorphism testing for small hypergraphs.
//!
//! Plain backtracking over vertex assignments, pruned by vertex degree and by
//! checking each edge of the first hypergraph as soon as all of its vertices
//! are mapped. Intended for desk-scale inputs (`n` up to about 20 with a few
//! hundred edges); adversarial regular inputs can take exponential time.

use crate::hypergraph::{Edge, KHypergraph, Vertex};

pub fn are_isomorphic(a: &KHypergraph, b: &KHypergraph) -> bool {
    if a.n() != b.n() || a.k() != b.k() || a.edge_count() != b.edge_count() {
        return false;
    }
    let deg_a = degrees(a);
    let deg_b = degrees(b);
    let mut sorted_a = deg_a.clone();
    let mut sorted_b = deg_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return false;
    }

    let order = mapping_order(a, &deg_a);
    // edges of `a` whose last vertex (in `order`) sits at each position
    let mut position = vec![usize::MAX; a.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let mut closing: Vec<Vec<&Edge>> = vec![Vec::new(); order.len()];
    for e in a.edges() {
        let last = e.iter().map(|v| position[v as usize]).max().unwrap();
        closing[last].push(e);
    }

    let mut state = Matcher {
        a_deg: &deg_a,
        b_deg: &deg_b,
        b,
        order: &order,
        closing: &closing,
        image: vec![Vertex::MAX; a.n()],
        taken: vec![false; b.n()],
    };
    state.extend(0)
}

fn degrees(h: &KHypergraph) -> Vec<usize> {
    let mut deg = vec![0; h.n()];
    for e in h.edges() {
        for v in e.iter() {
            deg[v as usize] += 1;
        }
    }
    deg
}

/// Non-isolated vertices, each next one chosen to share the most edges with
/// the vertices already ordered, so edges close early.
fn mapping_order(h: &KHypergraph, deg: &[usize]) -> Vec<Vertex> {
    let mut placed = vec![false; h.n()];
    let mut order = Vec::new();
    let active: Vec<Vertex> = (0..h.n() as Vertex).filter(|&v| deg[v as usize] > 0).collect();
    while order.len() < active.len() {
        let mut best: Option<(usize, usize, Vertex)> = None;
        for &v in &active {
            if placed[v as usize] {
                continue;
            }
            let links = h
                .edges()
                .iter()
                .filter(|e| e.contains(v) && e.iter().any(|u| placed[u as usize]))
                .count();
            let key = (links, deg[v as usize], v);
            let better = match best {
                None => true,
                Some((l, d, _)) => (links, deg[v as usize]) > (l, d),
            };
            if better {
                best = Some(key);
            }
        }
        let (_, _, v) = best.unwrap();
        placed[v as usize] = true;
        order.push(v);
    }
    order
}

struct Matcher<'a> {
    a_deg: &'a [usize],
    b_deg: &'a [usize],
    b: &'a KHypergraph,
    order: &'a [Vertex],
    closing: &'a [Vec<&'a Edge>],
    image: Vec<Vertex>,
    taken: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.b.n() as Vertex {
            if self.taken[w as usize] || self.b_deg[w as usize] != self.a_deg[v as usize] {
                continue;
            }
            self.image[v as usize] = w;
            let consistent = self.closing[depth].iter().all(|e| {
                let mapped = Edge::new(e.iter().map(|u| self.image[u as usize]));
                self.b.contains_edge(&mapped)
            });
            if consistent {
                self.taken[w as usize] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.taken[w as usize] = false;
            }
        }
        self.image[v as usize] = Vertex::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::build_linear_cycle;

    fn hg(n: usize, k: usize, edges: &[&[Vertex]]) -> KHypergraph {
        KHypergraph::new(n, k, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn identical_cycles_are_isomorphic() {
        let c = build_linear_cycle(3, 4).unwrap();
        assert!(are_isomorphic(&c, &c));
    }

    #[test]
    fn relabeled_single_edge() {
        assert!(are_isomorphic(&hg(6, 3, &[&[0, 1, 2]]), &hg(6, 3, &[&[3, 4, 5]])));
    }

    #[test]
    fn sunflower_vs_linear_triangle() {
        let sunflower = hg(7, 3, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        let triangle = build_linear_cycle(3, 3).unwrap();
        assert!(!are_isomorphic(&sunflower, &triangle));
        // same vertex count, still different
        let padded = hg(7, 3, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 0]]);
        assert!(!are_isomorphic(&sunflower, &padded));
    }

    #[test]
    fn shuffled_linear_cycle_is_isomorphic() {
        let c = build_linear_cycle(4, 5).unwrap();
        let n = c.n() as Vertex;
        let perm = |v: Vertex| (v * 7 + 3) % n;
        let shuffled = KHypergraph::new(c.n(), 4, c.edges().iter().map(|e| e.iter().map(perm))).unwrap();
        assert!(are_isomorphic(&c, &shuffled));
    }

    #[test]
    fn path_and_cycle_differ() {
        let p = hg(6, 3, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 1]]);
        let c = build_linear_cycle(3, 3).unwrap();
        // both have 3 edges on 6 vertices; p is a cycle in disguise
        assert!(are_isomorphic(&p, &c));
        let q = hg(6, 3, &[&[0, 1, 2], &[2, 3, 4], &[1, 2, 5]]);
        assert!(!are_isomorphic(&q, &c));
    }
}
