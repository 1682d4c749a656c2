//! Exhaustive spanning tree and spanning forest enumeration.
//!
//! A backtracking search over edges in id order with a copy-on-branch
//! union-find. Results come out in a deterministic order (lexicographic in
//! the include/exclude decision sequence).

use super::{EdgeSet, Graph, VertexPartition};

#[derive(Clone)]
struct Components {
    parent: Vec<usize>,
    tag: Vec<Option<usize>>,
}

impl Components {
    fn new(n: usize, tags: Option<&[Option<usize>]>) -> Self {
        Components { parent: (0..n).collect(), tag: tags.map(|t| t.to_vec()).unwrap_or_else(|| vec![None; n]) }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Joins the components of `u` and `v`. Fails on a cycle or when two
    /// differently tagged components would merge.
    fn join(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        match (self.tag[ru], self.tag[rv]) {
            (Some(a), Some(b)) if a != b => return false,
            (a, b) => {
                self.parent[rv] = ru;
                self.tag[ru] = a.or(b);
            }
        }
        true
    }
}

/// Acyclic edge subsets of size `size` over `edges` (indices into the slice
/// become bit positions), respecting optional vertex tags: no tree may
/// contain two vertices with distinct tags. Self-loops are never chosen.
pub(crate) fn forests_of_size(
    vertex_count: usize,
    edges: &[(usize, usize)],
    size: usize,
    tags: Option<&[Option<usize>]>,
) -> Vec<EdgeSet> {
    fn go(edges: &[(usize, usize)], i: usize, need: usize, chosen: u32, comps: &Components, out: &mut Vec<EdgeSet>) {
        if need == 0 {
            out.push(EdgeSet(chosen));
            return;
        }
        if edges.len() - i < need {
            return;
        }
        let (u, v) = edges[i];
        let mut with = comps.clone();
        if with.join(u, v) {
            go(edges, i + 1, need - 1, chosen | 1 << i, &with, out);
        }
        go(edges, i + 1, need, chosen, comps, out);
    }

    let mut out = Vec::new();
    if size > edges.len() || size >= vertex_count.max(1) {
        return out;
    }
    go(edges, 0, size, 0, &Components::new(vertex_count, tags), &mut out);
    out
}

/// Every spanning tree of `g` as its edge set. Empty when `g` is disconnected.
pub fn spanning_trees(g: &Graph) -> Vec<EdgeSet> {
    forests_of_size(g.vertex_count(), g.edge_list(), g.vertex_count() - 1, None)
}

/// Every spanning forest of `g` with exactly `trees` components.
pub fn spanning_forests(g: &Graph, trees: usize) -> Vec<EdgeSet> {
    if trees == 0 || trees > g.vertex_count() {
        return Vec::new();
    }
    forests_of_size(g.vertex_count(), g.edge_list(), g.vertex_count() - trees, None)
}

/// Spanning forests compatible with `p`: exactly one tree per part, each
/// part inside its tree, and unmentioned vertices absorbed into some tree.
pub fn compatible_forests(g: &Graph, p: &VertexPartition) -> Vec<EdgeSet> {
    if p.is_empty() || p.len() > g.vertex_count() {
        return Vec::new();
    }
    let tags = p.tags(g.vertex_count());
    // With |V| - |P| edges there are exactly |P| trees, and the tag rule keeps
    // parts apart, so every tree holds exactly one whole part.
    forests_of_size(g.vertex_count(), g.edge_list(), g.vertex_count() - p.len(), Some(&tags))
}
