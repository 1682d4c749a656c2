//! Simple undirected graphs with frozen 1-based edge identifiers.
//!
//! Edge ids double as polynomial variable indices: the variable attached to
//! edge `e` is `α_e`. Ids are assigned in input order and never change for a
//! given [`Graph`]; operations that remove edges return a new graph together
//! with an explicit old-to-new id map.

mod canon;
mod enumerate;
mod minor;
mod parse;
mod primitive;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use canon::canonical_form;
pub use enumerate::{compatible_forests, spanning_forests, spanning_trees};
pub use minor::{minor, Minor};
pub use parse::{parse_edge_list, to_edge_list};
pub use primitive::{is_primitive_divergent, min_internal_cut, reconstruct_completion, Primitivity};

/// Largest edge count supported; edge sets are stored as `u32` bitmasks.
pub const MAX_EDGES: usize = 32;

/// 1-based edge identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    /// Zero-based position of the edge in the edge list.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(index: usize) -> Self {
        EdgeId(index + 1)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of edge ids, bit `i` standing for edge `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeSet(pub u32);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    /// All ids `1..=n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_EDGES);
        if n == 32 {
            EdgeSet(u32::MAX)
        } else {
            EdgeSet((1u32 << n) - 1)
        }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut set = EdgeSet::EMPTY;
        for id in ids {
            set.insert(EdgeId(id));
        }
        set
    }

    pub fn contains(self, e: EdgeId) -> bool {
        self.0 >> e.index() & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        self.0 |= 1 << e.index();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    /// Complement inside `1..=n`.
    pub fn complement(self, n: usize) -> EdgeSet {
        EdgeSet(!self.0 & EdgeSet::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = EdgeId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(EdgeId::from_index(i))
            }
        })
    }

    pub fn ids(self) -> Vec<usize> {
        self.iter().map(|e| e.0).collect()
    }
}

/// A simple undirected graph. Vertices are indices `0..n` carrying opaque
/// string labels; edge `i` of the list has id `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let mut seen_labels = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen_labels.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex label `{l}`")));
            }
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::InvalidGraph(format!(
                "{} edges exceeds the supported maximum of {MAX_EDGES}",
                edges.len()
            )));
        }
        let mut pairs = HashMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= labels.len() || v >= labels.len() {
                return Err(Error::InvalidGraph(format!("edge {} references a missing vertex", i + 1)));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {} is a self-loop at `{}`", i + 1, labels[u])));
            }
            let key = (u.min(v), u.max(v));
            if let Some(prev) = pairs.insert(key, i + 1) {
                return Err(Error::InvalidGraph(format!(
                    "edge {} duplicates edge {prev} ({} {})",
                    i + 1,
                    labels[u],
                    labels[v]
                )));
            }
        }
        Ok(Graph { name: String::from("anonymous"), labels, edges })
    }

    /// Convenience constructor from label pairs; vertices appear in first-use order.
    pub fn from_labeled_edges(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index = HashMap::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let mut id = |l: &str| {
                *index.entry(l.to_string()).or_insert_with(|| {
                    labels.push(l.to_string());
                    labels.len() - 1
                })
            };
            let u = id(a);
            let v = id(b);
            edges.push((u, v));
        }
        Graph::new(labels, edges)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Endpoint pairs in edge-id order.
    pub fn edge_list(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, usize, usize)> + '_ {
        self.edges.iter().enumerate().map(|(i, &(u, v))| (EdgeId::from_index(i), u, v))
    }

    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e.index()]
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Incident edges of `v` in increasing id order.
    pub fn incident_edges(&self, v: usize) -> Vec<EdgeId> {
        self.edges().filter(|&(_, a, b)| a == v || b == v).map(|(e, _, _)| e).collect()
    }

    pub fn other_endpoint(&self, e: EdgeId, v: usize) -> usize {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&x| x == d)
    }

    /// Removes vertex `v` with its incident edges. Surviving edges keep their
    /// relative order and are renumbered `1..N'`.
    pub fn delete_vertex(&self, v: usize) -> Result<VertexDeletion> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if self.vertex_count() == 1 {
            return Err(Error::InvalidGraph("cannot delete the only vertex".into()));
        }
        let remap = |w: usize| if w > v { w - 1 } else { w };
        let labels: Vec<String> =
            self.labels.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, l)| l.clone()).collect();
        let mut edges = Vec::new();
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            if a == v || b == v {
                edge_map.push(None);
            } else {
                edges.push((remap(a), remap(b)));
                edge_map.push(Some(EdgeId(edges.len())));
            }
        }
        let graph = Graph::new(labels, edges)?.with_name(format!("{}-{}", self.name, self.labels[v]));
        Ok(VertexDeletion { graph, removed: self.labels[v].clone(), edge_map })
    }
}

/// Result of deleting a vertex: the smaller graph plus the edge-id map.
#[derive(Debug, Clone)]
pub struct VertexDeletion {
    pub graph: Graph,
    pub removed: String,
    /// `edge_map[old.index()]` is the new id of `old`, or `None` if it was incident to the removed vertex.
    pub edge_map: Vec<Option<EdgeId>>,
}

/// `K - v`: the decompletion of `k` at the vertex labelled `v`.
pub fn decompletion(k: &Graph, v: &str) -> Result<VertexDeletion> {
    let idx = k.vertex(v)?;
    k.delete_vertex(idx)
}

/// A partition of a subset of the vertices. Parts are sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn from_indices(g: &Graph, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; g.vertex_count()];
        let mut normalized = Vec::with_capacity(parts.len());
        for mut part in parts {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            part.sort_unstable();
            for &v in &part {
                if v >= g.vertex_count() {
                    return Err(Error::InvalidPartition(format!("vertex #{v} does not exist")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex `{}` appears twice", g.label(v))));
                }
            }
            normalized.push(part);
        }
        Ok(VertexPartition { parts: normalized })
    }

    pub fn from_labels(g: &Graph, parts: &[&[&str]]) -> Result<Self> {
        let parts = parts
            .iter()
            .map(|p| p.iter().map(|l| g.vertex(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(g, parts)
    }

    /// The single part containing every vertex.
    pub fn whole(g: &Graph) -> Self {
        VertexPartition { parts: vec![(0..g.vertex_count()).collect()] }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Per-vertex part index, `None` for vertices not mentioned.
    pub fn tags(&self, vertex_count: usize) -> Vec<Option<usize>> {
        let mut tags = vec![None; vertex_count];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                tags[v] = Some(i);
            }
        }
        tags
    }
}

/// A degree-3 vertex `v` with incident edges `edges[0..3]` (increasing id)
/// whose far endpoints are `ends[0..3]` (the `a, b, c` of the edge order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreeValentCorner {
    pub vertex: usize,
    pub edges: [EdgeId; 3],
    pub ends: [usize; 3],
}

impl ThreeValentCorner {
    pub fn at(g: &Graph, v: usize) -> Result<Self> {
        let inc = g.incident_edges(v);
        if inc.len() != 3 {
            return Err(Error::Precondition(format!("vertex `{}` has degree {}, not 3", g.label(v), inc.len())));
        }
        let edges = [inc[0], inc[1], inc[2]];
        let ends = edges.map(|e| g.other_endpoint(e, v));
        Ok(ThreeValentCorner { vertex: v, edges, ends })
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::from_ids(self.edges.iter().map(|e| e.0))
    }
}

/// All 3-valent corners, ordered by vertex label.
pub fn three_valent_corners(g: &Graph) -> Vec<ThreeValentCorner> {
    let deg = g.degrees();
    let mut vs: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] == 3).collect();
    vs.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    vs.into_iter().map(|v| ThreeValentCorner::at(g, v).expect("degree checked")).collect()
}

/// The corner at the smallest-labelled degree-3 vertex.
pub fn find_three_valent(g: &Graph) -> Result<ThreeValentCorner> {
    three_valent_corners(g).into_iter().next().ok_or(Error::NoThreeValentVertex)
}
