use super::enumerate::forests_of_size;
use super::{EdgeId, EdgeSet, Graph};
use crate::error::{Error, Result};

/// A deletion/contraction minor. Contraction can create parallel edges and
/// loops, so this is a multigraph; it exists only as an intermediate for
/// spanning-tree questions and never feeds a public entry point that
/// requires a simple graph.
#[derive(Debug, Clone)]
pub struct Minor {
    pub vertex_count: usize,
    /// `vertex_map[v]` is the minor vertex that original vertex `v` became.
    pub vertex_map: Vec<usize>,
    /// Surviving edges as endpoint pairs; loops allowed.
    pub edges: Vec<(usize, usize)>,
    /// Original id of each surviving edge, parallel to `edges`.
    pub edge_ids: Vec<EdgeId>,
}

impl Minor {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
    }

    /// Isolated vertices (degree zero) of the minor.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        (0..self.vertex_count).filter(|&v| deg[v] == 0).collect()
    }

    /// Spanning trees, reported with original edge ids.
    pub fn spanning_trees(&self) -> Vec<EdgeSet> {
        if self.vertex_count == 0 {
            return Vec::new();
        }
        forests_of_size(self.vertex_count, &self.edges, self.vertex_count - 1, None)
            .into_iter()
            .map(|local| EdgeSet::from_ids(local.iter().map(|e| self.edge_ids[e.index()].0)))
            .collect()
    }
}

/// `G \ delete / contract`. Vertices left isolated by deletion are kept.
pub fn minor(g: &Graph, delete: EdgeSet, contract: EdgeSet) -> Result<Minor> {
    if !delete.intersection(contract).is_empty() {
        return Err(Error::OverlappingEdgeSets(format!(
            "edges {:?} both deleted and contracted",
            delete.intersection(contract).ids()
        )));
    }
    let all = g.all_edges();
    if delete.union(contract).0 & !all.0 != 0 {
        return Err(Error::Precondition("edge set references a missing edge".into()));
    }

    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in contract.iter() {
        let (a, b) = g.endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::ContractedCycle(e.0));
        }
        // Keep the smaller original index as representative.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }

    let mut new_index = vec![usize::MAX; n];
    let mut vertex_count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if new_index[r] == usize::MAX {
            new_index[r] = vertex_count;
            vertex_count += 1;
        }
    }
    let vertex_map: Vec<usize> = (0..n).map(|v| new_index[find(&mut parent, v)]).collect();

    let mut edges = Vec::new();
    let mut edge_ids = Vec::new();
    for (e, a, b) in g.edges() {
        if delete.contains(e) || contract.contains(e) {
            continue;
        }
        edges.push((vertex_map[a], vertex_map[b]));
        edge_ids.push(e);
    }
    Ok(Minor { vertex_count, vertex_map, edges, edge_ids })
}
