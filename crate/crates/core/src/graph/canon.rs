use super::Graph;
use crate::error::{Error, Result};

const MAX_CANON_VERTICES: usize = 10;

/// Isomorphism-invariant form of a small graph: the lexicographically
/// smallest sorted edge list over all relabelings that list vertices by
/// non-increasing degree. Only intended for catalog-sized graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub edges: Vec<(u8, u8)>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(Error::Precondition(format!("canonical form limited to {MAX_CANON_VERTICES} vertices")));
    }
    let deg = g.degrees();
    // Degree classes occupy consecutive new labels, highest degree first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]));
    let slot_degree: Vec<usize> = order.iter().map(|&v| deg[v]).collect();

    let mut best: Option<Vec<(u8, u8)>> = None;
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(g, &deg, &slot_degree, 0, &mut assign, &mut used, &mut best);
    Ok(CanonicalForm { vertex_count: n, edges: best.unwrap_or_default() })
}

fn search(
    g: &Graph,
    deg: &[usize],
    slot_degree: &[usize],
    slot: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Option<Vec<(u8, u8)>>,
) {
    let n = deg.len();
    if slot == n {
        let mut edges: Vec<(u8, u8)> = g
            .edge_list()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (assign[u] as u8, assign[v] as u8);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    }
    for v in 0..n {
        if used[v] || deg[v] != slot_degree[slot] {
            continue;
        }
        used[v] = true;
        assign[v] = slot;
        search(g, deg, slot_degree, slot + 1, assign, used, best);
        used[v] = false;
    }
}
