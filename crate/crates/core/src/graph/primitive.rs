use super::Graph;
use crate::error::{Error, Result};

/// Vertex-count ceiling for the exhaustive cut check (2^|V| bipartitions).
pub const MAX_CUT_VERTICES: usize = 20;

/// Outcome of the primitive-divergence test, with the reconstructed
/// completion as witness when one exists.
#[derive(Debug, Clone)]
pub struct Primitivity {
    pub primitive: bool,
    pub completion: Option<Graph>,
    /// Smallest cut separating two sides of at least two vertices each.
    pub min_internal_cut: Option<usize>,
    pub reason: String,
}

/// Rebuilds the 4-regular completion by joining a new apex to every vertex
/// of degree below 4, `4 - deg` times. Returns `None` when that would need a
/// multi-edge, a vertex already exceeds degree 4, or the apex would not
/// itself have degree 4.
pub fn reconstruct_completion(g: &Graph) -> Option<Graph> {
    let deg = g.degrees();
    if deg.iter().any(|&d| !(3..=4).contains(&d)) {
        return None;
    }
    let deficient: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] == 3).collect();
    if deficient.len() != 4 {
        return None;
    }
    let mut apex = String::from("apex");
    while g.labels().contains(&apex) {
        apex.push('\'');
    }
    let mut labels = g.labels().to_vec();
    labels.push(apex);
    let a = labels.len() - 1;
    let mut edges = g.edge_list().to_vec();
    edges.extend(deficient.into_iter().map(|v| (v, a)));
    Graph::new(labels, edges).ok().map(|k| k.with_name(format!("{}+apex", g.name())))
}

/// Minimum edge cut over bipartitions `(S, V \ S)` with `|S| >= 2` and
/// `|V \ S| >= 2`, by exhaustive enumeration. `None` if no such bipartition
/// exists (fewer than four vertices).
pub fn min_internal_cut(k: &Graph) -> Result<Option<usize>> {
    let n = k.vertex_count();
    if n > MAX_CUT_VERTICES {
        return Err(Error::Precondition(format!(
            "cut enumeration limited to {MAX_CUT_VERTICES} vertices, graph has {n}"
        )));
    }
    if n < 4 {
        return Ok(None);
    }
    let mut best: Option<usize> = None;
    // Fix vertex n-1 outside S so each bipartition is visited once.
    for s in 1u32..(1 << (n - 1)) {
        let size = s.count_ones() as usize;
        if size < 2 || n - size < 2 {
            continue;
        }
        let cut = k.edge_list().iter().filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1)).count();
        best = Some(best.map_or(cut, |b| b.min(cut)));
    }
    Ok(best)
}

/// Whether `g` is a decompletion of a simple, 4-regular, internally
/// 6-edge-connected graph. Cost is exponential in `|V(g)|`.
pub fn is_primitive_divergent(g: &Graph) -> Result<Primitivity> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let Some(k) = reconstruct_completion(g) else {
        return Ok(Primitivity {
            primitive: false,
            completion: None,
            min_internal_cut: None,
            reason: "no simple 4-regular completion".into(),
        });
    };
    debug_assert!(k.is_regular(4));
    let cut = min_internal_cut(&k)?;
    let primitive = cut.is_none_or(|c| c >= 6);
    let reason = match cut {
        Some(c) if c < 6 => format!("completion has a nontrivial cut of size {c}"),
        _ => "completion is internally 6-edge-connected".into(),
    };
    Ok(Primitivity { primitive, completion: Some(k), min_internal_cut: cut, reason })
}
