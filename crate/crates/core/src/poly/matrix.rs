use crate::error::{Error, Result};
use crate::gf::{det_in_place, Field, FieldElement};
use crate::graph::{EdgeId, EdgeSet, Graph, ThreeValentCorner};

/// Orientation and removed-row choice for the signed incidence matrix.
///
/// Ψ does not depend on either choice. Dodgson polynomials change at most by
/// a global sign, so their zero counts do not depend on them either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSystem {
    /// `(tail, head)` per edge, in edge-id order.
    pub orientation: Vec<(usize, usize)>,
    /// The vertex whose row of the full incidence matrix is dropped.
    pub removed_row: usize,
    /// Remaining vertex rows, in order.
    pub rows: Vec<usize>,
}

impl IncidenceSystem {
    /// Entry of the reduced incidence matrix at (row `r`, edge `e`).
    pub fn entry(&self, r: usize, e: EdgeId) -> i64 {
        let v = self.rows[r];
        let (tail, head) = self.orientation[e.index()];
        if v == tail {
            1
        } else if v == head {
            -1
        } else {
            0
        }
    }
}

/// Default conventions: each edge points from its smaller-labelled endpoint
/// to its larger-labelled one, and the largest-labelled vertex's row is
/// dropped.
pub fn build_incidence(g: &Graph) -> IncidenceSystem {
    let largest = (0..g.vertex_count()).max_by(|&a, &b| g.label(a).cmp(g.label(b))).unwrap();
    build_incidence_with(g, EdgeSet::EMPTY, largest).expect("largest vertex exists")
}

/// Incidence with the default orientation reversed on `flipped` edges and
/// `removed_row` dropped.
pub fn build_incidence_with(g: &Graph, flipped: EdgeSet, removed_row: usize) -> Result<IncidenceSystem> {
    if removed_row >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{removed_row}")));
    }
    let orientation = g
        .edges()
        .map(|(e, u, v)| {
            let (lo, hi) = if g.label(u) < g.label(v) { (u, v) } else { (v, u) };
            if flipped.contains(e) {
                (hi, lo)
            } else {
                (lo, hi)
            }
        })
        .collect();
    let rows = (0..g.vertex_count()).filter(|&v| v != removed_row).collect();
    Ok(IncidenceSystem { orientation, removed_row, rows })
}

/// `M(I, J)` with `α_e = 0` for `e ∈ K`, laid out once so that evaluating at
/// a point only writes the diagonal variable slots and runs elimination.
///
/// Rows and columns `0..N` of `M` belong to edges, `N..N+|V|-1` to the
/// retained vertex rows.
#[derive(Debug, Clone)]
pub struct DodgsonMatrix {
    size: usize,
    base: Vec<FieldElement>,
    slots: Vec<(usize, EdgeId)>,
    edge_count: usize,
}

impl DodgsonMatrix {
    pub fn new(
        g: &Graph,
        inc: &IncidenceSystem,
        rows_removed: EdgeSet,
        cols_removed: EdgeSet,
        zeroed: EdgeSet,
        field: &Field,
    ) -> Result<Self> {
        if rows_removed.len() != cols_removed.len() {
            return Err(Error::Dimension(format!("|I| = {} but |J| = {}", rows_removed.len(), cols_removed.len())));
        }
        let all = g.all_edges();
        for s in [rows_removed, cols_removed, zeroed] {
            if s.0 & !all.0 != 0 {
                return Err(Error::Precondition("edge set references a missing edge".into()));
            }
        }
        let n_edges = g.edge_count();
        let full = n_edges + inc.rows.len();
        let keep = |removed: EdgeSet| -> Vec<usize> {
            (0..full).filter(|&i| i >= n_edges || !removed.contains(EdgeId::from_index(i))).collect()
        };
        let keep_rows = keep(rows_removed);
        let keep_cols = keep(cols_removed);
        let size = keep_rows.len();

        let mut base = vec![FieldElement::ZERO; size * size];
        let mut slots = Vec::new();
        for (i, &r) in keep_rows.iter().enumerate() {
            for (j, &c) in keep_cols.iter().enumerate() {
                let pos = i * size + j;
                match (r < n_edges, c < n_edges) {
                    (true, true) => {
                        let e = EdgeId::from_index(r);
                        if r == c && !zeroed.contains(e) {
                            slots.push((pos, e));
                        }
                    }
                    // Eᵀ block: row edge r, column vertex-row c - N.
                    (true, false) => {
                        base[pos] = field.from_int(inc.entry(c - n_edges, EdgeId::from_index(r)));
                    }
                    // -E block.
                    (false, true) => {
                        base[pos] = field.from_int(-inc.entry(r - n_edges, EdgeId::from_index(c)));
                    }
                    (false, false) => {}
                }
            }
        }
        Ok(DodgsonMatrix { size, base, slots, edge_count: n_edges })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Edges whose variable actually appears in the matrix.
    pub fn variables(&self) -> EdgeSet {
        let mut s = EdgeSet::EMPTY;
        for &(_, e) in &self.slots {
            s.insert(e);
        }
        s
    }

    /// Determinant at `point` (indexed by edge id - 1), reusing `scratch`.
    pub fn eval_with(&self, field: &Field, point: &[FieldElement], scratch: &mut Vec<FieldElement>) -> FieldElement {
        debug_assert_eq!(point.len(), self.edge_count);
        scratch.clear();
        scratch.extend_from_slice(&self.base);
        for &(pos, e) in &self.slots {
            scratch[pos] = point[e.index()];
        }
        det_in_place(field, self.size, scratch)
    }

    pub fn eval(&self, field: &Field, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.edge_count {
            return Err(Error::Dimension(format!(
                "point assigns {} edges, graph has {}",
                point.len(),
                self.edge_count
            )));
        }
        Ok(self.eval_with(field, point, &mut Vec::new()))
    }
}

/// Ψ_G(point) as `det M(point)` under the default conventions.
pub fn psi_eval(g: &Graph, point: &[FieldElement], field: &Field) -> Result<FieldElement> {
    let inc = build_incidence(g);
    DodgsonMatrix::new(g, &inc, EdgeSet::EMPTY, EdgeSet::EMPTY, EdgeSet::EMPTY, field)?.eval(field, point)
}

/// Ψ^{I,J}_{G,K}(point) under the default conventions, up to a global sign.
pub fn dodgson_eval(
    g: &Graph,
    i: EdgeSet,
    j: EdgeSet,
    k: EdgeSet,
    point: &[FieldElement],
    field: &Field,
) -> Result<FieldElement> {
    let inc = build_incidence(g);
    DodgsonMatrix::new(g, &inc, i, j, k, field)?.eval(field, point)
}

/// The two Dodgson matrices used at a 3-valent corner with edges `1, 2, 3`:
/// `Ψ^{12,23}` and `Ψ^{1,3}_2`.
#[derive(Debug, Clone)]
pub struct CornerDodgsons {
    pub psi_12_23: DodgsonMatrix,
    pub psi_1_3_2: DodgsonMatrix,
}

impl CornerDodgsons {
    pub fn new(g: &Graph, inc: &IncidenceSystem, corner: &ThreeValentCorner, field: &Field) -> Result<Self> {
        let [e1, e2, e3] = corner.edges.map(|e| EdgeSet::from_ids([e.0]));
        let psi_12_23 = DodgsonMatrix::new(g, inc, e1.union(e2), e2.union(e3), EdgeSet::EMPTY, field)?;
        let psi_1_3_2 = DodgsonMatrix::new(g, inc, e1, e3, e2, field)?;
        let corner_edges = corner.edge_set();
        for m in [&psi_12_23, &psi_1_3_2] {
            if !m.variables().intersection(corner_edges).is_empty() {
                return Err(Error::Invariant("corner variable survives in a corner Dodgson matrix".into()));
            }
        }
        Ok(CornerDodgsons { psi_12_23, psi_1_3_2 })
    }
}
