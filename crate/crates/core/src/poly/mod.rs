//! Kirchhoff and spanning-forest polynomials (symbolic), and the matrix
//! `M = [[A, Eᵀ], [-E, 0]]` whose determinant and minors give Ψ and the
//! Dodgson polynomials pointwise over a finite field.

mod matrix;
mod multilinear;

use crate::error::Result;
use crate::graph::{compatible_forests, spanning_trees, Graph, ThreeValentCorner, VertexPartition};

pub use matrix::{
    build_incidence, build_incidence_with, dodgson_eval, psi_eval, CornerDodgsons, DodgsonMatrix, IncidenceSystem,
};
pub use multilinear::{Monomial, MultilinearPoly};

fn complements(g: &Graph, sets: Vec<crate::graph::EdgeSet>) -> MultilinearPoly {
    let n = g.edge_count();
    let monomials = sets.into_iter().map(|s| Monomial(s.complement(n).0)).collect();
    MultilinearPoly::new(n, monomials).expect("distinct edge sets give distinct complements")
}

/// Ψ_G: one monomial per spanning tree, the product of edge variables not in
/// the tree. A disconnected graph has no spanning trees and yields the zero
/// polynomial, which never happens for a connected graph.
pub fn kirchhoff(g: &Graph) -> MultilinearPoly {
    complements(g, spanning_trees(g))
}

/// Φ^P_G: one monomial per spanning forest compatible with `p`.
pub fn forest_poly(g: &Graph, p: &VertexPartition) -> MultilinearPoly {
    complements(g, compatible_forests(g, p))
}

/// The symbolic side of the 3-valent-vertex identities: with `H = G - v`,
/// `Ψ^{12,23}_G = ±Ψ_H` and `Ψ^{1,3}_{G,2} = ±Φ^{b,ac}_H`.
#[derive(Debug, Clone)]
pub struct CornerReduction {
    pub corner: ThreeValentCorner,
    pub h: Graph,
    /// `h_edge_of[e.index()]` is the id in `h` of the `G`-edge `e`, if it survives.
    pub h_edge_of: Vec<Option<crate::graph::EdgeId>>,
    pub psi_h: MultilinearPoly,
    pub phi_h: MultilinearPoly,
}

pub fn corner_reduction(g: &Graph, corner: ThreeValentCorner) -> Result<CornerReduction> {
    let deletion = g.delete_vertex(corner.vertex)?;
    let h = deletion.graph;
    let [a, b, c] = corner.ends.map(|v| g.label(v).to_string());
    let partition = VertexPartition::from_labels(&h, &[&[b.as_str()], &[a.as_str(), c.as_str()]])?;
    let psi_h = kirchhoff(&h);
    let phi_h = forest_poly(&h, &partition);
    Ok(CornerReduction { corner, h, h_edge_of: deletion.edge_map, psi_h, phi_h })
}
