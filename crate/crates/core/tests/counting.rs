mod common;

use c2_core::counting::{
    c2_via_definition, c2_via_dodgson, c2_via_dodgson_at, check_3valent_identity, check_3valent_identity_at,
    point_count, Limits, Method,
};
use c2_core::gf::{Field, FieldElement};
use c2_core::graph::{three_valent_corners, Graph};
use c2_core::poly::psi_eval;
use c2_core::Error;
use common::{brute_zero_count, catalog_graph, small_fields, test_limits};
use serde::Deserialize;

#[derive(Deserialize)]
struct Golden {
    graph: String,
    method: Method,
    q: u64,
    count: u64,
}

fn golden() -> Vec<Golden> {
    serde_json::from_str(include_str!("golden/c2_counts.json")).unwrap()
}

fn field(q: u64) -> Field {
    Field::from_prime_power(c2_core::gf::PrimePower::from_order(q).unwrap())
}

/// Spanning trees as edge index lists: every `(V-1)`-subset without a cycle.
fn trees_by_union_find(g: &Graph) -> Vec<Vec<usize>> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let edges = g.edge_list();
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                v = parent[v];
            }
            v
        }
        let mut acyclic = true;
        for e in (0..m).filter(|e| mask >> e & 1 == 1) {
            let (a, b) = (root(&mut parent, edges[e].0), root(&mut parent, edges[e].1));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        if acyclic {
            out.push((0..m).filter(|e| mask >> e & 1 == 1).collect());
        }
    }
    out
}

/// `Σ_T Π_{e ∉ T} x_e`, evaluated term by term.
fn tree_sum(field: &Field, g: &Graph, trees: &[Vec<usize>], pt: &[FieldElement]) -> FieldElement {
    let mut total = field.zero();
    for t in trees {
        let mut term = field.one();
        for (e, &x) in pt.iter().enumerate() {
            if !t.contains(&e) {
                term = field.mul(term, x);
            }
        }
        total = field.add(total, term);
    }
    debug_assert_eq!(pt.len(), g.edge_count());
    total
}

#[test]
fn golden_counts_reproduce() {
    let limits = test_limits();
    for row in golden() {
        let g = catalog_graph(&row.graph);
        let f = field(row.q);
        let r = match row.method {
            Method::Definition => c2_via_definition(&g, &f, &limits),
            Method::Dodgson => c2_via_dodgson(&g, &f, &limits),
            other => panic!("no golden rows for {other}"),
        }
        .unwrap();
        assert_eq!(r.count, Some(row.count), "{} {} q={}", row.graph, row.method, row.q);
        // These are zigzag graphs: c2 = -1 at every q checked.
        assert_eq!((r.residue, r.modulus), (row.q - 1, row.q), "{} {} q={}", row.graph, row.method, row.q);
    }
}

#[test]
fn definition_counts_are_divisible_by_q_squared() {
    for row in golden().iter().filter(|r| r.method == Method::Definition) {
        assert_eq!(row.count % (row.q * row.q), 0, "{} q={}", row.graph, row.q);
    }
}

#[test]
fn definition_matches_tree_sum_oracle() {
    let g = catalog_graph("k4");
    let trees = trees_by_union_find(&g);
    assert_eq!(trees.len(), 16);
    for f in small_fields() {
        let oracle = brute_zero_count(&f, g.edge_count(), |pt| tree_sum(&f, &g, &trees, pt));
        let r = c2_via_definition(&g, &f, &test_limits()).unwrap();
        assert_eq!(r.count, Some(oracle), "q={}", f.q());
        // Determinant and tree sum agree pointwise as well.
        let pt: Vec<FieldElement> = (0..6).map(|i| f.from_int(i * 3 + 1)).collect();
        assert_eq!(psi_eval(&g, &pt, &f).unwrap(), tree_sum(&f, &g, &trees, &pt));
    }
}

#[test]
fn definition_and_dodgson_agree() {
    let limits = test_limits();
    let cases: [(&str, &[u64]); 3] = [("k4", &[2, 3, 4, 5, 7, 8, 9]), ("oct", &[2, 3, 4, 5]), ("c7", &[2, 3, 4])];
    for (name, qs) in cases {
        let g = catalog_graph(name);
        for &q in qs {
            let f = field(q);
            let a = c2_via_definition(&g, &f, &limits).unwrap();
            let b = c2_via_dodgson(&g, &f, &limits).unwrap();
            assert_eq!((a.residue, a.modulus), (b.residue, b.modulus), "{name} q={q}");
        }
    }
}

#[test]
fn every_corner_gives_the_same_c2() {
    let g = catalog_graph("oct");
    let corners = three_valent_corners(&g);
    assert_eq!(corners.len(), 4);
    for q in [2, 3, 4] {
        let f = field(q);
        let residues: Vec<u64> =
            corners.iter().map(|c| c2_via_dodgson_at(&g, c, &f, &test_limits()).unwrap().residue).collect();
        assert!(residues.iter().all(|&r| r == residues[0]), "q={q}: {residues:?}");
        for c in &corners {
            assert!(check_3valent_identity_at(&g, c, &f, &test_limits()).unwrap().holds());
        }
    }
}

#[test]
fn corner_identity_on_catalog() {
    let cases: [(&str, &[u64]); 3] = [("k4", &[2, 3, 4, 5, 7, 8, 9]), ("oct", &[2, 3, 4, 5]), ("c7", &[2, 3])];
    for (name, qs) in cases {
        let g = catalog_graph(name);
        for &q in qs {
            let c = check_3valent_identity(&g, &field(q), &test_limits()).unwrap();
            assert!(c.holds(), "{name} q={q}: {} vs {}", c.lhs.zeros, c.rhs.zeros);
        }
    }
}

#[test]
fn worker_count_does_not_change_counts() {
    let g = catalog_graph("oct");
    let f = field(3);
    let serial = c2_via_definition(&g, &f, &test_limits().serial()).unwrap();
    for workers in [2, 3, 8] {
        let par = c2_via_definition(&g, &f, &Limits { workers, ..test_limits() }).unwrap();
        assert_eq!(par.count, serial.count);
    }
}

#[test]
fn budget_is_enforced_before_counting() {
    let g = catalog_graph("c7");
    let err = c2_via_definition(&g, &field(9), &Limits::default()).unwrap_err();
    assert!(matches!(err, Error::Budget { what: "evaluation", required: 3_486_784_401, budget: 1_000_000_000 }));
    let tiny = Limits { budget_evaluations: 63, ..test_limits() };
    assert!(matches!(c2_via_dodgson(&catalog_graph("k4"), &field(4), &tiny), Err(Error::Budget { .. })));
    assert!(c2_via_dodgson(&catalog_graph("k4"), &field(4), &Limits { budget_evaluations: 64, ..tiny }).is_ok());
}

#[test]
fn hypotheses_are_checked() {
    let k5 = c2_core::catalog::Catalog::load().unwrap().graph("k5").unwrap().clone();
    assert!(matches!(c2_via_dodgson(&k5, &field(2), &test_limits()), Err(Error::TooManyEdges { .. })));
    let square = Graph::from_labeled_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
    assert!(matches!(c2_via_dodgson(&square, &field(2), &test_limits()), Err(Error::NoThreeValentVertex)));
    let split = Graph::from_labeled_edges(&[("a", "b"), ("b", "c"), ("a", "c"), ("d", "e")]).unwrap();
    assert!(matches!(c2_via_definition(&split, &field(2), &test_limits()), Err(Error::Disconnected)));
}

#[test]
fn point_count_of_linear_form() {
    // x1 + x2 + x3 vanishes on q^2 points.
    for f in small_fields() {
        let c =
            point_count("x1+x2+x3", 3, &f, &test_limits(), |pt, _: &mut ()| f.add(f.add(pt[0], pt[1]), pt[2])).unwrap();
        assert_eq!(c.zeros, f.q() * f.q());
    }
}
