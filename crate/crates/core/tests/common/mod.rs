//! Oracles shared by the integration tests. None of them go through the
//! library's determinant or forest enumeration code.
#![allow(dead_code)]

use c2_core::catalog::Catalog;
use c2_core::counting::Limits;
use c2_core::gf::{Field, FieldElement};
use c2_core::graph::Graph;

pub fn catalog_graph(name: &str) -> Graph {
    Catalog::load().unwrap().get(name).unwrap().decompletion.clone()
}

pub fn test_limits() -> Limits {
    Limits { budget_evaluations: 20_000_000, budget_states: 2_000_000, workers: 2 }
}

/// Number of spanning trees as the determinant of a reduced Laplacian,
/// by fraction-free (Bareiss) elimination over the integers.
pub fn laplacian_tree_count(g: &Graph) -> i128 {
    let n = g.vertex_count();
    if n == 1 {
        return 1;
    }
    let mut l = vec![vec![0i128; n]; n];
    for &(u, v) in g.edge_list() {
        l[u][u] += 1;
        l[v][v] += 1;
        l[u][v] -= 1;
        l[v][u] -= 1;
    }
    let m = n - 1;
    let mut a: Vec<Vec<i128>> = l.into_iter().take(m).map(|r| r.into_iter().take(m).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

/// Zeros of `f` over `F_q^n` by plain nested enumeration.
pub fn brute_zero_count(field: &Field, n: usize, f: impl Fn(&[FieldElement]) -> FieldElement) -> u64 {
    let elems: Vec<FieldElement> = field.elements().collect();
    let q = elems.len();
    let total = q.pow(n as u32);
    let mut zeros = 0;
    let mut pt = vec![elems[0]; n];
    for mut idx in 0..total {
        for slot in pt.iter_mut() {
            *slot = elems[idx % q];
            idx /= q;
        }
        if f(&pt).is_zero() {
            zeros += 1;
        }
    }
    zeros
}

/// All fields used by the cross-field checks.
pub fn small_fields() -> Vec<Field> {
    [(2, 1), (3, 1), (2, 2), (5, 1)].into_iter().map(|(p, s)| Field::new(p, s).unwrap()).collect()
}
