//! Coefficient extraction modulo `p`: the coefficient form of point counts,
//! the coefficient and partition routes to c2, and the prime-power reduction
//! of `[(x_1⋯x_N)^{q-1}](PQ)^{q-1}`.

mod capped;
mod digits;
mod intpoly;
mod partition;
pub mod random;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::counting::{point_count, three_valent_hypotheses, Limits, Method, ResidueReport};
use crate::error::{Error, Result};
use crate::gf::{Field, PrimePower};
use crate::graph::Graph;
use crate::poly::{corner_reduction, MultilinearPoly};

pub use capped::{capped_coeff, CappedPolynomial, MAX_FACTORS};
pub use digits::{adds_without_carry, base_p_digits, lucas_binom, BinomResidue, DigitVector};
pub use intpoly::IntPoly;
pub use partition::{count_edge_partitions, count_tree_forest_partitions, PartitionCount};

fn signed_mod(sign_negative: bool, value: u64, m: u64) -> u64 {
    let v = value % m;
    if sign_negative {
        (m - v) % m
    } else {
        v
    }
}

/// `(-1)^(n+1)` is negative exactly when `n` is even.
fn chevalley_sign_negative(n: usize) -> bool {
    n.is_multiple_of(2)
}

/// Both sides of `[(x_1⋯x_n)^{q-1}] F^{q-1} ≡ (-1)^{n+1} [F]_q (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChevalleyCheck {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    /// Coefficient mod `p`.
    pub coefficient: u64,
    /// Exact `[F]_q`.
    pub zeros: u64,
    /// `(-1)^{n+1} [F]_q mod p`.
    pub expected: u64,
}

impl ChevalleyCheck {
    pub fn holds(&self) -> bool {
        self.coefficient == self.expected
    }
}

/// Requires `deg F = n = num_vars`.
pub fn chevalley_coeff_check(f: &MultilinearPoly, order: PrimePower, limits: &Limits) -> Result<ChevalleyCheck> {
    let n = f.num_vars();
    if f.degree() != Some(n) {
        return Err(Error::Precondition(format!(
            "coefficient identity needs deg F = n; got deg {} with n = {n}",
            f.degree().map_or("-inf".to_string(), |d| d.to_string())
        )));
    }
    let (p, q) = (order.p(), order.q());
    let e = (q - 1) as u32;
    let coefficient = capped_coeff(&[(f, e)], &vec![e; n], p, limits)?;
    let field = Field::from_prime_power(order);
    let zeros = point_count(f.to_string(), n, &field, limits, |pt, _: &mut ()| f.eval(&field, pt))?.zeros;
    let expected = signed_mod(chevalley_sign_negative(n), zeros, p);
    Ok(ChevalleyCheck { n, q, p, coefficient, zeros, expected })
}

/// The integer example showing the coefficient identity is only valid mod
/// `p`: `F = 2x` over `GF(9)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModQFailure {
    pub zeros: u64,
    pub coefficient: u64,
    pub coefficient_mod_p: u64,
    pub coefficient_mod_q: u64,
}

pub fn two_x_over_gf9(limits: &Limits) -> Result<ModQFailure> {
    let field = Field::new(3, 2)?;
    let two = field.from_int(2);
    let zeros = point_count("2x", 1, &field, limits, |pt, _: &mut ()| field.mul(two, pt[0]))?.zeros;
    let f = IntPoly::from_terms(1, &[(vec![1], 2)]);
    let coefficient = f.pow(8).coeff(&[8]).to_u64().expect("small");
    Ok(ModQFailure { zeros, coefficient, coefficient_mod_p: coefficient % 3, coefficient_mod_q: coefficient % 9 })
}

fn corner_factors(g: &Graph) -> Result<(Graph, MultilinearPoly, MultilinearPoly)> {
    let corner = three_valent_hypotheses(g)?;
    let red = corner_reduction(g, corner)?;
    let n = red.h.edge_count();
    let degree = red.psi_h.degree().unwrap_or(0) + red.phi_h.degree().unwrap_or(0);
    if red.psi_h.is_zero() || red.phi_h.is_zero() || degree != n {
        return Err(Error::Precondition(format!(
            "coefficient route needs deg(Psi_H Phi_H) = |E(H)| = {n}, got {degree}"
        )));
    }
    Ok((red.h, red.psi_h, red.phi_h))
}

/// `c2^(q) ≡ -(-1)^{n+1} [(α_4⋯α_N)^{q-1}](Ψ_H Φ^{b,ac}_H)^{q-1} (mod p)` with
/// `H = G - v` and `n = N - 3`. The report's modulus is `p`.
pub fn c2_via_coefficient(g: &Graph, order: PrimePower, limits: &Limits) -> Result<ResidueReport> {
    let started = Instant::now();
    let (h, psi, phi) = corner_factors(g)?;
    let n = h.edge_count();
    let e = (order.q() - 1) as u32;
    let coefficient = capped_coeff(&[(&psi, e), (&phi, e)], &vec![e; n], order.p(), limits)?;
    let residue = signed_mod(!chevalley_sign_negative(n), coefficient, order.p());
    Ok(ResidueReport::new(g, order, Method::Coefficient, None, residue, order.p(), started))
}

/// Same residue as [`c2_via_coefficient`], from the exact number of edge
/// partitions instead of a coefficient. Limited to `q <= 3`.
pub fn c2_via_partition(g: &Graph, order: PrimePower, limits: &Limits) -> Result<ResidueReport> {
    let started = Instant::now();
    let (h, _, _) = corner_factors(g)?;
    let count = count_edge_partitions(g, order, limits)?;
    let residue = signed_mod(!chevalley_sign_negative(h.edge_count()), count.count, order.p());
    Ok(ResidueReport::new(g, order, Method::Partition, Some(count.count), residue, order.p(), started))
}

/// `[(x_1⋯x_N)^{q-1}](PQ)^{q-1} mod p` and `([(x_1⋯x_N)^{p-1}](PQ)^{p-1})^s mod p`.
pub fn prop_both_sides(
    p_poly: &MultilinearPoly,
    q_poly: &MultilinearPoly,
    order: PrimePower,
    limits: &Limits,
) -> Result<(u64, u64)> {
    let n = p_poly.num_vars();
    if q_poly.num_vars() != n {
        return Err(Error::Dimension(format!("P has {n} variables, Q has {}", q_poly.num_vars())));
    }
    let p = order.p();
    let side = |e: u32| capped_coeff(&[(p_poly, e), (q_poly, e)], &vec![e; n], p, limits);
    let lhs = side((order.q() - 1) as u32)?;
    let base = side((p - 1) as u32)?;
    Ok((lhs, digits::pow_mod(base, order.s() as u64, p)))
}

/// The non-multilinear example `F = (1 + x^8)(1 + y^8)` at `p = 3, q = 9`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonMultilinearReport {
    /// `[x^8 y^8] F^8`, exact.
    pub lhs: u64,
    /// `([x^2 y^2] F^2)^2`, exact.
    pub rhs: u64,
    pub lhs_mod_p: u64,
    pub rhs_mod_p: u64,
    /// Why the polynomial falls outside the multilinear hypothesis.
    pub hypothesis_violation: Option<String>,
}

pub fn multilinear_hypothesis_violation(f: &IntPoly) -> Option<String> {
    if f.is_multilinear_01() {
        return None;
    }
    let (exps, c) =
        f.terms().find(|(e, c)| e.iter().any(|&x| x > 1) || **c != BigInt::from(1)).expect("some term violates");
    Some(format!("term with exponents {exps:?} and coefficient {c} is not linear with coefficient 1"))
}

pub fn prop_counterexample_nonmultilinear() -> NonMultilinearReport {
    let f = IntPoly::from_terms(2, &[(vec![0, 0], 1), (vec![8, 0], 1), (vec![0, 8], 1), (vec![8, 8], 1)]);
    let lhs = f.pow(8).coeff(&[8, 8]).to_u64().expect("small");
    let inner = f.pow(2).coeff(&[2, 2]).to_u64().expect("small");
    let rhs = inner * inner;
    NonMultilinearReport {
        lhs,
        rhs,
        lhs_mod_p: lhs % 3,
        rhs_mod_p: rhs % 3,
        hypothesis_violation: multilinear_hypothesis_violation(&f),
    }
}
