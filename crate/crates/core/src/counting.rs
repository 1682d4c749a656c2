//! Exhaustive point counting over `F_q^n` and the two point-counting routes
//! to the c2 invariant.
//!
//! Counting splits the `q^n` points into contiguous index ranges handled by
//! independent workers; the total is an integer sum, so the result does not
//! depend on the number of workers.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, PrimePower};
use crate::graph::{find_three_valent, EdgeSet, Graph, ThreeValentCorner};
use crate::poly::{build_incidence, corner_reduction, CornerDodgsons, DodgsonMatrix};

pub const DEFAULT_BUDGET_EVALUATIONS: u64 = 1_000_000_000;
pub const DEFAULT_BUDGET_STATES: u64 = 20_000_000;

/// Resource limits shared by every exact computation. Exceeding a limit is
/// an error, never a reason to sample or truncate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of polynomial evaluations a single count may perform.
    pub budget_evaluations: u64,
    /// Maximum number of exponent vectors a capped expansion may hold.
    pub budget_states: u64,
    /// Worker threads; 1 counts serially on the calling thread.
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget_evaluations: DEFAULT_BUDGET_EVALUATIONS,
            budget_states: DEFAULT_BUDGET_STATES,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl Limits {
    pub fn serial(self) -> Self {
        Limits { workers: 1, ..self }
    }

    /// Fails with the required budget if `q^n` evaluations exceed it.
    pub fn check(&self, q: u64, n: usize) -> Result<u64> {
        let required = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if required > self.budget_evaluations as u128 {
            return Err(Error::Budget { what: "evaluation", required, budget: self.budget_evaluations });
        }
        Ok(required as u64)
    }
}

/// `[F]_q` for one polynomial: the exact number of zeros in `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    pub polynomial: String,
    pub field: PrimePower,
    pub vars: usize,
    pub zeros: u64,
}

/// Counts zeros of `eval` over all of `F_q^n`. `eval` receives the point
/// (variable `i` at index `i`) and a per-worker scratch value.
pub fn point_count<S, E>(
    polynomial: impl Into<String>,
    n: usize,
    field: &Field,
    cfg: &Limits,
    eval: E,
) -> Result<PointCount>
where
    S: Default,
    E: Fn(&[FieldElement], &mut S) -> FieldElement + Sync,
{
    let q = field.q();
    let total = cfg.check(q, n)?;
    let count_range = |start: u64, end: u64| -> u64 {
        let mut point = vec![FieldElement::ZERO; n];
        let mut idx = start;
        for slot in point.iter_mut() {
            *slot = field.from_raw((idx % q) as u32).expect("digit below q");
            idx /= q;
        }
        let mut scratch = S::default();
        let mut zeros = 0;
        for _ in start..end {
            if eval(&point, &mut scratch).is_zero() {
                zeros += 1;
            }
            for slot in point.iter_mut() {
                let next = slot.raw() + 1;
                if (next as u64) < q {
                    *slot = field.from_raw(next).expect("digit below q");
                    break;
                }
                *slot = FieldElement::ZERO;
            }
        }
        zeros
    };

    let zeros = if cfg.workers <= 1 || total < 4096 {
        count_range(0, total)
    } else {
        let chunks = (cfg.workers as u64 * 16).min(total);
        let ranges: Vec<(u64, u64)> = (0..chunks).map(|c| (total * c / chunks, total * (c + 1) / chunks)).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        pool.install(|| ranges.par_iter().map(|&(a, b)| count_range(a, b)).sum())
    };
    Ok(PointCount { polynomial: polynomial.into(), field: field.order(), vars: n, zeros })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Definition,
    Dodgson,
    Coefficient,
    Partition,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Definition => "definition",
            Method::Dodgson => "dodgson",
            Method::Coefficient => "coefficient",
            Method::Partition => "partition",
        };
        f.write_str(s)
    }
}

/// A c2 value as a residue, tagged with the modulus it is valid for: `q`
/// for the point-counting routes, `p` for the coefficient routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub graph: String,
    pub p: u64,
    pub s: u32,
    pub q: u64,
    pub method: Method,
    /// The exact integer the residue was derived from (point count,
    /// coefficient, or partition count), when one exists.
    pub count: Option<u64>,
    pub residue: u64,
    pub modulus: u64,
    pub runtime_ms: u64,
}

impl ResidueReport {
    pub(crate) fn new(
        g: &Graph,
        order: PrimePower,
        method: Method,
        count: Option<u64>,
        residue: u64,
        modulus: u64,
        started: Instant,
    ) -> Self {
        debug_assert!(residue < modulus);
        ResidueReport {
            graph: g.name().to_string(),
            p: order.p(),
            s: order.s(),
            q: order.q(),
            method,
            count,
            residue,
            modulus,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// The residue reduced modulo `p`.
    pub fn mod_p(&self) -> u64 {
        self.residue % self.p
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn check_c2_graph(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertex_count() < 3 {
        return Err(Error::TooFewVertices { required: 3, actual: g.vertex_count() });
    }
    Ok(())
}

/// `c2^(q)(G) = [Ψ_G]_q / q² mod q`, counting zeros of `det M` over all
/// `q^N` points. Fails hard if `q²` does not divide the count.
pub fn c2_via_definition(g: &Graph, field: &Field, cfg: &Limits) -> Result<ResidueReport> {
    check_c2_graph(g)?;
    let started = Instant::now();
    let inc = build_incidence(g);
    let m = DodgsonMatrix::new(g, &inc, EdgeSet::EMPTY, EdgeSet::EMPTY, EdgeSet::EMPTY, field)?;
    let count = point_count(format!("Psi[{}]", g.name()), g.edge_count(), field, cfg, |pt, scratch| {
        m.eval_with(field, pt, scratch)
    })?;
    let q = field.q();
    if count.zeros % (q * q) != 0 {
        return Err(Error::Invariant(format!("[Psi]_{q} = {} is not divisible by q^2 for {}", count.zeros, g.name())));
    }
    let residue = count.zeros / (q * q) % q;
    Ok(ResidueReport::new(g, field.order(), Method::Definition, Some(count.zeros), residue, q, started))
}

/// Hypotheses for the 3-valent-vertex formula: connected, `2 + |E| <= 2|V|`,
/// and a degree-3 vertex.
pub fn three_valent_hypotheses(g: &Graph) -> Result<ThreeValentCorner> {
    check_c2_graph(g)?;
    if 2 + g.edge_count() > 2 * g.vertex_count() {
        return Err(Error::TooManyEdges { edges: g.edge_count(), vertices: g.vertex_count() });
    }
    find_three_valent(g)
}

#[derive(Default)]
struct DodgsonScratch {
    full: Vec<FieldElement>,
    work: Vec<FieldElement>,
}

/// Zeros of `Ψ^{1,3}_2 · Ψ^{12,23}` over the `N - 3` non-corner variables.
pub fn corner_dodgson_count(g: &Graph, corner: &ThreeValentCorner, field: &Field, cfg: &Limits) -> Result<PointCount> {
    let inc = build_incidence(g);
    let d = CornerDodgsons::new(g, &inc, corner, field)?;
    let corner_edges = corner.edge_set();
    let free: Vec<usize> = g.all_edges().iter().filter(|e| !corner_edges.contains(*e)).map(|e| e.index()).collect();
    let n_edges = g.edge_count();
    point_count(
        format!("Psi^(1,3)_2*Psi^(12,23)[{}]", g.name()),
        free.len(),
        field,
        cfg,
        |pt, s: &mut DodgsonScratch| {
            if s.full.len() != n_edges {
                s.full = vec![FieldElement::ZERO; n_edges];
            }
            for (&slot, &v) in free.iter().zip(pt) {
                s.full[slot] = v;
            }
            let a = d.psi_1_3_2.eval_with(field, &s.full, &mut s.work);
            if a.is_zero() {
                return a;
            }
            field.mul(a, d.psi_12_23.eval_with(field, &s.full, &mut s.work))
        },
    )
}

/// `c2^(q)(G) = -[Ψ^{1,3}_2 Ψ^{12,23}]_q mod q` at the deterministic corner.
pub fn c2_via_dodgson(g: &Graph, field: &Field, cfg: &Limits) -> Result<ResidueReport> {
    let corner = three_valent_hypotheses(g)?;
    c2_via_dodgson_at(g, &corner, field, cfg)
}

/// As [`c2_via_dodgson`] at a caller-chosen corner.
pub fn c2_via_dodgson_at(g: &Graph, corner: &ThreeValentCorner, field: &Field, cfg: &Limits) -> Result<ResidueReport> {
    three_valent_hypotheses(g)?;
    let started = Instant::now();
    let count = corner_dodgson_count(g, corner, field, cfg)?;
    let q = field.q();
    let residue = (q - count.zeros % q) % q;
    Ok(ResidueReport::new(g, field.order(), Method::Dodgson, Some(count.zeros), residue, q, started))
}

/// Both sides of `[Ψ^{1,3}_{G,2} Ψ^{12,23}_G]_q = [Φ^{b,ac}_{G-v} Ψ_{G-v}]_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// Dodgson side, by determinants on `G`.
    pub lhs: PointCount,
    /// Forest side, by symbolic polynomials on `G - v`.
    pub rhs: PointCount,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs.zeros == self.rhs.zeros
    }
}

pub fn check_3valent_identity(g: &Graph, field: &Field, cfg: &Limits) -> Result<IdentityCheck> {
    let corner = find_three_valent(g)?;
    check_3valent_identity_at(g, &corner, field, cfg)
}

pub fn check_3valent_identity_at(
    g: &Graph,
    corner: &ThreeValentCorner,
    field: &Field,
    cfg: &Limits,
) -> Result<IdentityCheck> {
    let lhs = corner_dodgson_count(g, corner, field, cfg)?;
    let red = corner_reduction(g, *corner)?;
    let (psi, phi) = (&red.psi_h, &red.phi_h);
    let rhs =
        point_count(format!("Phi^(b,ac)*Psi[{}]", red.h.name()), red.h.edge_count(), field, cfg, |pt, _: &mut ()| {
            let a = phi.eval(field, pt);
            if a.is_zero() {
                return a;
            }
            field.mul(a, psi.eval(field, pt))
        })?;
    Ok(IdentityCheck { lhs, rhs })
}
