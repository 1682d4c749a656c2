//! Method selection for c2 and the prime-power check
//! `c2^(p^s) ≡ (-1)^(s+1) (c2^(p))^s (mod p)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coeff::{c2_via_coefficient, c2_via_partition};
use crate::counting::{c2_via_definition, c2_via_dodgson, three_valent_hypotheses, Limits, Method, ResidueReport};
use crate::error::{Error, Result};
use crate::gf::{Field, PrimePower};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    Auto,
    Fixed(Method),
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => MethodChoice::Auto,
            "definition" => MethodChoice::Fixed(Method::Definition),
            "dodgson" => MethodChoice::Fixed(Method::Dodgson),
            "coefficient" => MethodChoice::Fixed(Method::Coefficient),
            "partition" => MethodChoice::Fixed(Method::Partition),
            other => return Err(Error::Precondition(format!("unknown method {other:?}"))),
        })
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodChoice::Auto => f.write_str("auto"),
            MethodChoice::Fixed(m) => m.fmt(f),
        }
    }
}

/// The method `auto` resolves to. Routes valid mod `q` come first: the
/// Dodgson count (`q^(N-3)` points), then the definition (`q^N` points).
/// The coefficient route is the fallback and only yields a residue mod `p`.
pub fn auto_method(g: &Graph, order: PrimePower, limits: &Limits) -> Result<Method> {
    let q = order.q();
    let corner_ok = three_valent_hypotheses(g).is_ok();
    if corner_ok && limits.check(q, g.edge_count() - 3).is_ok() {
        return Ok(Method::Dodgson);
    }
    match limits.check(q, g.edge_count()) {
        Ok(_) => Ok(Method::Definition),
        Err(_) if corner_ok => Ok(Method::Coefficient),
        Err(e) => Err(e),
    }
}

pub fn compute_c2(g: &Graph, order: PrimePower, choice: MethodChoice, limits: &Limits) -> Result<ResidueReport> {
    let method = match choice {
        MethodChoice::Fixed(m) => m,
        MethodChoice::Auto => auto_method(g, order, limits)?,
    };
    match method {
        Method::Definition => c2_via_definition(g, &Field::from_prime_power(order), limits),
        Method::Dodgson => c2_via_dodgson(g, &Field::from_prime_power(order), limits),
        Method::Coefficient => c2_via_coefficient(g, order, limits),
        Method::Partition => c2_via_partition(g, order, limits),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerRow {
    pub s: u32,
    pub q: u64,
    pub method: Option<Method>,
    /// `c2^(q) mod p`.
    pub lhs: Option<u64>,
    /// `(-1)^(s+1) (c2^(p))^s mod p`.
    pub rhs: u64,
    /// Whether `c2^(q) ≡ c2^(p)` holds, for `p = 2` or `s = p`.
    pub corollary: Option<bool>,
    pub status: RowStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerTable {
    pub graph: String,
    pub p: u64,
    pub base: ResidueReport,
    pub rows: Vec<PrimePowerRow>,
}

impl PrimePowerTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }

    pub fn checked_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.status != RowStatus::Skipped).count()
    }
}

/// Compares `c2^(p^s) mod p` with `(-1)^(s+1) (c2^(p))^s mod p` for each `s`.
/// `c2^(p)` must be computable; a row whose `q` exceeds every budget is
/// marked skipped.
pub fn theorem1_verify(g: &Graph, p: u64, s_values: &[u32], limits: &Limits) -> Result<PrimePowerTable> {
    let base = compute_c2(g, PrimePower::new(p, 1)?, MethodChoice::Auto, limits)?;
    let c2p = base.mod_p();
    let mut rows = Vec::new();
    for &s in s_values {
        let order = PrimePower::new(p, s)?;
        let power = (0..s).fold(1, |acc, _| acc * c2p % p);
        let rhs = if s % 2 == 1 { power } else { (p - power) % p };
        let applies = p == 2 || s as u64 == p;
        let row = match compute_c2(g, order, MethodChoice::Auto, limits) {
            Ok(report) => {
                let lhs = report.mod_p();
                let corollary = applies.then_some(lhs == c2p);
                let ok = lhs == rhs && corollary != Some(false);
                PrimePowerRow {
                    s,
                    q: order.q(),
                    method: Some(report.method),
                    lhs: Some(lhs),
                    rhs,
                    corollary,
                    status: if ok { RowStatus::Pass } else { RowStatus::Fail },
                    note: None,
                }
            }
            Err(e @ Error::Budget { .. }) => PrimePowerRow {
                s,
                q: order.q(),
                method: None,
                lhs: None,
                rhs,
                corollary: None,
                status: RowStatus::Skipped,
                note: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(PrimePowerTable { graph: g.name().to_string(), p, base, rows })
}
