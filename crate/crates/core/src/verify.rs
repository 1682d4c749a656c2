//! Verification suites over the catalog. Each check yields one row; a row
//! whose computation exceeds a budget is skipped, never passed.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::c2::{theorem1_verify, RowStatus};
use crate::catalog::Catalog;
use crate::coeff::random::{random_full_degree, random_multilinear, random_pair, rng, DEFAULT_SEED};
use crate::coeff::{
    adds_without_carry, base_p_digits, c2_via_coefficient, c2_via_partition, chevalley_coeff_check, lucas_binom,
    prop_both_sides, prop_counterexample_nonmultilinear, two_x_over_gf9, CappedPolynomial,
};
use crate::counting::{
    c2_via_definition, c2_via_dodgson, check_3valent_identity, Limits, DEFAULT_BUDGET_EVALUATIONS,
    DEFAULT_BUDGET_STATES,
};
use crate::error::{Error, Result};
use crate::gf::{Field, PrimePower};
use crate::graph::{find_three_valent, Graph};
use crate::poly::{corner_reduction, kirchhoff, psi_eval, MultilinearPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(Error::Precondition(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub budget_evaluations: u64,
    pub budget_states: u64,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget_evaluations: DEFAULT_BUDGET_EVALUATIONS,
            budget_states: DEFAULT_BUDGET_STATES,
            seed: DEFAULT_SEED,
            output_path: None,
            format: Format::Table,
            workers: Limits::default().workers,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget_evaluations == 0 || self.budget_states == 0 {
            return Err(Error::Precondition("budgets must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::Precondition("at least one worker is required".into()));
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits { budget_evaluations: self.budget_evaluations, budget_states: self.budget_states, workers: self.workers }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Prop,
    Theorem1,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "prop" => Ok(Suite::Prop),
            "theorem1" => Ok(Suite::Theorem1),
            "all" => Ok(Suite::All),
            other => Err(Error::Precondition(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub name: String,
    pub status: RowStatus,
    pub detail: String,
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Skipped => "SKIPPED",
        };
        write!(f, "{:<8} {:<9} {:<40} {}", status, self.suite, self.name, self.detail)
    }
}

fn row(suite: &'static str, name: impl Into<String>, outcome: Result<(bool, String)>) -> CheckRow {
    let (status, detail) = match outcome {
        Ok((true, d)) => (RowStatus::Pass, d),
        Ok((false, d)) => (RowStatus::Fail, d),
        Err(e @ Error::Budget { .. }) => (RowStatus::Skipped, e.to_string()),
        Err(e) => (RowStatus::Fail, format!("error: {e}")),
    };
    CheckRow { suite, name: name.into(), status, detail }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.config.format {
            Format::Json => {
                let meta = serde_json::json!({ "config": self.config });
                out.push_str(&meta.to_string());
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&serde_json::to_string(r).expect("row serializes"));
                    out.push('\n');
                }
            }
            Format::Table => {
                out.push_str(&format!(
                    "# seed={} budget_evaluations={} budget_states={} workers={}\n",
                    self.config.seed, self.config.budget_evaluations, self.config.budget_states, self.config.workers
                ));
                for r in &self.rows {
                    out.push_str(&format!("{r}\n"));
                }
                let count = |s: RowStatus| self.rows.iter().filter(|r| r.status == s).count();
                out.push_str(&format!(
                    "# {} passed, {} failed, {} skipped\n",
                    count(RowStatus::Pass),
                    count(RowStatus::Fail),
                    count(RowStatus::Skipped)
                ));
            }
        }
        out
    }
}

pub fn run(suite: Suite, config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let catalog = Catalog::load()?;
    let mut rows = Vec::new();
    if matches!(suite, Suite::Lemmas | Suite::All) {
        rows.extend(lemmas(&catalog, config));
    }
    if matches!(suite, Suite::Prop | Suite::All) {
        rows.extend(prop(config)?);
    }
    if matches!(suite, Suite::Theorem1 | Suite::All) {
        rows.extend(theorem1(&catalog, config));
    }
    Ok(Report { config: config.clone(), rows })
}

fn order(p: u64, s: u32) -> PrimePower {
    PrimePower::new(p, s).expect("valid prime power")
}

const GRID: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

fn matrix_tree(g: &Graph, field: &Field, points: usize, seed: u64) -> Result<(bool, String)> {
    let psi = kirchhoff(g);
    let mut r = rng(seed);
    let q = field.q() as u32;
    for _ in 0..points {
        let pt: Vec<_> = (0..g.edge_count()).map(|_| field.from_raw(r.gen_range(0..q)).expect("below q")).collect();
        let det = psi_eval(g, &pt, field)?;
        let sum = psi.eval(field, &pt);
        if det != sum {
            return Ok((false, format!("det {} != tree sum {} at {pt:?}", det.raw(), sum.raw())));
        }
    }
    Ok((true, format!("{points} points")))
}

/// Degrees of the two corner polynomials: `N/2 - 1` for the forest side and
/// `N/2 - 2` for `Ψ_H`.
pub fn corner_degrees(g: &Graph) -> Result<(usize, usize)> {
    let red = corner_reduction(g, find_three_valent(g)?)?;
    let d = |p: &MultilinearPoly| p.degree().ok_or_else(|| Error::Invariant("zero corner polynomial".into()));
    Ok((d(&red.phi_h)?, d(&red.psi_h)?))
}

fn lemmas(catalog: &Catalog, config: &RunConfig) -> Vec<CheckRow> {
    let limits = config.limits();
    let mut rows = Vec::new();
    const S: &str = "lemmas";

    for e in &catalog.entries {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let field = Field::from_prime_power(order(p, s));
            let seed = config.seed ^ (p << 8) ^ (s as u64) ^ e.name.len() as u64;
            rows.push(row(
                S,
                format!("matrix-tree {} {}", e.name, field.order()),
                matrix_tree(&e.decompletion, &field, 500, seed),
            ));
        }
    }

    let identity_grid: [(&str, &[(u64, u32)]); 3] =
        [("k4", &GRID), ("oct", &GRID), ("c7", &[(2, 1), (3, 1), (2, 2), (5, 1)])];
    for (name, grid) in identity_grid {
        let Some(e) = catalog.entry(name) else { continue };
        for &(p, s) in grid {
            let field = Field::from_prime_power(order(p, s));
            let out = check_3valent_identity(&e.decompletion, &field, &limits)
                .map(|c| (c.holds(), format!("{} = {}", c.lhs.zeros, c.rhs.zeros)));
            rows.push(row(S, format!("corner identity {name} q={}", field.q()), out));
        }
    }

    let agreement_grid: [(&str, &[(u64, u32)]); 3] =
        [("k4", &GRID), ("oct", &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]), ("c7", &[(2, 1), (3, 1), (2, 2)])];
    for (name, grid) in agreement_grid {
        let Some(e) = catalog.entry(name) else { continue };
        for &(p, s) in grid {
            let o = order(p, s);
            let field = Field::from_prime_power(o);
            let g = &e.decompletion;
            let out = (|| {
                let def = c2_via_definition(g, &field, &limits)?;
                let dod = c2_via_dodgson(g, &field, &limits)?;
                let coef = c2_via_coefficient(g, o, &limits)?;
                let mut ok = def.residue == dod.residue && def.mod_p() == coef.residue;
                let mut detail = format!(
                    "definition {} = dodgson {} (mod {}); coefficient {} (mod {p})",
                    def.residue,
                    dod.residue,
                    o.q(),
                    coef.residue
                );
                if o.q() <= 3 {
                    let part = c2_via_partition(g, o, &limits)?;
                    ok &= part.residue == coef.residue;
                    detail.push_str(&format!("; partition count {}", part.count.unwrap_or(0)));
                }
                Ok((ok, detail))
            })();
            rows.push(row(S, format!("c2 methods {name} q={}", o.q()), out));
        }
    }

    for (p, s) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let o = order(p, s);
        let mut r = rng(config.seed.wrapping_add(o.q()));
        let out = (|| {
            for i in 0..50 {
                let n = r.gen_range(1..=4);
                let f = random_full_degree(&mut r, n);
                let c = chevalley_coeff_check(&f, o, &limits)?;
                if !c.holds() {
                    return Ok((false, format!("instance {i}: F = {f}: {c:?}")));
                }
            }
            Ok((true, "50 random polynomials".to_string()))
        })();
        rows.push(row(S, format!("coefficient identity q={}", o.q()), out));
    }
    let out = two_x_over_gf9(&limits).map(|r| {
        let ok = r.zeros == 1 && r.coefficient == 256 && r.coefficient_mod_p == 1 && r.coefficient_mod_q == 4;
        (
            ok,
            format!(
                "[2x]_9 = {}, coefficient {} = {} mod 3, {} mod 9",
                r.zeros, r.coefficient, r.coefficient_mod_p, r.coefficient_mod_q
            ),
        )
    });
    rows.push(row(S, "coefficient identity fails mod q", out));

    for e in &catalog.entries {
        let n = e.decompletion.edge_count();
        let out = corner_degrees(&e.decompletion).map(|(phi, psi)| {
            (phi == n / 2 - 1 && psi == n / 2 - 2, format!("N = {n}: deg Phi = {phi}, deg Psi_H = {psi}"))
        });
        rows.push(row(S, format!("corner degrees {}", e.name), out));
    }

    let lucas = (|| {
        for p in [2u64, 3, 5] {
            for i in 1..=3 {
                let n = p.pow(i);
                if let Some(k) = (1..n).find(|&k| lucas_binom(n, k, p).value != 0) {
                    return Ok((false, format!("C({n},{k}) != 0 mod {p}")));
                }
            }
        }
        Ok((true, "p in {2,3,5}, i <= 3".to_string()))
    })();
    rows.push(row(S, "prime-power binomials vanish", lucas));
    let carry = (|| {
        for (p, s) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
            let q = p.pow(s);
            for k in 0..q {
                let (a, b) = (base_p_digits(k, p), base_p_digits(q - 1 - k, p));
                let digits_ok = (0..s as usize).all(|i| a.digit(i) + b.digit(i) == p - 1);
                if !digits_ok || !adds_without_carry(k, q - 1 - k, p) {
                    return Ok((false, format!("q = {q}, k = {k}")));
                }
            }
        }
        Ok((true, "q in {4,8,9,27}".to_string()))
    })();
    rows.push(row(S, "no carry in k + (q-1-k)", carry));
    rows
}

/// `[m] P^{p^i} mod p` for every `m` below the caps, checked against the
/// block law: 0 unless every exponent is 0 or `p^i`, and then 1 exactly
/// when the support of `m` is a monomial of `P`.
pub fn block_law_holds(f: &MultilinearPoly, p: u64, i: u32, limits: &Limits) -> Result<bool> {
    let pi = p.pow(i) as u32;
    let n = f.num_vars();
    let mut acc = CappedPolynomial::one(&vec![pi; n], p, limits)?;
    for _ in 0..pi {
        acc.mul_multilinear(f)?;
    }
    let support: std::collections::HashSet<u32> = f.monomials().iter().map(|m| m.0).collect();
    let mut exps = vec![0u32; n];
    loop {
        let c = acc.coeff(&exps);
        let expected = if exps.iter().all(|&e| e == 0 || e == pi) {
            let mask = exps.iter().enumerate().filter(|(_, &e)| e == pi).fold(0u32, |m, (j, _)| m | 1 << j);
            support.contains(&mask) as u64
        } else {
            0
        };
        if c != expected {
            return Ok(false);
        }
        let Some(j) = exps.iter().position(|&e| e < pi) else { return Ok(true) };
        exps[..j].iter_mut().for_each(|e| *e = 0);
        exps[j] += 1;
    }
}

/// Digit factorization of `[m] P^{q-1} mod p`: the product over base-`p`
/// digit positions `i` of `[p^i m_i](P^{p^i})^{p-1}`, where `m_i` holds the
/// `i`-th digits of the exponents of `m`. Checked for every `m`.
pub fn digit_factorization_holds(f: &MultilinearPoly, o: PrimePower, limits: &Limits) -> Result<bool> {
    let (p, s, q) = (o.p(), o.s(), o.q());
    let n = f.num_vars();
    let expand = |cap: u32, times: u32| -> Result<CappedPolynomial> {
        let mut acc = CappedPolynomial::one(&vec![cap; n], p, limits)?;
        for _ in 0..times {
            acc.mul_multilinear(f)?;
        }
        Ok(acc)
    };
    let full = expand((q - 1) as u32, (q - 1) as u32)?;
    let blocks: Vec<(u32, CappedPolynomial)> = (0..s)
        .map(|i| {
            let pi = p.pow(i) as u32;
            let e = pi * (p - 1) as u32;
            expand(e, e).map(|c| (pi, c))
        })
        .collect::<Result<_>>()?;
    let mut exps = vec![0u32; n];
    loop {
        let predicted = blocks.iter().enumerate().fold(1u64, |acc, (i, (pi, block))| {
            let m_i: Vec<u32> = exps.iter().map(|&k| pi * base_p_digits(k as u64, p).digit(i) as u32).collect();
            acc * block.coeff(&m_i) % p
        });
        if full.coeff(&exps) != predicted {
            return Ok(false);
        }
        let Some(j) = exps.iter().position(|&e| (e as u64) < q - 1) else { return Ok(true) };
        exps[..j].iter_mut().for_each(|e| *e = 0);
        exps[j] += 1;
    }
}

fn prop(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let limits = config.limits().serial();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let mut rows = Vec::new();
    const S: &str = "prop";

    for (p, s) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let o = order(p, s);
        let mut r = rng(config.seed.wrapping_mul(31).wrapping_add(o.q()));
        let instances: Vec<_> = (0..100)
            .map(|_| {
                let n = r.gen_range(1..=5);
                random_pair(&mut r, n)
            })
            .collect();
        let results: Vec<Result<(u64, u64)>> =
            pool.install(|| instances.par_iter().map(|(a, b)| prop_both_sides(a, b, o, &limits)).collect());
        let out = (|| {
            for (i, res) in results.into_iter().enumerate() {
                let (lhs, rhs) = res?;
                if lhs != rhs {
                    let (a, b) = &instances[i];
                    return Ok((false, format!("instance {i}: P = {a}, Q = {b}: {lhs} != {rhs}")));
                }
            }
            Ok((true, "100 random pairs".to_string()))
        })();
        rows.push(row(S, format!("prime-power reduction p={p} s={s}"), out));
    }

    let c = prop_counterexample_nonmultilinear();
    rows.push(row(
        S,
        "non-multilinear counterexample",
        Ok((
            c.lhs == 64 && c.rhs == 0 && c.lhs_mod_p == 1 && c.hypothesis_violation.is_some(),
            format!("[x^8y^8]F^8 = {}, ([x^2y^2]F^2)^2 = {}, {} mod 3", c.lhs, c.rhs, c.lhs_mod_p),
        )),
    ));
    let out = two_x_over_gf9(&limits).map(|r| {
        (
            r.coefficient % 3 == 1 && r.coefficient % 9 == 4,
            format!("256 = {} mod 3, {} mod 9", r.coefficient_mod_p, r.coefficient_mod_q),
        )
    });
    rows.push(row(S, "integer coefficient 2x at q=9", out));

    let mut r = rng(config.seed.wrapping_add(7));
    let out = (|| {
        for (p, i) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
            for _ in 0..10 {
                let n = r.gen_range(1..=3);
                let f = random_multilinear(&mut r, n, 0.5);
                if !block_law_holds(&f, p, i, &limits)? {
                    return Ok((false, format!("P = {f}, p^i = {}", p.pow(i))));
                }
            }
        }
        Ok((true, "50 random polynomials, p^i <= 9".to_string()))
    })();
    rows.push(row(S, "block coefficient law", out));
    let out = (|| {
        for (p, s) in [(2u64, 2u32), (2, 3), (3, 2)] {
            let o = order(p, s);
            for _ in 0..10 {
                let n = r.gen_range(1..=4);
                let f = random_multilinear(&mut r, n, 0.5);
                if !digit_factorization_holds(&f, o, &limits)? {
                    return Ok((false, format!("P = {f}, q = {}", o.q())));
                }
            }
        }
        Ok((true, "30 random polynomials, q <= 9".to_string()))
    })();
    rows.push(row(S, "digit factorization", out));
    Ok(rows)
}

/// `(graph, p, s values)` rows of the prime-power check.
pub const THEOREM1_GRID: [(&str, u64, &[u32]); 7] = [
    ("k4", 2, &[1, 2, 3, 4]),
    ("k4", 3, &[1, 2, 3]),
    ("k4", 5, &[1, 2]),
    ("oct", 2, &[1, 2, 3]),
    ("oct", 3, &[1, 2]),
    ("c7", 2, &[1, 2, 3]),
    ("c7", 3, &[1, 2]),
];

/// Minimum number of non-skipped prime-power rows for the suite to pass.
pub const THEOREM1_MIN_ROWS: usize = 6;

fn theorem1(catalog: &Catalog, config: &RunConfig) -> Vec<CheckRow> {
    let limits = config.limits();
    let mut rows = Vec::new();
    const S: &str = "theorem1";
    for (name, p, s_values) in THEOREM1_GRID {
        let Some(e) = catalog.entry(name) else { continue };
        match theorem1_verify(&e.decompletion, p, s_values, &limits) {
            Ok(table) => {
                for r in table.rows {
                    let detail = match (r.lhs, &r.note) {
                        (Some(lhs), _) => format!(
                            "c2^(p) = {} ({}); c2^(q) = {lhs} mod {p} via {}; (-1)^(s+1) c2^(p)^s = {}{}",
                            table.base.mod_p(),
                            table.base.method,
                            r.method.map_or("-".to_string(), |m| m.to_string()),
                            r.rhs,
                            r.corollary.map_or(String::new(), |c| format!(
                                "; corollary {}",
                                if c { "holds" } else { "fails" }
                            ))
                        ),
                        (None, Some(note)) => note.clone(),
                        (None, None) => String::new(),
                    };
                    rows.push(CheckRow { suite: S, name: format!("{name} p={p} s={}", r.s), status: r.status, detail });
                }
            }
            Err(err) => rows.push(row(S, format!("{name} p={p}"), Err(err))),
        }
    }
    let checked = rows.iter().filter(|r| r.status != RowStatus::Skipped).count();
    rows.push(row(
        S,
        "enough rows checked",
        Ok((checked >= THEOREM1_MIN_ROWS, format!("{checked} rows checked, {THEOREM1_MIN_ROWS} required"))),
    ));
    rows
}
