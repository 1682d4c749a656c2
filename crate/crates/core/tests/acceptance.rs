//! One line per acceptance criterion. Every tolerance is exact.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use c2_core::c2::{theorem1_verify, RowStatus};
use c2_core::coeff::random::{random_full_degree, random_pair, rng, DEFAULT_SEED};
use c2_core::coeff::{
    adds_without_carry, base_p_digits, chevalley_coeff_check, lucas_binom, prop_both_sides,
    prop_counterexample_nonmultilinear, two_x_over_gf9,
};
use c2_core::counting::{c2_via_definition, c2_via_dodgson, check_3valent_identity, three_valent_hypotheses, Limits};
use c2_core::gf::{Field, FieldElement, PrimePower};
use c2_core::graph::{find_three_valent, VertexPartition};
use c2_core::poly::{build_incidence, corner_reduction, forest_poly, kirchhoff, psi_eval, CornerDodgsons};
use c2_core::poly::{DodgsonMatrix, MultilinearPoly};
use common::catalog_graph;
use num_bigint::BigUint;
use rand::Rng;

const TOLERANCE: &str = "exact";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn limits() -> Limits {
    Limits { budget_evaluations: 100_000_000, ..Limits::default() }
}

fn order(p: u64, s: u32) -> PrimePower {
    PrimePower::new(p, s).unwrap()
}

fn field_of(q: u64) -> Field {
    Field::from_prime_power(PrimePower::from_order(q).unwrap())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_forest_polynomial() -> Outcome {
    let g = catalog_graph("k4");
    let p = VertexPartition::from_labels(&g, &[&["a", "b"], &["c"]]).map_err(|e| e.to_string())?;
    let got = forest_poly(&g, &p);
    // α₂α₃ times each of α₄α₅, α₄α₆, α₅α₆, α₁α₅.
    let expected =
        MultilinearPoly::from_var_lists(6, &[&[2, 3, 4, 5], &[2, 3, 4, 6], &[2, 3, 5, 6], &[1, 2, 3, 5]]).unwrap();
    let text = got.to_string();
    ensure(got == expected && text == "α₁α₂α₃α₅ + α₂α₃α₄α₅ + α₂α₃α₄α₆ + α₂α₃α₅α₆", || text.clone())?;
    Ok(text)
}

fn matrix_tree() -> Outcome {
    let mut r = rng(DEFAULT_SEED);
    let mut checked = 0;
    for name in ["k4", "oct", "c7"] {
        let g = catalog_graph(name);
        let psi = kirchhoff(&g);
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let field = Field::new(p, s).unwrap();
            for _ in 0..500 {
                let pt: Vec<FieldElement> =
                    (0..g.edge_count()).map(|_| field.from_raw(r.gen_range(0..field.q() as u32)).unwrap()).collect();
                let det = psi_eval(&g, &pt, &field).map_err(|e| e.to_string())?;
                ensure(det == psi.eval(&field, &pt), || format!("{name} over {}: {pt:?}", field.order()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} points"))
}

fn corner_identity() -> Outcome {
    let mut rows = Vec::new();
    for (name, qs) in [("k4", &[2u64, 3, 4, 5, 7, 8, 9][..]), ("oct", &[2, 3, 4, 5])] {
        let g = catalog_graph(name);
        for &q in qs {
            let c = check_3valent_identity(&g, &field_of(q), &limits()).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("{name} q={q}: {} vs {}", c.lhs.zeros, c.rhs.zeros))?;
            rows.push(format!("{name}/{q}:{}", c.lhs.zeros));
        }
    }
    Ok(rows.join(" "))
}

fn method_agreement() -> Outcome {
    let mut n = 0;
    for (name, qs) in [("k4", &[2u64, 3, 4, 5, 7, 8, 9][..]), ("oct", &[2, 3, 4])] {
        let g = catalog_graph(name);
        for &q in qs {
            let f = field_of(q);
            let a = c2_via_definition(&g, &f, &limits()).map_err(|e| format!("{name} q={q}: {e}"))?;
            let b = c2_via_dodgson(&g, &f, &limits()).map_err(|e| e.to_string())?;
            let count = a.count.unwrap();
            ensure(count % (q * q) == 0, || format!("{name} q={q}: {count} not divisible by q^2"))?;
            ensure(a.residue == b.residue && a.modulus == b.modulus, || {
                format!("{name} q={q}: definition {} vs dodgson {}", a.residue, b.residue)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} (graph, q) pairs agree"))
}

fn coefficient_identity() -> Outcome {
    let mut r = rng(DEFAULT_SEED ^ 5);
    for q in [2u64, 3, 4, 9] {
        let o = PrimePower::from_order(q).unwrap();
        for _ in 0..50 {
            let n = r.gen_range(1..=4);
            let f = random_full_degree(&mut r, n);
            let c = chevalley_coeff_check(&f, o, &limits()).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("q={q} F={f}: {c:?}"))?;
        }
    }
    let x = two_x_over_gf9(&limits()).map_err(|e| e.to_string())?;
    let want = (1, 256, 1, 4);
    let got = (x.zeros, x.coefficient, x.coefficient_mod_p, x.coefficient_mod_q);
    ensure(got == want, || format!("2x over GF(9): {got:?}"))?;
    Ok("200 random; 2x over GF(9): [F]=1, coeff 256, mod 3 = 1, mod 9 = 4".to_string())
}

fn prime_power_reduction() -> Outcome {
    let mut r = rng(DEFAULT_SEED ^ 6);
    for (p, s) in [(2, 2), (2, 3), (3, 2)] {
        for k in 0..100 {
            let n = r.gen_range(1..=5);
            let (a, b) = random_pair(&mut r, n);
            let (lhs, rhs) = prop_both_sides(&a, &b, order(p, s), &limits()).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("(p,s)=({p},{s}) pair {k}: P={a} Q={b} lhs {lhs} rhs {rhs}"))?;
        }
    }
    let c = prop_counterexample_nonmultilinear();
    ensure((c.lhs, c.rhs, c.lhs_mod_p) == (64, 0, 1), || format!("{c:?}"))?;
    Ok("300 pairs; non-multilinear example (64, 0), 64 = 1 mod 3".into())
}

fn prime_power_theorem() -> Outcome {
    let grid: [(&str, u64, &[u32]); 3] = [("k4", 2, &[1, 2, 3]), ("k4", 3, &[1, 2]), ("oct", 2, &[1, 2])];
    let mut rows = Vec::new();
    for (name, p, ss) in grid {
        let t = theorem1_verify(&catalog_graph(name), p, ss, &limits()).map_err(|e| e.to_string())?;
        for row in &t.rows {
            let applies = p == 2 || row.s as u64 == p;
            ensure(row.status == RowStatus::Pass, || format!("{name} q={}: {row:?}", row.q))?;
            ensure(row.corollary == applies.then_some(true), || format!("{name} q={}: corollary {row:?}", row.q))?;
            rows.push(format!("{name}/{}:{}", row.q, row.lhs.unwrap()));
        }
    }
    Ok(rows.join(" "))
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn lucas_and_carries() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        for i in 1..=3 {
            let pi = p.pow(i);
            for k in 1..pi {
                let exact = binomial(pi, k) % p;
                let lucas = lucas_binom(pi, k, p).value;
                ensure(lucas == 0 && exact == BigUint::from(0u32), || format!("C({pi}, {k}) mod {p}"))?;
                checked += 1;
            }
        }
    }
    for q in [4u64, 8, 9, 27] {
        let p = PrimePower::from_order(q).unwrap().p();
        for k in 0..q {
            let (a, b) = (base_p_digits(k, p), base_p_digits(q - 1 - k, p));
            let digitwise = (0..8).all(|i| a.digit(i) + b.digit(i) == base_p_digits(q - 1, p).digit(i));
            ensure(digitwise && adds_without_carry(k, q - 1 - k, p), || format!("q={q} k={k}"))?;
        }
    }
    Ok(format!("{checked} binomials; q in {{4,8,9,27}}"))
}

/// `d` with `D(λx) = λ^d D(x)` at every sampled point, `λ` a generator of `F_11^*`.
fn scaling_degree(field: &Field, m: &DodgsonMatrix, n: usize) -> Option<u32> {
    let lambda = field.from_int(2);
    let mut r = rng(DEFAULT_SEED ^ 9);
    let mut candidates: Vec<u32> = (0..10).collect();
    for _ in 0..60 {
        let pt: Vec<FieldElement> = (0..n).map(|_| field.from_int(r.gen_range(0..11))).collect();
        let scaled: Vec<FieldElement> = pt.iter().map(|&x| field.mul(lambda, x)).collect();
        let (a, b) = (m.eval(field, &pt).ok()?, m.eval(field, &scaled).ok()?);
        candidates.retain(|&d| field.mul(field.pow(lambda, d as u64), a) == b);
    }
    (candidates.len() == 1).then(|| candidates[0])
}

fn corner_degrees() -> Outcome {
    let f11 = Field::new(11, 1).unwrap();
    let mut parts = Vec::new();
    for name in ["k4", "oct", "c7"] {
        let g = catalog_graph(name);
        let n = g.edge_count();
        let corner = three_valent_hypotheses(&g).map_err(|e| e.to_string())?;
        let red = corner_reduction(&g, corner).map_err(|e| e.to_string())?;
        let d = CornerDodgsons::new(&g, &build_incidence(&g), &find_three_valent(&g).unwrap(), &f11)
            .map_err(|e| e.to_string())?;
        let want = (Some(n / 2 - 1), Some(n / 2 - 2));
        ensure((red.phi_h.degree(), red.psi_h.degree()) == want, || format!("{name}: forest-side degrees"))?;
        let scaled = (
            scaling_degree(&f11, &d.psi_1_3_2, n).map(|x| x as usize),
            scaling_degree(&f11, &d.psi_12_23, n).map(|x| x as usize),
        );
        ensure(scaled == want, || format!("{name}: determinant degrees {scaled:?}, want {want:?}"))?;
        parts.push(format!("{name}: N={n} ({}, {})", n / 2 - 1, n / 2 - 2));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("forest polynomial of K4, P = {a,b},{c}", example_forest_polynomial),
        ("determinant = tree sum, 500 points per field", matrix_tree),
        ("corner point-count identity", corner_identity),
        ("definition and Dodgson routes agree", method_agreement),
        ("coefficient identity mod p, sharp mod q", coefficient_identity),
        ("prime-power coefficient reduction", prime_power_reduction),
        ("c2 at p^s versus c2 at p", prime_power_theorem),
        ("Lucas vanishing and no-carry complements", lucas_and_carries),
        ("corner Dodgson degrees N/2-1, N/2-2", corner_degrees),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failed += outcome.is_err() as usize;
        println!("{tag} [{}] {name} (tol {TOLERANCE}, {secs:.2}s): {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
