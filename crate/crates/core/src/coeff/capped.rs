use crate::counting::Limits;
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;

/// Upper bound on the total number of factors in one capped product.
pub const MAX_FACTORS: u32 = 128;

/// A polynomial truncated coordinate-wise at `caps`, coefficients reduced
/// modulo `modulus`. Stored densely in mixed radix `caps[i] + 1`.
///
/// Any term with an exponent above its cap is dropped at creation. Such a
/// term can never divide a monomial that respects the caps, so the retained
/// coefficients are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPolynomial {
    caps: Vec<u32>,
    strides: Vec<usize>,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl CappedPolynomial {
    /// The constant 1. Fails if the dense table would exceed the state budget.
    pub fn one(caps: &[u32], modulus: u64, limits: &Limits) -> Result<Self> {
        if modulus < 2 || modulus > u32::MAX as u64 {
            return Err(Error::Precondition(format!("modulus {modulus} outside [2, 2^32)")));
        }
        if caps.len() > 32 {
            return Err(Error::Precondition("at most 32 variables".into()));
        }
        let required = caps.iter().fold(1u128, |acc, &c| acc.saturating_mul(c as u128 + 1));
        if required > limits.budget_states as u128 {
            return Err(Error::Budget { what: "state", required, budget: limits.budget_states });
        }
        let mut strides = Vec::with_capacity(caps.len());
        let mut stride = 1usize;
        for &c in caps {
            strides.push(stride);
            stride *= c as usize + 1;
        }
        let mut coeffs = vec![0; stride];
        coeffs[0] = 1 % modulus;
        Ok(CappedPolynomial { caps: caps.to_vec(), strides, modulus, coeffs })
    }

    pub fn num_vars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn state_count(&self) -> usize {
        self.coeffs.len()
    }

    fn index(&self, exponents: &[u32]) -> Option<usize> {
        if exponents.len() != self.caps.len() || exponents.iter().zip(&self.caps).any(|(e, c)| e > c) {
            return None;
        }
        Some(exponents.iter().zip(&self.strides).map(|(&e, &s)| e as usize * s).sum())
    }

    /// Coefficient of `x^exponents`; 0 for exponents beyond the caps.
    pub fn coeff(&self, exponents: &[u32]) -> u64 {
        self.index(exponents).map_or(0, |i| self.coeffs[i])
    }

    /// Nonzero terms as `(exponents, coefficient)`, in storage order.
    pub fn terms(&self) -> Vec<(Vec<u32>, u64)> {
        let mut out = Vec::new();
        self.walk(|idx, exps, _, _| {
            if self.coeffs[idx] != 0 {
                out.push((exps.to_vec(), self.coeffs[idx]));
            }
        });
        out
    }

    /// Visits every state with its exponents, total degree and at-cap mask.
    fn walk(&self, mut visit: impl FnMut(usize, &[u32], u32, u32)) {
        let mut exps = vec![0u32; self.caps.len()];
        let mut degree = 0u32;
        let mut at_cap: u32 = self.caps.iter().enumerate().filter(|(_, &c)| c == 0).fold(0, |m, (i, _)| m | 1 << i);
        for idx in 0..self.coeffs.len() {
            visit(idx, &exps, degree, at_cap);
            for (i, (e, &cap)) in exps.iter_mut().zip(&self.caps).enumerate() {
                if *e < cap {
                    *e += 1;
                    degree += 1;
                    if *e == cap {
                        at_cap |= 1 << i;
                    }
                    break;
                }
                degree -= *e;
                *e = 0;
                if cap > 0 {
                    at_cap &= !(1 << i);
                }
            }
        }
    }

    /// Multiplies by `f`, keeping only products whose total degree lies in
    /// `degree_window`.
    pub fn mul_multilinear_within(&mut self, f: &MultilinearPoly, degree_window: (u32, u32)) -> Result<()> {
        if f.num_vars() != self.caps.len() {
            return Err(Error::Dimension(format!(
                "factor has {} variables, expansion has {}",
                f.num_vars(),
                self.caps.len()
            )));
        }
        let terms: Vec<(u32, usize, u32)> = f
            .monomials()
            .iter()
            .map(|m| {
                let offset = m.vars().iter().map(|&v| self.strides[v - 1]).sum();
                (m.0, offset, m.degree() as u32)
            })
            .collect();
        let (lo, hi) = degree_window;
        let modulus = self.modulus;
        let mut next = vec![0u64; self.coeffs.len()];
        let coeffs = &self.coeffs;
        self.walk(|idx, _, degree, at_cap| {
            let c = coeffs[idx];
            if c == 0 {
                return;
            }
            for &(mask, offset, deg) in &terms {
                let d = degree + deg;
                if mask & at_cap == 0 && d >= lo && d <= hi {
                    let slot = &mut next[idx + offset];
                    *slot = (*slot + c) % modulus;
                }
            }
        });
        self.coeffs = next;
        Ok(())
    }

    pub fn mul_multilinear(&mut self, f: &MultilinearPoly) -> Result<()> {
        self.mul_multilinear_within(f, (0, u32::MAX))
    }
}

/// `[x^target] Π f_k^{m_k} mod modulus`, expanded one factor at a time with
/// exponents capped at `target`. States whose degree can no longer reach
/// the target's degree are discarded as well.
pub fn capped_coeff(factors: &[(&MultilinearPoly, u32)], target: &[u32], modulus: u64, limits: &Limits) -> Result<u64> {
    let total: u64 = factors.iter().map(|&(_, m)| m as u64).sum();
    if total > MAX_FACTORS as u64 {
        return Err(Error::Precondition(format!("{total} factors exceed the bound of {MAX_FACTORS}")));
    }
    let sequence: Vec<&MultilinearPoly> =
        factors.iter().flat_map(|&(f, m)| std::iter::repeat_n(f, m as usize)).collect();
    let mut acc = CappedPolynomial::one(target, modulus, limits)?;
    if sequence.iter().any(|f| f.is_zero()) {
        return Ok(0);
    }
    let goal: u32 = target.iter().sum();
    // Degree ranges still obtainable from factors k.. (suffix sums).
    let mut rest_min = vec![0u32; sequence.len() + 1];
    let mut rest_max = vec![0u32; sequence.len() + 1];
    for k in (0..sequence.len()).rev() {
        rest_min[k] = rest_min[k + 1] + sequence[k].min_degree().unwrap_or(0) as u32;
        rest_max[k] = rest_max[k + 1] + sequence[k].degree().unwrap_or(0) as u32;
    }
    for (k, f) in sequence.iter().enumerate() {
        let lo = goal.saturating_sub(rest_max[k + 1]);
        let hi = goal.saturating_sub(rest_min[k + 1]);
        if rest_min[k + 1] > goal {
            return Ok(0);
        }
        acc.mul_multilinear_within(f, (lo, hi))?;
    }
    Ok(acc.coeff(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits { budget_states: 1_000_000, ..Limits::default().serial() }
    }

    #[test]
    fn single_monomial_power() {
        let m = MultilinearPoly::from_var_lists(2, &[&[1, 2]]).unwrap();
        for (p, q) in [(2u64, 2u32), (2, 4), (3, 9), (5, 5)] {
            let c = capped_coeff(&[(&m, q - 1)], &[q - 1, q - 1], p, &limits()).unwrap();
            assert_eq!(c, 1);
        }
    }

    #[test]
    fn binomial_middle_coefficient() {
        let f = MultilinearPoly::from_var_lists(2, &[&[1], &[2]]).unwrap();
        assert_eq!(capped_coeff(&[(&f, 6)], &[3, 3], 2, &limits()).unwrap(), 0);
        assert_eq!(capped_coeff(&[(&f, 6)], &[3, 3], 1_000_003, &limits()).unwrap(), 20);
        assert_eq!(capped_coeff(&[(&f, 6)], &[2, 4], 1_000_003, &limits()).unwrap(), 15);
    }

    #[test]
    fn pruning_matches_full_table() {
        let f = MultilinearPoly::from_var_lists(3, &[&[1, 2], &[3], &[], &[1, 3]]).unwrap();
        let mut full = CappedPolynomial::one(&[4, 4, 4], 1_000_003, &limits()).unwrap();
        for _ in 0..4 {
            full.mul_multilinear(&f).unwrap();
        }
        for t in [[2u32, 1, 3], [4, 4, 0], [1, 1, 1], [0, 0, 0], [4, 4, 4]] {
            assert_eq!(capped_coeff(&[(&f, 4)], &t, 1_000_003, &limits()).unwrap(), full.coeff(&t), "{t:?}");
        }
    }

    #[test]
    fn state_budget_enforced() {
        let f = MultilinearPoly::from_var_lists(4, &[&[1, 2, 3, 4]]).unwrap();
        let tight = Limits { budget_states: 100, ..limits() };
        let err = capped_coeff(&[(&f, 8)], &[8; 4], 3, &tight).unwrap_err();
        assert!(matches!(err, Error::Budget { what: "state", required: 6561, .. }));
    }

    #[test]
    fn terms_respect_caps() {
        let f = MultilinearPoly::from_var_lists(2, &[&[1], &[2], &[1, 2]]).unwrap();
        let mut acc = CappedPolynomial::one(&[1, 2], 7, &limits()).unwrap();
        acc.mul_multilinear(&f).unwrap();
        acc.mul_multilinear(&f).unwrap();
        for (exps, c) in acc.terms() {
            assert!(exps[0] <= 1 && exps[1] <= 2);
            assert!(c > 0 && c < 7);
        }
        // (x + y + xy)^2 capped at x^1 y^2: 2xy + y^2 + 2xy^2.
        assert_eq!(acc.coeff(&[1, 1]), 2);
        assert_eq!(acc.coeff(&[0, 2]), 1);
        assert_eq!(acc.coeff(&[1, 2]), 2);
        assert_eq!(acc.coeff(&[2, 0]), 0);
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let f = MultilinearPoly::from_var_lists(3, &[&[1]]).unwrap();
        assert!(matches!(capped_coeff(&[(&f, 1)], &[1, 1], 2, &limits()), Err(Error::Dimension(_))));
    }
}
