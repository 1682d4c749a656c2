use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::MultilinearPoly;

/// Sparse polynomial with exact integer coefficients. Used where residues
/// would hide the point: the integer examples and as a direct-expansion
/// oracle for the capped engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(num_vars: usize) -> Self {
        IntPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::from_terms(num_vars, &[(vec![0; num_vars], 1)])
    }

    /// Sums `(exponents, coefficient)` pairs; zero results are dropped.
    pub fn from_terms(num_vars: usize, terms: &[(Vec<u32>, i64)]) -> Self {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), num_vars, "exponent vector length");
            p.add_term(exps.clone(), BigInt::from(*c));
        }
        p
    }

    pub fn from_multilinear(f: &MultilinearPoly) -> Self {
        let n = f.num_vars();
        let terms: Vec<(Vec<u32>, i64)> =
            f.monomials().iter().map(|m| ((1..=n).map(|v| m.contains(v) as u32).collect(), 1)).collect();
        Self::from_terms(n, &terms)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Linear in every variable with all nonzero coefficients equal to 1.
    pub fn is_multilinear_01(&self) -> bool {
        self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x <= 1))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.num_vars, other.num_vars, "variable count");
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        (0..k).fold(Self::one(self.num_vars), |acc, _| acc.mul(self))
    }
}
