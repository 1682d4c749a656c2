use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Subset of variables `x_1..x_N`, bit `i` standing for `x_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        Monomial(vars.into_iter().fold(0, |m, v| m | 1 << (v - 1)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, var: usize) -> bool {
        self.0 >> (var - 1) & 1 == 1
    }

    /// 1-based variable indices in increasing order.
    pub fn vars(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }
}

/// A polynomial linear in each variable with every coefficient equal to 1,
/// stored as its sorted set of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    num_vars: usize,
    monomials: Vec<Monomial>,
}

impl MultilinearPoly {
    /// Builds the polynomial from monomials; duplicates are rejected because
    /// they would produce a coefficient of 2.
    pub fn new(num_vars: usize, mut monomials: Vec<Monomial>) -> Result<Self> {
        if num_vars > 32 {
            return Err(Error::Precondition("at most 32 variables".into()));
        }
        let allowed = if num_vars == 32 { u32::MAX } else { (1u32 << num_vars) - 1 };
        if let Some(m) = monomials.iter().find(|m| m.0 & !allowed != 0) {
            return Err(Error::Precondition(format!("monomial {:?} uses a variable beyond x_{num_vars}", m.vars())));
        }
        monomials.sort_unstable();
        if monomials.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("repeated monomial: coefficients must be 0 or 1".into()));
        }
        Ok(MultilinearPoly { num_vars, monomials })
    }

    pub fn zero(num_vars: usize) -> Self {
        MultilinearPoly { num_vars, monomials: Vec::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        MultilinearPoly { num_vars, monomials: vec![Monomial::ONE] }
    }

    /// Builds from lists of 1-based variable indices.
    pub fn from_var_lists(num_vars: usize, terms: &[&[usize]]) -> Result<Self> {
        Self::new(num_vars, terms.iter().map(|t| Monomial::from_vars(t.iter().copied())).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Number of monomials.
    pub fn term_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.monomials.iter().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.monomials.iter().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Variables occurring in at least one monomial.
    pub fn support(&self) -> Monomial {
        Monomial(self.monomials.iter().fold(0, |acc, m| acc | m.0))
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.support().contains(var)
    }

    /// Value at `point` (indexed by variable - 1).
    pub fn eval(&self, field: &Field, point: &[FieldElement]) -> FieldElement {
        debug_assert!(point.len() >= self.num_vars);
        let mut acc = FieldElement::ZERO;
        for m in &self.monomials {
            let mut term = FieldElement::ONE;
            let mut bits = m.0;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                term = field.mul(term, point[i]);
                if term.is_zero() {
                    break;
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }

    /// Renames variables: `map[i]` is the new 1-based index of variable `i + 1`.
    pub fn relabel(&self, num_vars: usize, map: &[usize]) -> Result<Self> {
        let monomials =
            self.monomials.iter().map(|m| Monomial::from_vars(m.vars().into_iter().map(|v| map[v - 1]))).collect();
        Self::new(num_vars, monomials)
    }
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Prints monomials as `α₂α₃α₄α₅` joined by ` + `, sorted by their
/// increasing variable lists; `0` and `1` for the trivial polynomials.
impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<Vec<usize>> = self.monomials.iter().map(|m| m.vars()).collect();
        terms.sort();
        let rendered: Vec<String> = terms
            .iter()
            .map(|vars| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter().map(|&v| format!("α{}", subscript(v))).collect()
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
