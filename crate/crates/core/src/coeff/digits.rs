use serde::Serialize;

/// Base-`p` expansion, least significant digit first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitVector {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl DigitVector {
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }

    /// Digit `i`, zero beyond the canonical length.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }
}

pub fn base_p_digits(mut n: u64, p: u64) -> DigitVector {
    assert!(p >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    DigitVector { base: p, digits }
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // n, k < p: the factorials involved are invertible mod p.
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// `C(n, k) mod p`, with a flag for the `k > n` convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomResidue {
    pub value: u64,
    /// Set when `k > n`; `value` is then 0 by convention.
    pub k_exceeds_n: bool,
}

/// `C(n, k) mod p` as the product of digit-wise binomials (Lucas).
pub fn lucas_binom(n: u64, k: u64, p: u64) -> BinomResidue {
    if k > n {
        return BinomResidue { value: 0, k_exceeds_n: true };
    }
    let (dn, dk) = (base_p_digits(n, p), base_p_digits(k, p));
    let value = (0..dn.digits.len()).fold(1, |acc, i| acc * small_binom_mod(dn.digit(i), dk.digit(i), p) % p);
    BinomResidue { value, k_exceeds_n: false }
}

/// Whether adding the base-`p` digits of `a` and `b` produces no carry.
pub fn adds_without_carry(a: u64, b: u64, p: u64) -> bool {
    let (da, db) = (base_p_digits(a, p), base_p_digits(b, p));
    let len = da.digits.len().max(db.digits.len());
    (0..len).all(|i| da.digit(i) + db.digit(i) < p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::{One, ToPrimitive};

    fn exact_binom(n: u64, k: u64) -> BigUint {
        (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn digit_examples() {
        assert_eq!(base_p_digits(8, 3).digits, vec![2, 2]);
        assert!(base_p_digits(0, 5).digits.is_empty());
        for (p, s) in [(2u64, 3u32), (3, 2), (5, 2), (3, 3)] {
            let q = p.pow(s);
            assert_eq!(base_p_digits(q - 1, p).digits, vec![p - 1; s as usize]);
        }
    }

    #[test]
    fn digits_reconstruct() {
        for p in [2, 3, 5, 7] {
            for n in 0..500 {
                assert_eq!(base_p_digits(n, p).value(), n);
            }
        }
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binom(4, 2, 2).value, 0);
        assert_eq!(lucas_binom(7, 3, 2).value, 1);
        assert_eq!(exact_binom(7, 3).to_u64(), Some(35));
        let over = lucas_binom(3, 4, 5);
        assert_eq!(over, BinomResidue { value: 0, k_exceeds_n: true });
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2u64, 3, 5, 7] {
            for n in 0..=60 {
                for k in 0..=n {
                    let exact = exact_binom(n, k) % p;
                    assert_eq!(lucas_binom(n, k, p).value, exact.to_u64().unwrap(), "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn prime_power_binomials_vanish() {
        for p in [2u64, 3, 5] {
            for i in 1..=3 {
                let pi = p.pow(i);
                for k in 1..pi {
                    assert_eq!(lucas_binom(pi, k, p).value, 0);
                    assert_eq!(exact_binom(pi, k) % p, BigUint::from(0u32));
                }
            }
        }
    }
}
