//! Seeded generators for multilinear 0/1 polynomials.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, MultilinearPoly};

pub const DEFAULT_SEED: u64 = 0x00c2_5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each of the `2^n` monomials is kept independently with probability `density`.
pub fn random_multilinear<R: Rng>(rng: &mut R, n: usize, density: f64) -> MultilinearPoly {
    let monomials = (0..1u32 << n).filter(|_| rng.gen_bool(density)).map(Monomial).collect();
    MultilinearPoly::new(n, monomials).expect("distinct subsets")
}

/// Random homogeneous polynomial of degree `d` in `n` variables, nonzero.
pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, d: usize) -> MultilinearPoly {
    let all: Vec<Monomial> = (0..1u32 << n).map(Monomial).filter(|m| m.degree() == d).collect();
    let mut picked: Vec<Monomial> = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if picked.is_empty() {
        picked.push(*all.choose(rng).expect("0 <= d <= n"));
    }
    MultilinearPoly::new(n, picked).expect("distinct subsets")
}

/// Random polynomial in `n >= 1` variables of total degree exactly `n`:
/// `x_1 ⋯ x_n` plus a random set of lower-degree monomials.
pub fn random_full_degree<R: Rng>(rng: &mut R, n: usize) -> MultilinearPoly {
    let top = Monomial((1u32 << n) - 1);
    let mut monomials: Vec<Monomial> = (0..top.0).map(Monomial).filter(|_| rng.gen_bool(0.5)).collect();
    monomials.push(top);
    MultilinearPoly::new(n, monomials).expect("distinct subsets")
}

/// A pair `(P, Q)` in `n` variables. Half of the pairs are homogeneous of
/// complementary degrees `d` and `n - d`, the rest arbitrary.
pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (MultilinearPoly, MultilinearPoly) {
    if rng.gen_bool(0.5) {
        let d = rng.gen_range(0..=n);
        (random_homogeneous(rng, n, d), random_homogeneous(rng, n, n - d))
    } else {
        (random_multilinear(rng, n, 0.4), random_multilinear(rng, n, 0.4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generators_replay() {
        let a: Vec<_> = (0..5).map(|n| random_full_degree(&mut rng(7), n + 1)).collect();
        let b: Vec<_> = (0..5).map(|n| random_full_degree(&mut rng(7), n + 1)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn shapes() {
        let mut r = rng(DEFAULT_SEED);
        for n in 1..=5 {
            assert_eq!(random_full_degree(&mut r, n).degree(), Some(n));
            for d in 0..=n {
                let h = random_homogeneous(&mut r, n, d);
                assert!(h.is_homogeneous());
                assert_eq!(h.degree(), Some(d));
            }
        }
    }
}
