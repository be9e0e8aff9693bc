//! Seeded generators for property checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{AlgebraElement, Monomial};
use crate::scalar::Scalar;
use crate::word::Word;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, n: usize, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| rng.random_range(1..=n as u8)).collect())
}

fn small_rational(rng: &mut impl Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-3i64..=3)),
        BigInt::from(rng.random_range(1i64..=4)),
    )
}

/// Nonzero Gaussian rational with numerators in `-3..=3`, denominators in `1..=4`.
pub fn random_coefficient(rng: &mut impl Rng) -> Scalar {
    loop {
        let re = small_rational(rng);
        let im = if rng.random_bool(0.3) {
            small_rational(rng)
        } else {
            BigRational::from_integer(0.into())
        };
        let c = Scalar::new(re, im);
        if c != Scalar::from_int(0) {
            return c;
        }
    }
}

/// Up to `max_terms` monomials with words of length at most `max_len`.
pub fn random_element(rng: &mut impl Rng, n: usize, max_terms: usize, max_len: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n);
    for _ in 0..rng.random_range(1..=max_terms) {
        let (li, lj) = (rng.random_range(0..=max_len), rng.random_range(0..=max_len));
        let i = random_word(rng, n, li);
        let j = random_word(rng, n, lj);
        out.add_monomial(Monomial::new(i, j), random_coefficient(rng));
    }
    out
}

/// A combination of `terms` monomials from `A_{p,l}`.
pub fn random_homogeneous(rng: &mut impl Rng, n: usize, p: usize, l: usize, terms: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n);
    for _ in 0..terms {
        let i = random_word(rng, n, p);
        let j = random_word(rng, n, l);
        out.add_monomial(Monomial::new(i, j), random_coefficient(rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_reproduce() {
        let a = random_element(&mut rng(7), 2, 6, 4);
        let b = random_element(&mut rng(7), 2, 6, 4);
        assert_eq!(a.terms(), b.terms());
        let h = random_homogeneous(&mut rng(1), 3, 2, 1, 5);
        assert!(h.terms().keys().all(|m| m.left.len() == 2 && m.right.len() == 1));
        assert!(h.terms().keys().all(|m| m.left.max_letter() <= 3));
    }
}
