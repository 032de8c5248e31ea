//! Seeded random symbols and densities for the verification suites.
//!
//! Coefficients are `a/b` with `a ∈ [−9, 9]` and `b ∈ {1, 2, 3}`. Symbols are
//! sparse: a handful of monomials drawn uniformly from the admissible ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::exactpoly::{rat, Monomial, Poly, Rational, Vars};
use crate::symbols::{Grading, Symbol};

/// Largest number of terms drawn for one random symbol.
pub const MAX_TERMS: usize = 8;

/// A generator keyed by `seed` and an arbitrary label, so that independent
/// streams do not depend on the order in which they are consumed.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=3))
}

fn exponent_vectors(slots: &[usize], total: u32, count: usize, exact: bool) -> Vec<Vec<u16>> {
    fn rec(pos: usize, slots: &[usize], left: u32, exact: bool, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos == slots.len() {
            if !exact || left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left {
            cur[slots[pos]] = e as u16;
            rec(pos + 1, slots, left - e, exact, cur, out);
        }
        cur[slots[pos]] = 0;
    }
    let mut out = Vec::new();
    rec(0, slots, total, exact, &mut vec![0; count], &mut out);
    out
}

/// Monomials of fiber degree exactly `k` and base degree at most `b`.
pub fn admissible_monomials(n: usize, k: u32, b: u32) -> Vec<Monomial> {
    let v = Vars::new(n);
    let base: Vec<usize> = (0..v.base_dim()).collect();
    let fiber: Vec<usize> = (0..v.base_dim()).map(|j| v.xi(j)).collect();
    let bases = exponent_vectors(&base, b, v.count(), false);
    let fibers = exponent_vectors(&fiber, k, v.count(), true);
    let mut out = Vec::with_capacity(bases.len() * fibers.len());
    for f in &fibers {
        for e in &bases {
            let exps: Vec<u16> = e.iter().zip(f).map(|(a, b)| a + b).collect();
            out.push(Monomial::from_exponents(&exps));
        }
    }
    out.sort();
    out
}

fn random_poly(rng: &mut impl Rng, n: usize, pool: &[Monomial]) -> Poly {
    let terms = rng.gen_range(1..=MAX_TERMS.min(pool.len()));
    let picks = pool.choose_multiple(rng, terms);
    Poly::from_terms(
        n,
        picks.map(|m| (m.clone(), random_coefficient(rng))).collect::<Vec<_>>(),
    )
}

/// A fiber-homogeneous symbol of degree `k` and base degree ≤ `b` in the
/// `R` grading. Deterministic in `seed`.
pub fn random_symbol(seed: u64, n: usize, k: u32, delta: &Rational, b: u32) -> Symbol {
    let mut rng = rng_for(seed, &format!("symbol/{n}/{k}/{b}"));
    random_symbol_with(&mut rng, n, k, delta, b)
}

pub fn random_symbol_with(rng: &mut impl Rng, n: usize, k: u32, delta: &Rational, b: u32) -> Symbol {
    random_symbol_in(rng, n, delta, &admissible_monomials(n, k, b))
}

/// As [`random_symbol_with`], drawing from a precomputed pool of monomials.
pub fn random_symbol_in(rng: &mut impl Rng, n: usize, delta: &Rational, pool: &[Monomial]) -> Symbol {
    Symbol::new(random_poly(rng, n, pool), delta.clone(), Grading::R).expect("n >= 1")
}

/// A density: a polynomial in the base variables of degree ≤ `d`.
pub fn random_density(rng: &mut impl Rng, n: usize, d: u32) -> Poly {
    random_poly(rng, n, &admissible_monomials(n, 0, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    #[test]
    fn deterministic() {
        let d = rat(1, 2);
        assert_eq!(random_symbol(7, 2, 3, &d, 3), random_symbol(7, 2, 3, &d, 3));
        let a: Vec<_> = (0..5).map(|i| random_symbol(i, 1, 2, &d, 2)).collect();
        assert!(a.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn constant_when_everything_is_zero() {
        let u = random_symbol(3, 1, 0, &int(1), 0);
        assert!(u.poly().degree() <= 0);
    }

    #[test]
    fn shape_of_samples() {
        let mut rng = rng_for(11, "shape");
        for k in 0..=4 {
            for _ in 0..20 {
                let u = random_symbol_with(&mut rng, 2, k, &int(1), 3);
                if !u.is_zero() {
                    assert_eq!(u.homogeneous_degree().unwrap(), Some(k));
                }
                assert!(u.poly().max_base_degree() <= 3);
                for (_, c) in u.poly().terms() {
                    assert!(c.numer().magnitude() <= &9u32.into());
                    assert!((1..=3).any(|d| c.denom() == &num::BigInt::from(d)));
                }
            }
        }
    }

    #[test]
    fn admissible_counts() {
        // n=1: 4 base monomials of degree ≤ 1, 3 fiber monomials of degree 1
        assert_eq!(admissible_monomials(1, 1, 1).len(), 12);
        assert_eq!(admissible_monomials(2, 0, 3).len(), 56);
    }
}
