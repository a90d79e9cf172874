//! Seeded random scalars and elements for property batches.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, Element, Monomial};
use crate::algebra::t_monomials;
use crate::coeff::{FieldDescriptor, FieldElem, MultiPoly, RatFunc};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q with |p| ≤ 4, 1 ≤ q ≤ 3.
pub fn small_rational(rng: &mut Rng8) -> FieldElem {
    FieldElem::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn small_nonzero_rational(rng: &mut Rng8) -> FieldElem {
    loop {
        let c = small_rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A small value of the field: a + bζ over ℚ(ζ), and occasionally a
/// linear polynomial in the function variables.
pub fn random_scalar(field: &FieldDescriptor, rng: &mut Rng8) -> FieldElem {
    let mut c = small_rational(rng);
    if let Some(z) = field.zeta() {
        if rng.gen_bool(0.5) {
            c = &c + &(&small_rational(rng) * &z);
        }
    }
    if let Some(arity) = field.function_arity() {
        if arity > 0 && rng.gen_bool(0.3) {
            let v = FieldElem::from_ratfunc(RatFunc::from_poly(MultiPoly::var(arity, rng.gen_range(0..arity))));
            c = &c + &(&small_nonzero_rational(rng) * &v);
        }
    }
    c
}

pub fn random_nonzero_scalar(field: &FieldDescriptor, rng: &mut Rng8) -> FieldElem {
    loop {
        let c = random_scalar(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// PBW monomials with i + 2j + k + |m| ≤ `max` (unweighted word length).
pub fn word_degree_monomials(n: usize, max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=max {
        for j in 0..=(max - i) / 2 {
            for k in 0..=max - i - 2 * j {
                for t in t_monomials(n, max - i - 2 * j - k) {
                    out.push(Monomial::new(i, j, k, t));
                }
            }
        }
    }
    out
}

/// A combination of up to `max_terms` monomials of word length ≤ `max_degree`.
pub fn random_element(spec: &Arc<AlgebraSpec>, rng: &mut Rng8, max_degree: u32, max_terms: usize) -> Element {
    let pool = word_degree_monomials(spec.n(), max_degree);
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let m = pool[rng.gen_range(0..pool.len())].clone();
            (m, random_scalar(spec.field(), rng))
        })
        .collect();
    Element::from_terms(spec, terms)
}

pub fn random_nonzero_element(spec: &Arc<AlgebraSpec>, rng: &mut Rng8, max_degree: u32, max_terms: usize) -> Element {
    loop {
        let e = random_element(spec, rng, max_degree, max_terms);
        if !e.is_zero() {
            return e;
        }
    }
}

/// `count` pairs drawn from one seed.
pub fn random_pairs(spec: &Arc<AlgebraSpec>, seed: u64, count: usize, max_degree: u32) -> Vec<(Element, Element)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            (
                random_nonzero_element(spec, &mut r, max_degree, 3),
                random_nonzero_element(spec, &mut r, max_degree, 3),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let spec = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        let a = random_pairs(&spec, 7, 5, 3);
        let b = random_pairs(&spec, 7, 5, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn word_degree_count() {
        // n = 0, max 2: 1, u, d, u², ud, d², du
        assert_eq!(word_degree_monomials(0, 2).len(), 7);
    }
}
