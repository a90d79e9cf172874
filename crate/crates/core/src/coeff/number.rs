//! Number-theoretic predicates on the parameters r, s.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FieldElem, MultiPoly};
use crate::error::{DuaError, Result};

/// Outcome of a multiplicative dependence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dependence {
    Independent,
    /// r^i s^j = 1.
    Relation(i64, i64),
}

/// Least m ≥ 1 with x^m = 1, searched over the divisors of the field's
/// root-of-unity bound.
pub fn root_of_unity_order(x: &FieldElem) -> Result<Option<u32>> {
    match x {
        FieldElem::Rational(q) => {
            if q.is_zero() {
                return Err(DuaError::Precondition("root_of_unity_order of zero".into()));
            }
            Ok(if q.is_one() {
                Some(1)
            } else if (-q).is_one() {
                Some(2)
            } else {
                None
            })
        }
        FieldElem::Cyclotomic(c) => {
            let bound = c.field().root_of_unity_bound();
            Ok((1..=bound)
                .filter(|d| bound % d == 0)
                .find(|&d| x.pow_u(d).is_one()))
        }
        FieldElem::RationalFunction(_) => Err(DuaError::Unsupported(
            "root of unity test on a non-constant rational function".into(),
        )),
    }
}

/// Decides whether r^i s^j = 1 for some nonzero (i, j) and returns the
/// relation of least |i|+|j| (ties: i ≥ 0 first, then the smaller j).
pub fn mult_dependence(r: &FieldElem, s: &FieldElem) -> Result<Dependence> {
    if r.is_zero() || s.is_zero() {
        return Err(DuaError::Precondition("mult_dependence needs nonzero r, s".into()));
    }
    let order = |x: &FieldElem| -> Result<Option<u32>> {
        match x {
            FieldElem::RationalFunction(_) => Err(DuaError::Unsupported(
                "multiplicative dependence over a rational function field".into(),
            )),
            _ => root_of_unity_order(x),
        }
    };
    let (or, os) = (order(r)?, order(s)?);
    let non_torsion_cyclo = |x: &FieldElem, o: Option<u32>| matches!(x, FieldElem::Cyclotomic(_)) && o.is_none();
    if non_torsion_cyclo(r, or) || non_torsion_cyclo(s, os) {
        return Err(DuaError::Unsupported(
            "multiplicative dependence of non-torsion cyclotomic values".into(),
        ));
    }
    match (or, os) {
        (Some(m1), Some(m2)) => Ok(torsion_pair(r, s, m1, m2)),
        (Some(m1), None) => Ok(from_generator(m1 as i64, 0)),
        (None, Some(m2)) => Ok(from_generator(0, m2 as i64)),
        (None, None) => {
            let (qr, qs) = (r.as_rational().unwrap(), s.as_rational().unwrap());
            rational_pair(qr, qs)
        }
    }
}

/// Picks the tie-break representative of ±g, the two shortest nonzero
/// vectors of a rank-one lattice.
fn from_generator(i: i64, j: i64) -> Dependence {
    if i > 0 || (i == 0 && j < 0) {
        Dependence::Relation(i, j)
    } else {
        Dependence::Relation(-i, -j)
    }
}

/// Both roots of unity: the lattice has full rank and contains (m1, 0),
/// so a shortest vector has norm at most min(m1, m2).
fn torsion_pair(r: &FieldElem, s: &FieldElem, m1: u32, m2: u32) -> Dependence {
    let holds = |i: i64, j: i64| {
        let a = r.pow_u(i.rem_euclid(m1 as i64) as u32);
        let b = s.pow_u(j.rem_euclid(m2 as i64) as u32);
        (&a * &b).is_one()
    };
    let bound = m1.min(m2) as i64;
    for norm in 1..=bound {
        for nonneg in [true, false] {
            for j in -norm..=norm {
                let rest = norm - j.abs();
                let i = if nonneg { rest } else { -rest };
                if !nonneg && i == 0 {
                    continue;
                }
                if holds(i, j) {
                    return Dependence::Relation(i, j);
                }
            }
        }
    }
    unreachable!("(m1, 0) is always a relation")
}

/// Two rationals, neither ±1. Exponent vectors are taken over a coprime
/// base of the numerators and denominators, which has the same integer
/// kernel as a prime factorization.
fn rational_pair(r: &num_rational::BigRational, s: &num_rational::BigRational) -> Result<Dependence> {
    let parts = [r.numer().abs(), r.denom().clone(), s.numer().abs(), s.denom().clone()];
    let base = coprime_base(&parts);
    let vec_of = |num: &BigInt, den: &BigInt| -> Vec<i64> {
        base.iter()
            .map(|b| valuation(num, b) as i64 - valuation(den, b) as i64)
            .collect()
    };
    let a = vec_of(&parts[0], &parts[1]);
    let b = vec_of(&parts[2], &parts[3]);
    // Primitive kernel vector of the 2-column matrix [a b], if any.
    let k = a.iter().zip(&b).position(|(x, y)| *x != 0 || *y != 0).expect("|r| ≠ 1");
    let g = a[k].gcd(&b[k]);
    let (i0, j0) = (b[k] / g, -a[k] / g);
    if a.iter().zip(&b).any(|(x, y)| i0 * x + j0 * y != 0) {
        return Ok(Dependence::Independent);
    }
    let sign = |q: &num_rational::BigRational, e: i64| q.is_negative() && e.rem_euclid(2) == 1;
    if sign(r, i0) != sign(s, j0) {
        Ok(from_generator(2 * i0, 2 * j0))
    } else {
        Ok(from_generator(i0, j0))
    }
}

fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums.iter().filter(|x| !x.is_one()).cloned().collect();
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let (x, y) = (&base[i] / &g, &base[j] / &g);
                    base.remove(j);
                    base.remove(i);
                    base.extend([x, y, g].into_iter().filter(|v| !v.is_one()));
                    base.sort();
                    base.dedup();
                    continue 'outer;
                }
            }
        }
        return base;
    }
}

fn valuation(x: &BigInt, b: &BigInt) -> u32 {
    let mut x = x.clone();
    let mut k = 0;
    while (&x % b).is_zero() {
        x /= b;
        k += 1;
    }
    k
}

/// A square root of `x` in the constant field described by `roots`
/// (the field's roots of unity), found as ω·q with q rational; `None`
/// when no root of that shape exists. The positive rational root and the
/// earliest ω in `roots` win.
pub fn sqrt_in_field(x: &FieldElem, roots: &[FieldElem]) -> Option<FieldElem> {
    if x.is_zero() {
        return Some(FieldElem::zero());
    }
    for w in roots {
        let w2inv = w.pow(-2).ok()?;
        if let Some(c) = (x * &w2inv).as_rational() {
            if let Some(q) = rational_sqrt(c) {
                return Some(w * &FieldElem::Rational(q));
            }
        }
    }
    None
}

fn rational_sqrt(c: &num_rational::BigRational) -> Option<num_rational::BigRational> {
    if c.is_negative() {
        return None;
    }
    let (p, q) = (c.numer().sqrt(), c.denom().sqrt());
    (&p * &p == *c.numer() && &q * &q == *c.denom()).then(|| num_rational::BigRational::new(p, q))
}

/// p(a·t + b) for a univariate p.
pub fn poly_substitute_affine(p: &MultiPoly, a: &FieldElem, b: &FieldElem) -> Result<MultiPoly> {
    if p.nvars() != 1 {
        return Err(DuaError::ArityMismatch {
            expected: 1,
            found: p.nvars(),
        });
    }
    if a.is_zero() {
        return Err(DuaError::Precondition("affine substitution needs a ≠ 0".into()));
    }
    let image = &MultiPoly::var(1, 0).scale(a) + &MultiPoly::constant(1, b.clone());
    Ok(p.compose(&[image]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CyclotomicField;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> FieldElem {
        FieldElem::from_ratio(p, d)
    }

    fn brute(r: &FieldElem, s: &FieldElem, bound: i64) -> Option<(i64, i64)> {
        let mut best: Option<(i64, i64)> = None;
        for i in -bound..=bound {
            for j in -bound..=bound {
                if (i, j) == (0, 0) {
                    continue;
                }
                let v = &r.pow(i).unwrap() * &s.pow(j).unwrap();
                if !v.is_one() {
                    continue;
                }
                let key = |(i, j): (i64, i64)| (i.abs() + j.abs(), i < 0, j);
                if best.is_none_or(|b| key((i, j)) < key(b)) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    #[test]
    fn orders() {
        assert_eq!(root_of_unity_order(&q(-1, 1)).unwrap(), Some(2));
        assert_eq!(root_of_unity_order(&q(2, 1)).unwrap(), None);
        let z = FieldElem::zeta(&CyclotomicField::new(6));
        assert_eq!(root_of_unity_order(&z.pow_u(2)).unwrap(), Some(3));
        assert_eq!(root_of_unity_order(&z).unwrap(), Some(6));
        // -zeta_3 has order 6 inside Q(zeta_3)
        let w = FieldElem::zeta(&CyclotomicField::new(3));
        assert_eq!(root_of_unity_order(&-&w).unwrap(), Some(6));
        let non = &z + &FieldElem::one();
        assert_eq!(root_of_unity_order(&(&non * &non)).unwrap(), None);
    }

    #[test]
    fn dependence_examples() {
        assert_eq!(mult_dependence(&q(2, 1), &q(1, 2)).unwrap(), Dependence::Relation(1, 1));
        assert_eq!(mult_dependence(&q(2, 1), &q(3, 1)).unwrap(), Dependence::Independent);
        assert_eq!(mult_dependence(&q(-1, 1), &q(2, 1)).unwrap(), Dependence::Relation(2, 0));
        assert_eq!(mult_dependence(&q(4, 1), &q(-8, 1)).unwrap(), Dependence::Relation(3, -2));
        assert_eq!(mult_dependence(&q(-4, 1), &q(8, 1)).unwrap(), Dependence::Relation(6, -4));
        assert_eq!(mult_dependence(&q(4, 9), &q(27, 8)).unwrap(), Dependence::Relation(3, 2));
    }

    #[test]
    fn dependence_matches_brute_force_on_torsion() {
        let f = CyclotomicField::new(12);
        let z = FieldElem::zeta(&f);
        for a in 0..12 {
            for b in 0..12 {
                let (r, s) = (z.pow_u(a), z.pow_u(b));
                let got = mult_dependence(&r, &s).unwrap();
                let want = brute(&r, &s, 12).unwrap();
                assert_eq!(got, Dependence::Relation(want.0, want.1), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn non_torsion_cyclotomic_rejected() {
        let z = FieldElem::zeta(&CyclotomicField::new(6));
        let x = &z + &FieldElem::one();
        assert!(mult_dependence(&x, &q(2, 1)).unwrap_err().is_unsupported());
    }

    #[test]
    fn square_roots() {
        let rat = [FieldElem::one(), q(-1, 1)];
        assert_eq!(sqrt_in_field(&q(9, 4), &rat), Some(q(3, 2)));
        assert_eq!(sqrt_in_field(&q(2, 1), &rat), None);
        assert_eq!(sqrt_in_field(&q(-4, 1), &rat), None);
        let f = crate::coeff::FieldDescriptor::cyclotomic(4).unwrap();
        let r = sqrt_in_field(&q(-4, 1), &f.roots_of_unity()).unwrap();
        assert_eq!(&r * &r, q(-4, 1));
    }

    #[test]
    fn affine_substitution_examples() {
        let t = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let three = MultiPoly::constant(1, q(3, 1));
        let p = &(&t * &t) + &three;
        let got = poly_substitute_affine(&p, &q(2, 1), &q(-1, 1)).unwrap();
        let four = MultiPoly::constant(1, q(4, 1));
        let want = &(&(&four * &(&t * &t)) - &(&four * &t)) + &four;
        assert_eq!(got, want);
        let sq = poly_substitute_affine(&(&t * &t), &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!(sq, &(&(&t * &t) + &(&t + &t)) + &one);
        assert!(poly_substitute_affine(&MultiPoly::var(2, 0), &q(1, 1), &q(0, 1)).is_err());
    }

    fn small_rational() -> impl Strategy<Value = FieldElem> {
        (-40i64..=40, 1i64..=40)
            .prop_filter("nonzero", |(p, _)| *p != 0)
            .prop_map(|(p, d)| q(p, d))
    }

    proptest! {
        #[test]
        fn rational_dependence_agrees_with_search(r in small_rational(), s in small_rational()) {
            let got = mult_dependence(&r, &s).unwrap();
            match (got, brute(&r, &s, 20)) {
                (Dependence::Independent, None) => {}
                (Dependence::Relation(i, j), Some(w)) => {
                    prop_assert_eq!((i, j), w);
                }
                (Dependence::Relation(i, j), None) => {
                    // relation outside the search box; still must hold
                    prop_assert!(i.abs() > 20 || j.abs() > 20);
                    prop_assert!((&r.pow(i).unwrap() * &s.pow(j).unwrap()).is_one());
                }
                (Dependence::Independent, Some(w)) => prop_assert!(false, "missed {:?}", w),
            }
        }

        #[test]
        fn affine_substitution_inverts(c in proptest::collection::vec(-5i64..=5, 1..5), a in 1i64..=4, an in any::<bool>(), b in -4i64..=4) {
            let p = MultiPoly::from_terms(1, c.iter().enumerate().map(|(k, &x)| (vec![k as u32], q(x, 1))));
            let a = q(if an { -a } else { a }, 1);
            let b = q(b, 1);
            let once = poly_substitute_affine(&p, &a, &b).unwrap();
            let ainv = a.try_inv().unwrap();
            let back = poly_substitute_affine(&once, &ainv, &-&(&b * &ainv)).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
