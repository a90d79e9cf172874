//! Affine equivalence of univariate polynomials: φ₁(at + b) = η·φ₂(t).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coeff::{poly_substitute_affine, FieldDescriptor, FieldElem, MultiPoly};
use crate::error::{DuaError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineParams {
    #[serde(serialize_with = "crate::json::ser_display")]
    pub eta: FieldElem,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub a: FieldElem,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub b: FieldElem,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AffineResult {
    Found(AffineParams),
    None,
    /// The root extraction left the implemented fields.
    Undecided(String),
}

/// φ₁(at + b) = η·φ₂(t) exactly.
pub fn verify_affine(p1: &MultiPoly, p2: &MultiPoly, x: &AffineParams) -> Result<bool> {
    Ok(poly_substitute_affine(p1, &x.a, &x.b)? == p2.scale(&x.eta))
}

fn coeffs(p: &MultiPoly) -> Vec<FieldElem> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    (0..=deg).map(|e| p.coeff(&[e as u32])).collect()
}

/// Rational g-th root, if any.
pub fn rational_root(q: &BigRational, g: u32) -> Option<BigRational> {
    if q.is_negative() {
        if g.is_multiple_of(2) {
            return None;
        }
        return rational_root(&-q, g).map(|r| -r);
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(g);
        (num_traits::pow(r.clone(), g as usize) == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

fn tie_key(x: &AffineParams) -> (u8, BigInt, BigRational, u8) {
    let big = || (1u8, BigInt::zero(), BigRational::zero(), 1u8);
    let (Some(a), Some(b)) = (x.a.as_rational(), x.b.as_rational()) else {
        return big();
    };
    (0, a.denom().clone(), b.abs(), u8::from(a.is_negative()))
}

/// Decides whether φ₁(at + b) = η·φ₂(t) for some η, a ≠ 0 and b.
pub fn affine_equiv(p1: &MultiPoly, p2: &MultiPoly, field: &FieldDescriptor) -> Result<AffineResult> {
    for p in [p1, p2] {
        if p.nvars() != 1 {
            return Err(DuaError::ArityMismatch {
                expected: 1,
                found: p.nvars(),
            });
        }
        if p.terms().any(|(_, c)| matches!(c, FieldElem::RationalFunction(_))) {
            return Err(DuaError::Unsupported("affine equivalence over a function field".into()));
        }
    }
    let one = FieldElem::one();
    let zero = FieldElem::zero();
    match (p1.is_zero(), p2.is_zero()) {
        (true, true) => {
            return Ok(AffineResult::Found(AffineParams {
                eta: one.clone(),
                a: one,
                b: zero,
            }))
        }
        (true, false) | (false, true) => return Ok(AffineResult::None),
        _ => {}
    }
    let (d1, d2) = (p1.total_degree().unwrap(), p2.total_degree().unwrap());
    if d1 != d2 {
        return Ok(AffineResult::None);
    }
    let deg = d1 as usize;
    if deg == 0 {
        let eta = p1.constant_value().unwrap().try_div(&p2.constant_value().unwrap())?;
        return Ok(AffineResult::Found(AffineParams { eta, a: one, b: zero }));
    }

    // Shift by h so that the t^{deg-1} coefficient vanishes.
    let depress = |p: &MultiPoly| -> Result<(FieldElem, MultiPoly)> {
        let c = coeffs(p);
        let h = -(c[deg - 1].try_div(&(&FieldElem::from_i64(deg as i64) * &c[deg]))?);
        Ok((h.clone(), poly_substitute_affine(p, &one, &h)?))
    };
    let (h1, q1) = depress(p1)?;
    let (h2, q2) = depress(p2)?;
    let (c1, c2) = (coeffs(&q1), coeffs(&q2));
    let support1: Vec<usize> = (0..=deg).filter(|e| !c1[*e].is_zero()).collect();
    let support2: Vec<usize> = (0..=deg).filter(|e| !c2[*e].is_zero()).collect();
    if support1 != support2 {
        return Ok(AffineResult::None);
    }

    // q₁(a·t) = η q₂(t): a^{deg−e} = c1_e c2_deg / (c1_deg c2_e) for e < deg.
    let lower: Vec<usize> = support1.iter().copied().filter(|e| *e < deg).collect();
    let candidates_a: Vec<FieldElem> = if lower.is_empty() {
        // q₁ and q₂ are monomials, so every a works; pick one making b small.
        return Ok(AffineResult::Found(monomial_choice(&c1[deg], &c2[deg], &h1, &h2, deg)?));
    } else {
        let mut ratios = Vec::new();
        for &e in &lower {
            let ce = (&c1[e] * &c2[deg]).try_div(&(&c1[deg] * &c2[e]))?;
            ratios.push(((deg - e) as i64, ce));
        }
        // a^G = Π ratio_e^{x_e} with Σ x_e gap_e = G.
        let (mut g, mut acc) = (ratios[0].0, ratios[0].1.clone());
        for (gap, ce) in &ratios[1..] {
            let (gg, x, y) = ext_gcd(g, *gap);
            acc = &acc.pow(x)? * &ce.pow(y)?;
            g = gg;
        }
        for (gap, ce) in &ratios {
            if acc.pow(gap / g)? != *ce {
                return Ok(AffineResult::None);
            }
        }
        let found = roots_of(&acc, g as u32, field);
        if found.is_empty() {
            return Ok(match field.constants() {
                FieldDescriptor::Rational => AffineResult::None,
                _ => AffineResult::Undecided(format!("no root of a^{g} = {acc} of the form (root of unity)*(rational)")),
            });
        }
        found
    };

    let mut sols = Vec::new();
    for a in candidates_a {
        let eta = (&c1[deg] * &a.pow_u(deg as u32)).try_div(&c2[deg])?;
        let b = &h1 - &(&a * &h2);
        let x = AffineParams { eta, a, b };
        if verify_affine(p1, p2, &x)? {
            sols.push(x);
        }
    }
    sols.sort_by_key(tie_key);
    Ok(sols.into_iter().next().map_or(AffineResult::None, AffineResult::Found))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// All a = ω·q with ω a root of unity of the field and q a positive
/// rational, such that a^g = c.
fn roots_of(c: &FieldElem, g: u32, field: &FieldDescriptor) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = Vec::new();
    for w in field.roots_of_unity() {
        let Ok(rest) = c.try_div(&w.pow_u(g)) else { continue };
        let Some(q) = rest.as_rational() else { continue };
        if !q.is_positive() {
            continue;
        }
        if let Some(root) = rational_root(q, g) {
            let a = &w * &FieldElem::from(root);
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    out
}

/// Depressed monomials c₁t^D and c₂t^D: any a ≠ 0 works with b = h₁ − a·h₂.
/// Prefers integer a, then the smallest |b|, then positive a.
fn monomial_choice(c1: &FieldElem, c2: &FieldElem, h1: &FieldElem, h2: &FieldElem, deg: usize) -> Result<AffineParams> {
    let mut a = FieldElem::one();
    if let (Some(r1), Some(r2)) = (h1.as_rational(), h2.as_rational()) {
        if !r2.is_zero() {
            let target = r1 / r2;
            let mut best: Option<(BigRational, bool, BigInt)> = None;
            for cand in [target.floor().to_integer(), target.ceil().to_integer()] {
                let cand = if cand.is_zero() { BigInt::one() } else { cand };
                for c in [cand.clone(), -cand] {
                    let b = (r1 - r2 * BigRational::from_integer(c.clone())).abs();
                    let key = (b, c.is_negative(), c.clone());
                    if best.as_ref().is_none_or(|k| (&key.0, key.1) < (&k.0, k.1)) {
                        best = Some(key);
                    }
                }
            }
            a = FieldElem::from(BigRational::from_integer(best.unwrap().2));
        }
    }
    let eta = (c1 * &a.pow_u(deg as u32)).try_div(c2)?;
    let b = h1 - &(&a * h2);
    Ok(AffineParams { eta, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    fn c(x: i64) -> MultiPoly {
        MultiPoly::constant(1, x.into())
    }

    fn found(p1: &MultiPoly, p2: &MultiPoly) -> AffineParams {
        match affine_equiv(p1, p2, &FieldDescriptor::Rational).unwrap() {
            AffineResult::Found(x) => {
                assert!(verify_affine(p1, p2, &x).unwrap());
                x
            }
            other => panic!("expected a solution, got {other:?}"),
        }
    }

    #[test]
    fn square_vs_shifted_square() {
        let p2 = (&t() + &c(1)).pow(2);
        let x = found(&t().pow(2), &p2);
        assert_eq!((x.eta, x.a, x.b), (1.into(), 1.into(), 1.into()));
    }

    #[test]
    fn square_vs_square_plus_one() {
        let p2 = &t().pow(2) + &c(1);
        assert_eq!(affine_equiv(&t().pow(2), &p2, &FieldDescriptor::Rational).unwrap(), AffineResult::None);
    }

    #[test]
    fn identity_and_constants() {
        let x = found(&t(), &t());
        assert_eq!((x.eta, x.a, x.b), (1.into(), 1.into(), 0.into()));
        let x = found(&c(6), &c(3));
        assert_eq!(x.eta, 2.into());
        assert_eq!(affine_equiv(&t(), &c(1), &FieldDescriptor::Rational).unwrap(), AffineResult::None);
    }

    #[test]
    fn needs_cube_root() {
        // φ₁(t) = t³ + t, φ₂(t) = t³ + 4t: a² = 1/4, so a = 1/2 and η = 1/8.
        let p1 = &t().pow(3) + &t();
        let p2 = &t().pow(3) + &t().scale(&4.into());
        let x = found(&p1, &p2);
        assert_eq!(x.a, FieldElem::from_ratio(1, 2));
        assert_eq!(x.eta, FieldElem::from_ratio(1, 8));
        // φ₂ = t³ + 2t: a² = 1/2 has no rational root, but √2 lies in ℚ(ζ₈)
        let p3 = &t().pow(3) + &t().scale(&2.into());
        assert_eq!(affine_equiv(&p1, &p3, &FieldDescriptor::Rational).unwrap(), AffineResult::None);
        let f = FieldDescriptor::cyclotomic(8).unwrap();
        assert!(matches!(affine_equiv(&p1, &p3, &f).unwrap(), AffineResult::Undecided(_)));
    }

    #[test]
    fn rational_roots() {
        let q = BigRational::new(8.into(), 27.into());
        assert_eq!(rational_root(&q, 3), Some(BigRational::new(2.into(), 3.into())));
        assert_eq!(rational_root(&-q.clone(), 3), Some(BigRational::new((-2).into(), 3.into())));
        assert_eq!(rational_root(&q, 2), None);
    }
}
