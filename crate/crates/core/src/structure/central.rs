//! Centrality, scalar twists and the β = 0 zero divisor.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{commutator, AlgebraSpec, Element};
use crate::coeff::FieldElem;
use crate::error::{DuaError, Result};

/// Outcome of [`is_central`]: on failure, the generator and the nonzero
/// commutator [a, g].
#[derive(Clone, Debug)]
pub struct Centrality {
    pub central: bool,
    pub witness: Option<(String, Element)>,
}

/// True iff a commutes with u, d and every tᵢ.
pub fn is_central(a: &Element) -> Centrality {
    let spec = a.spec();
    let mut gens = vec![("u".to_string(), Element::u(spec)), ("d".to_string(), Element::d(spec))];
    for i in 0..spec.n() {
        gens.push((format!("t{}", i + 1), Element::t(spec, i).unwrap()));
    }
    for (name, g) in gens {
        let c = commutator(a, &g).unwrap();
        if !c.is_zero() {
            return Centrality {
                central: false,
                witness: Some((name, c)),
            };
        }
    }
    Centrality {
        central: true,
        witness: None,
    }
}

/// Scalars with N·u = c_u·u·N and N·d = c_d·d·N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistCertificate {
    #[serde(serialize_with = "crate::json::ser_display")]
    pub c_u: FieldElem,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub c_d: FieldElem,
}

/// c with lhs = c·rhs, read off one monomial and checked globally.
fn ratio(lhs: &Element, rhs: &Element) -> Option<FieldElem> {
    let Some((m, b)) = rhs.terms().iter().next_back() else {
        return lhs.is_zero().then(FieldElem::one);
    };
    let c = lhs.coeff(m).try_div(b).ok()?;
    if c.is_zero() || *lhs != rhs.scale(&c) {
        None
    } else {
        Some(c)
    }
}

/// Certifies N as normal with scalar twists, or returns `None`.
pub fn twist_normal_check(n: &Element) -> Option<TwistCertificate> {
    if n.is_zero() {
        return None;
    }
    let spec = n.spec();
    let (u, d) = (Element::u(spec), Element::d(spec));
    let c_u = ratio(&(n * &u), &(&u * n))?;
    let c_d = ratio(&(n * &d), &(&d * n))?;
    Some(TwistCertificate { c_u, c_d })
}

/// (d, du − α·ud − φ), whose product vanishes when β = 0.
pub fn zero_divisor_witness(spec: &Arc<AlgebraSpec>) -> Result<(Element, Element)> {
    if !spec.beta().is_zero() {
        return Err(DuaError::Precondition("zero-divisor witness needs beta = 0".into()));
    }
    let d = Element::d(spec);
    let ud = &Element::u(spec) * &d;
    let b = &(&Element::du(spec) - &ud.scale(spec.alpha())) - &Element::from_poly(spec, spec.phi());
    Ok((d, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{FieldDescriptor, MultiPoly};
    use crate::structure::make_h;

    fn spec_ab(alpha: i64, beta: i64, phi: MultiPoly) -> Arc<AlgebraSpec> {
        AlgebraSpec::from_alpha_beta(1, FieldDescriptor::Rational, alpha.into(), beta.into(), phi).unwrap()
    }

    #[test]
    fn centrality() {
        let s = spec_ab(2, -1, MultiPoly::var(1, 0));
        assert!(is_central(&Element::t(&s, 0).unwrap()).central);
        let c = is_central(&Element::d(&s));
        assert!(!c.central);
        assert_eq!(c.witness.unwrap().0, "u");
        let (du, ud) = (Element::du(&s), &Element::u(&s) * &Element::d(&s));
        let t = Element::t(&s, 0).unwrap();
        let x = &(&du - &ud).pow(2) - &(&t * &(&du + &ud));
        assert!(is_central(&x).central);
    }

    #[test]
    fn twists() {
        let s = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        let h = make_h(&s).unwrap();
        let cert = twist_normal_check(&h).unwrap();
        assert_eq!(cert.c_u, FieldElem::from_i64(3));
        assert_eq!(cert.c_d, FieldElem::from_ratio(1, 3));
        let one = TwistCertificate {
            c_u: FieldElem::one(),
            c_d: FieldElem::one(),
        };
        assert_eq!(twist_normal_check(&Element::t(&s, 0).unwrap()), Some(one));
        assert_eq!(twist_normal_check(&(&Element::u(&s) + &Element::d(&s))), None);
    }

    #[test]
    fn zero_divisors() {
        for (alpha, phi) in [(1, MultiPoly::var(1, 0)), (0, MultiPoly::zero(1)), (2, MultiPoly::var(1, 0).pow(2))] {
            let s = spec_ab(alpha, 0, phi);
            let (a, b) = zero_divisor_witness(&s).unwrap();
            assert!(!a.is_zero() && !b.is_zero());
            assert!((&a * &b).is_zero());
        }
        assert!(zero_divisor_witness(&spec_ab(1, 1, MultiPoly::zero(1))).is_err());
    }
}
