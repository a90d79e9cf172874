//! Specialization tᵢ ↦ λᵢ and localization at K[t]∖{0}.

use std::sync::Arc;

use crate::algebra::{AlgebraSpec, Element, Monomial, SpecParams};
use crate::coeff::{FieldDescriptor, FieldElem, MultiPoly, RatFunc};
use crate::error::{DuaError, Result};

fn check_point(spec: &AlgebraSpec, lambda: &[FieldElem]) -> Result<()> {
    if lambda.len() != spec.n() {
        return Err(DuaError::ArityMismatch {
            expected: spec.n(),
            found: lambda.len(),
        });
    }
    for l in lambda {
        if !spec.field().contains(l) {
            return Err(DuaError::FieldMismatch(format!("{l} is not in {}", spec.field())));
        }
    }
    Ok(())
}

/// The classical spec A(α, β, φ(λ)) with n = 0.
pub fn specialize_spec(spec: &AlgebraSpec, lambda: &[FieldElem]) -> Result<Arc<AlgebraSpec>> {
    check_point(spec, lambda)?;
    let gamma = spec.phi().eval(lambda);
    let mut p = SpecParams::new(0, spec.field().clone(), MultiPoly::constant(0, gamma)).memo_capacity(spec.memo_capacity());
    let old = spec.params();
    p.alpha = old.alpha;
    p.beta = old.beta;
    p.r = old.r;
    p.s = old.s;
    p.build()
}

/// The image of `a` in `target`, which must come from [`specialize_spec`].
pub fn specialize_into(a: &Element, lambda: &[FieldElem], target: &Arc<AlgebraSpec>) -> Result<Element> {
    check_point(a.spec(), lambda)?;
    if target.n() != 0 {
        return Err(DuaError::ArityMismatch {
            expected: 0,
            found: target.n(),
        });
    }
    let terms = a.terms().iter().map(|(m, c)| {
        let mut v = c.clone();
        for (l, e) in lambda.iter().zip(&m.t) {
            v = &v * &l.pow_u(*e);
        }
        (Monomial::new(m.i, m.j, m.k, Vec::new()), v)
    });
    Ok(Element::from_terms(target, terms))
}

/// (image of `a`, classical spec).
pub fn specialize(a: &Element, lambda: &[FieldElem]) -> Result<(Element, Arc<AlgebraSpec>)> {
    let target = specialize_spec(a.spec(), lambda)?;
    Ok((specialize_into(a, lambda, &target)?, target))
}

/// The classical spec over K(t₁..tₙ) with γ = φ as a constant.
pub fn localize_spec(spec: &AlgebraSpec) -> Result<Arc<AlgebraSpec>> {
    if spec.n() == 0 {
        return spec.params().build();
    }
    if spec.field().function_arity().is_some() {
        return Err(DuaError::Unsupported("localizing a spec already over a function field".into()));
    }
    let field = FieldDescriptor::rational_function(spec.n(), spec.field().clone())?;
    let gamma = FieldElem::from_ratfunc(RatFunc::from_poly(spec.phi().clone()));
    let mut p = SpecParams::new(0, field, MultiPoly::constant(0, gamma)).memo_capacity(spec.memo_capacity());
    let old = spec.params();
    p.alpha = old.alpha;
    p.beta = old.beta;
    p.r = old.r;
    p.s = old.s;
    p.build()
}

/// Moves the t-part of every monomial into the coefficient.
pub fn localize_element(a: &Element, target: &Arc<AlgebraSpec>) -> Result<Element> {
    let n = a.spec().n();
    if target.n() != 0 || target.field().function_arity() != Some(n) {
        return Err(DuaError::SpecMismatch);
    }
    let terms = a.terms().iter().map(|(m, c)| {
        let p = MultiPoly::monomial(n, m.t.clone(), c.clone());
        (Monomial::new(m.i, m.j, m.k, Vec::new()), FieldElem::from_ratfunc(RatFunc::from_poly(p)))
    });
    Ok(Element::from_terms(target, terms))
}

/// Evaluates the function-field coefficients of `a` at `point`; fails where
/// a denominator vanishes.
pub fn evaluate_coefficients(a: &Element, point: &[FieldElem], target: &Arc<AlgebraSpec>) -> Result<Element> {
    let mut terms = Vec::new();
    for (m, c) in a.terms() {
        let v = match c {
            FieldElem::RationalFunction(r) => r.eval(point).ok_or(DuaError::DivisionByZero)?,
            other => other.clone(),
        };
        terms.push((m.clone(), v));
    }
    Ok(Element::from_terms(target, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_central, make_hk};

    #[test]
    fn gamma_values() {
        let s = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        let c = specialize_spec(&s, &[3.into()]).unwrap();
        assert_eq!(c.phi().constant_value(), Some(3.into()));
        let phi = &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1);
        let s2 = AlgebraSpec::from_roots(2, FieldDescriptor::Rational, 2.into(), 3.into(), phi).unwrap();
        let c2 = specialize_spec(&s2, &[0.into(), 5.into()]).unwrap();
        assert!(c2.phi().is_zero());
        assert!(specialize_spec(&s2, &[1.into()]).is_err());
    }

    #[test]
    fn specialize_commutes_with_normalizing() {
        let s = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        let lam = [FieldElem::from_i64(3)];
        let target = specialize_spec(&s, &lam).unwrap();
        let (d, u) = (Element::d(&s), Element::u(&s));
        let ddu = &(&d * &d) * &u;
        let lhs = specialize_into(&ddu, &lam, &target).unwrap();
        let (d2, u2) = (Element::d(&target), Element::u(&target));
        assert_eq!(lhs, &(&d2 * &d2) * &u2);
    }

    #[test]
    fn localized_hk_central() {
        let s = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), FieldElem::from_ratio(1, 2), MultiPoly::var(1, 0)).unwrap();
        let loc = localize_spec(&s).unwrap();
        assert_eq!(loc.phi().constant_value().unwrap().to_string(), "t1");
        let (h, k) = make_hk(&loc).unwrap();
        assert!(is_central(&(&h * &k)).central);
    }

    #[test]
    fn localize_then_evaluate() {
        let s = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        let loc = localize_spec(&s).unwrap();
        let lam = [FieldElem::from_i64(5)];
        let target = specialize_spec(&s, &lam).unwrap();
        let t = Element::t(&s, 0).unwrap();
        let a = &(&Element::d(&s) * &t) * &Element::u(&s);
        let via = evaluate_coefficients(&localize_element(&a, &loc).unwrap(), &lam, &target).unwrap();
        assert_eq!(via, specialize_into(&a, &lam, &target).unwrap());
    }
}
