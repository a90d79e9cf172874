//! Automorphisms of A(r, s, φ) over K[t] from scalar parameters.

use std::sync::Arc;

use super::morphism::{eval_poly, hom_check, GenImages};
use crate::algebra::AlgebraSpec;
use crate::coeff::{FieldElem, MultiPoly};
use crate::error::{DuaError, Result};
use crate::structure::make_hk;

/// d ↦ λ₁d, u ↦ λ₂u (or d ↦ λ₁u, u ↦ λ₂d when `swap`), t ↦ a·t + b, or
/// t ↦ a·t + g(HK) when `g` is given.
#[derive(Clone, Debug, PartialEq)]
pub struct AutSpec {
    pub lambda1: FieldElem,
    pub lambda2: FieldElem,
    pub a: FieldElem,
    pub b: FieldElem,
    /// Univariate polynomial standing for g(HK).
    pub g: Option<MultiPoly>,
    pub swap: bool,
}

impl AutSpec {
    pub fn new(lambda1: FieldElem, lambda2: FieldElem, a: FieldElem, b: FieldElem) -> Self {
        AutSpec {
            lambda1,
            lambda2,
            a,
            b,
            g: None,
            swap: false,
        }
    }

    pub fn with_g(mut self, g: MultiPoly) -> Self {
        self.g = Some(g);
        self
    }

    pub fn swapped(mut self) -> Self {
        self.swap = true;
        self
    }
}

fn check_shape(p: &AutSpec, spec: &AlgebraSpec) -> Result<()> {
    if spec.n() != 1 {
        return Err(DuaError::Precondition(format!("automorphisms need n = 1, spec has n = {}", spec.n())));
    }
    let (r, s) = spec.require_roots()?;
    for (name, v) in [("lambda1", &p.lambda1), ("lambda2", &p.lambda2), ("a", &p.a)] {
        if v.is_zero() {
            return Err(DuaError::Precondition(format!("{name} must be nonzero")));
        }
    }
    if let Some(g) = &p.g {
        if g.nvars() != 1 {
            return Err(DuaError::ArityMismatch {
                expected: 1,
                found: g.nvars(),
            });
        }
    }
    if (p.swap || p.g.is_some()) && !(r * s).is_one() {
        return Err(DuaError::Precondition(format!(
            "swap and g(HK) forms need r = s^-1, but r*s = {}",
            r * s
        )));
    }
    Ok(())
}

/// The generator images, without validation.
pub fn aut_images(p: &AutSpec, spec: &Arc<AlgebraSpec>) -> Result<GenImages> {
    check_shape(p, spec)?;
    let (u, d) = (crate::algebra::Element::u(spec), crate::algebra::Element::d(spec));
    let (du_img, uu_img) = if p.swap {
        (u.scale(&p.lambda1), d.scale(&p.lambda2))
    } else {
        (d.scale(&p.lambda1), u.scale(&p.lambda2))
    };
    let t = crate::algebra::Element::t(spec, 0)?;
    let shift = match &p.g {
        Some(g) => {
            let (h, k) = make_hk(spec)?;
            eval_poly(g, &[&h * &k], spec)
        }
        None => crate::algebra::Element::scalar(spec, p.b.clone()),
    };
    GenImages::new(uu_img, du_img, vec![&t.scale(&p.a) + &shift])
}

/// λ₁λ₂·φ(t) = φ(image of t), compared in the algebra. On failure returns
/// both sides as text.
pub fn aut_constraint(p: &AutSpec, spec: &Arc<AlgebraSpec>) -> Result<std::result::Result<(), String>> {
    let images = aut_images(p, spec)?;
    let t = crate::algebra::Element::t(spec, 0)?;
    let lhs = eval_poly(spec.phi(), &[t], spec).scale(&(&p.lambda1 * &p.lambda2));
    let rhs = eval_poly(spec.phi(), &images.t, spec);
    if lhs == rhs {
        Ok(Ok(()))
    } else {
        Ok(Err(format!("lambda1*lambda2*phi(t) = {lhs} but phi(sigma(t)) = {rhs}")))
    }
}

/// Validated images: the φ-constraint and hom_check must both hold.
pub fn aut_from_params(p: &AutSpec, spec: &Arc<AlgebraSpec>) -> Result<GenImages> {
    if let Err(msg) = aut_constraint(p, spec)? {
        return Err(DuaError::Constraint(msg));
    }
    let images = aut_images(p, spec)?;
    let h = hom_check(&images, spec)?;
    if let Some((name, w)) = h.witness {
        return Err(DuaError::Constraint(format!("relation {name} maps to {w}")));
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldDescriptor;

    fn spec(r: FieldElem, s: FieldElem, phi: MultiPoly) -> Arc<AlgebraSpec> {
        AlgebraSpec::from_roots(1, FieldDescriptor::Rational, r, s, phi).unwrap()
    }

    #[test]
    fn phi_zero_any_parameters() {
        let s = spec(2.into(), 3.into(), MultiPoly::zero(1));
        let p = AutSpec::new(5.into(), 7.into(), 2.into(), 3.into());
        assert!(aut_from_params(&p, &s).is_ok());
    }

    #[test]
    fn constant_phi_forces_inverse() {
        let s = spec(2.into(), 3.into(), MultiPoly::constant(1, 4.into()));
        let ok = AutSpec::new(5.into(), FieldElem::from_ratio(1, 5), 2.into(), 3.into());
        assert!(aut_from_params(&ok, &s).is_ok());
        let bad = AutSpec::new(5.into(), 7.into(), 2.into(), 3.into());
        assert!(matches!(aut_from_params(&bad, &s), Err(DuaError::Constraint(_))));
    }

    #[test]
    fn linear_phi() {
        let s = spec(2.into(), 3.into(), MultiPoly::var(1, 0));
        assert!(aut_from_params(&AutSpec::new(2.into(), 3.into(), 6.into(), 0.into()), &s).is_ok());
        assert!(aut_from_params(&AutSpec::new(2.into(), 3.into(), 1.into(), 0.into()), &s).is_err());
    }

    #[test]
    fn swap_with_g() {
        let s = spec(2.into(), FieldElem::from_ratio(1, 2), MultiPoly::zero(1));
        let p = AutSpec::new(1.into(), 1.into(), 1.into(), 0.into()).with_g(MultiPoly::var(1, 0)).swapped();
        assert!(aut_from_params(&p, &s).is_ok());
        let s2 = spec(2.into(), 3.into(), MultiPoly::zero(1));
        assert!(matches!(aut_from_params(&p, &s2), Err(DuaError::Precondition(_))));
    }
}
