//! Isomorphism decisions between A(r₁, s₁, φ₁) and A(r₂, s₂, φ₂) over K[t].

use std::sync::Arc;

use serde_json::{json, Value};

use super::affine::{affine_equiv, AffineParams, AffineResult};
use super::morphism::{hom_check, GenImages};
use crate::algebra::{AlgebraSpec, Element};
use crate::coeff::{mult_dependence, Dependence, FieldElem};
use crate::error::{DuaError, Result};
use crate::structure::center_generators;

#[derive(Clone, Debug)]
pub struct IsoWitness {
    /// "2", "3a".."3d" or "4".
    pub case: String,
    pub params: AffineParams,
    /// Images of the generators of the first algebra in the second.
    pub images: GenImages,
}

impl IsoWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "eta": self.params.eta.to_string(),
            "a": self.params.a.to_string(),
            "b": self.params.b.to_string(),
            "images": self.images.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub enum IsoDecision {
    Isomorphic(Box<IsoWitness>),
    NotIsomorphic(String),
    Undecided(String),
}

fn independent(r: &FieldElem, s: &FieldElem) -> Result<bool> {
    Ok(mult_dependence(r, s)? == Dependence::Independent)
}

/// d ↦ d, u ↦ η·u, t ↦ at + b when the (α, β) agree; d ↦ u, u ↦ −β₂η·d
/// when the roots are inverted.
fn build_images(inverted: bool, x: &AffineParams, target: &Arc<AlgebraSpec>) -> Result<GenImages> {
    let (u, d) = (Element::u(target), Element::d(target));
    let t = &Element::t(target, 0)?.scale(&x.a) + &Element::scalar(target, x.b.clone());
    if inverted {
        let c = -(target.beta() * &x.eta);
        GenImages::new(d.scale(&c), u, vec![t])
    } else {
        GenImages::new(u.scale(&x.eta), d, vec![t])
    }
}

fn check_inputs(s: &AlgebraSpec) -> Result<(FieldElem, FieldElem)> {
    if s.n() != 1 {
        return Err(DuaError::Precondition(format!("isomorphism decisions need n = 1, spec has n = {}", s.n())));
    }
    let (r, s) = s.require_roots()?;
    Ok((r.clone(), s.clone()))
}

/// Central generators beyond t₁..tₙ.
fn has_extra_center(spec: &Arc<AlgebraSpec>) -> Result<bool> {
    let desc = center_generators(spec)?;
    Ok(desc.generators.iter().any(|g| !g.name.starts_with('t')))
}

pub fn iso_decide(spec1: &Arc<AlgebraSpec>, spec2: &Arc<AlgebraSpec>) -> Result<IsoDecision> {
    let (r1, s1) = check_inputs(spec1)?;
    let (r2, s2) = check_inputs(spec2)?;
    let ind1 = independent(&r1, &s1)?;
    let ind2 = independent(&r2, &s2)?;

    let mut conditions: Vec<(&str, bool, bool)> = Vec::new();
    if ind1 && ind2 {
        let inv = |x: &FieldElem| x.try_inv();
        let same_pair = r1 == r2 && s1 == s2;
        conditions.push(("3a", same_pair, false));
        conditions.push(("3b", r1 == s2 && r2 == s1, false));
        conditions.push(("3c", r1 == inv(&s2)? && r2 == inv(&s1)?, true));
        conditions.push(("3d", r1 == inv(&r2)? && s1 == inv(&s2)?, true));
    } else if ind1 != ind2 {
        let dependent = if ind1 { spec2 } else { spec1 };
        if has_extra_center(dependent)? {
            return Ok(IsoDecision::NotIsomorphic(
                "one center is K[t], the other is strictly larger".into(),
            ));
        }
        return Ok(IsoDecision::Undecided(
            "dependent roots without extra central generators".into(),
        ));
    } else {
        let reciprocal = |r: &FieldElem, s: &FieldElem| (r * s).is_one();
        let roots_of_unity = [&r1, &s1]
            .iter()
            .any(|x| crate::coeff::root_of_unity_order(x).ok().flatten().is_some());
        if reciprocal(&r1, &s1) && reciprocal(&r2, &s2) && !roots_of_unity {
            let same = (r1 == r2 && s1 == s2) || (r1 == s2 && s1 == r2);
            if !same {
                return Ok(IsoDecision::Undecided("r = s^-1 on both sides but different r".into()));
            }
            conditions.push(("4", true, false));
        } else {
            return Ok(IsoDecision::Undecided("parameters outside the decidable regimes".into()));
        }
    }

    let mut undecided = None;
    for (case, holds, inverted) in conditions {
        if !holds {
            continue;
        }
        match affine_equiv(spec1.phi(), spec2.phi(), spec2.field())? {
            AffineResult::Found(x) => {
                let images = build_images(inverted, &x, spec2)?;
                let h = hom_check(&images, spec1)?;
                if !h.holds {
                    let (name, w) = h.witness.unwrap();
                    return Err(DuaError::Constraint(format!("case {case} witness fails {name}: {w}")));
                }
                return Ok(IsoDecision::Isomorphic(Box::new(IsoWitness {
                    case: case.to_string(),
                    params: x,
                    images,
                })));
            }
            AffineResult::None => {}
            AffineResult::Undecided(msg) => undecided = Some(msg),
        }
    }
    Ok(match undecided {
        Some(msg) => IsoDecision::Undecided(msg),
        None => IsoDecision::NotIsomorphic("no root matching with affinely equivalent phi".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{FieldDescriptor, MultiPoly};

    fn spec(r: FieldElem, s: FieldElem, phi: MultiPoly) -> Arc<AlgebraSpec> {
        AlgebraSpec::from_roots(1, FieldDescriptor::Rational, r, s, phi).unwrap()
    }

    fn t() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    #[test]
    fn swapped_roots() {
        let a = spec(2.into(), 3.into(), t());
        let b = spec(3.into(), 2.into(), t());
        match iso_decide(&a, &b).unwrap() {
            IsoDecision::Isomorphic(w) => {
                assert_eq!(w.case, "3b");
                assert_eq!((w.params.eta.clone(), w.params.a.clone(), w.params.b.clone()), (1.into(), 1.into(), 0.into()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverted_roots() {
        let a = spec(2.into(), 3.into(), t());
        let b = spec(FieldElem::from_ratio(1, 2), FieldElem::from_ratio(1, 3), t());
        match iso_decide(&a, &b).unwrap() {
            IsoDecision::Isomorphic(w) => assert_eq!(w.case, "3d"),
            other => panic!("{other:?}"),
        }
        let c = spec(FieldElem::from_ratio(1, 3), FieldElem::from_ratio(1, 2), t());
        assert!(matches!(iso_decide(&a, &c).unwrap(), IsoDecision::Isomorphic(w) if w.case == "3c"));
    }

    #[test]
    fn negatives() {
        let a = spec(2.into(), 3.into(), t().pow(2));
        let b = spec(2.into(), 3.into(), &t().pow(2) + &MultiPoly::constant(1, 1.into()));
        assert!(matches!(iso_decide(&a, &b).unwrap(), IsoDecision::NotIsomorphic(_)));
        let c = spec(2.into(), FieldElem::from_ratio(1, 2), t().pow(2));
        assert!(matches!(iso_decide(&a, &c).unwrap(), IsoDecision::NotIsomorphic(_)));
        assert!(matches!(iso_decide(&c, &a).unwrap(), IsoDecision::NotIsomorphic(_)));
        let d = spec(5.into(), 7.into(), t());
        assert!(matches!(iso_decide(&a, &d).unwrap(), IsoDecision::NotIsomorphic(_)));
    }

    #[test]
    fn reciprocal_case() {
        let half = FieldElem::from_ratio(1, 2);
        let a = spec(2.into(), half.clone(), t());
        let b = spec(2.into(), half, &t().scale(&3.into()) + &MultiPoly::constant(1, 1.into()));
        assert!(matches!(iso_decide(&a, &b).unwrap(), IsoDecision::Isomorphic(w) if w.case == "4"));
    }
}
