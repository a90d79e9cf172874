//! The elements H = du − r·ud + φ/(s−1) and K = du − s·ud + φ/(r−1).

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraSpec, Element, Monomial};
use crate::coeff::FieldElem;
use crate::error::{DuaError, Result};

/// du − c·ud + φ/(e − 1); the φ term is dropped when φ = 0.
fn build(spec: &Arc<AlgebraSpec>, c: &FieldElem, e: &FieldElem) -> Result<Element> {
    let mut out = &Element::du(spec) - &(&Element::u(spec) * &Element::d(spec)).scale(c);
    if !spec.phi().is_zero() {
        let denom = e - &FieldElem::one();
        let inv = denom.try_inv()?;
        out = &out + &Element::from_poly(spec, spec.phi()).scale(&inv);
    }
    Ok(out)
}

/// H, which satisfies dH = s·Hd and Hu = s·uH. Needs s ≠ 1 unless φ = 0.
pub fn make_h(spec: &Arc<AlgebraSpec>) -> Result<Element> {
    let (r, s) = spec.require_roots()?;
    build(spec, r, s).map_err(|e| with_hint(e, "s"))
}

/// K, which satisfies dK = r·Kd and Ku = r·uK. Needs r ≠ 1 unless φ = 0.
pub fn make_k(spec: &Arc<AlgebraSpec>) -> Result<Element> {
    let (r, s) = spec.require_roots()?;
    build(spec, s, r).map_err(|e| with_hint(e, "r"))
}

pub fn make_hk(spec: &Arc<AlgebraSpec>) -> Result<(Element, Element)> {
    Ok((make_h(spec)?, make_k(spec)?))
}

/// Which of dH = s·Hd, Hu = s·uH, dK = r·Kd, Ku = r·uK hold, and whether
/// H and K commute (recorded, not required).
#[derive(Clone, Debug, Serialize)]
pub struct HkIdentities {
    pub dh: bool,
    pub hu: bool,
    pub dk: bool,
    pub ku: bool,
    pub hk_commute: bool,
}

impl HkIdentities {
    pub fn all_hold(&self) -> bool {
        self.dh && self.hu && self.dk && self.ku
    }
}

pub fn hk_identities(spec: &Arc<AlgebraSpec>) -> Result<HkIdentities> {
    let (r, s) = spec.require_roots()?;
    let (h, k) = make_hk(spec)?;
    let (u, d) = (Element::u(spec), Element::d(spec));
    Ok(HkIdentities {
        dh: &d * &h == (&h * &d).scale(s),
        hu: &h * &u == (&u * &h).scale(s),
        dk: &d * &k == (&k * &d).scale(r),
        ku: &k * &u == (&u * &k).scale(r),
        hk_commute: &h * &k == &k * &h,
    })
}

/// {H^i K^j u^k t^m, H^i K^j d^{k+1} t^m} of weighted degree ≤ `max_degree`.
pub fn alternate_basis(spec: &Arc<AlgebraSpec>, max_degree: u32) -> Result<Vec<Element>> {
    let (h, k) = make_hk(spec)?;
    let w = spec.weight();
    let mut out = Vec::new();
    for letters in 0..=max_degree / w {
        for i in 0..=letters / 2 {
            for j in 0..=(letters - 2 * i) / 2 {
                let rest = letters - 2 * i - 2 * j;
                let hk = &h.pow(i) * &k.pow(j);
                let mut tails = vec![Element::u(spec).pow(rest)];
                if rest > 0 {
                    tails.push(Element::d(spec).pow(rest));
                }
                for tail in tails {
                    let head = &hk * &tail;
                    for t in crate::algebra::t_monomials(spec.n(), max_degree - w * letters) {
                        let tm = Element::monomial(spec, Monomial::new(0, 0, 0, t), FieldElem::one());
                        out.push(&head * &tm);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn with_hint(e: DuaError, root: &str) -> DuaError {
    match e {
        DuaError::DivisionByZero => DuaError::Precondition(format!(
            "{root} = 1 with phi != 0 makes phi/({root} - 1) undefined; in this regime the center is generated by a power of the other element"
        )),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::independent;
    use crate::coeff::{FieldDescriptor, MultiPoly};

    fn spec(r: FieldElem, s: FieldElem, phi: MultiPoly) -> Arc<AlgebraSpec> {
        AlgebraSpec::from_roots(1, FieldDescriptor::Rational, r, s, phi).unwrap()
    }

    fn t1_coeff(e: &Element) -> FieldElem {
        e.coeff(&Monomial::new(0, 0, 0, vec![1]))
    }

    #[test]
    fn h_examples() {
        let h = make_h(&spec(2.into(), 3.into(), MultiPoly::var(1, 0))).unwrap();
        assert_eq!(t1_coeff(&h), FieldElem::from_ratio(1, 2));
        assert_eq!(h.coeff(&Monomial::new(1, 0, 1, vec![0])), FieldElem::from_i64(-2));
        let h0 = make_h(&spec(2.into(), FieldElem::from_ratio(1, 2), MultiPoly::zero(1))).unwrap();
        assert_eq!(h0.num_terms(), 2);
        let h1 = make_h(&spec(2.into(), FieldElem::from_ratio(1, 2), MultiPoly::var(1, 0))).unwrap();
        assert_eq!(t1_coeff(&h1), FieldElem::from_i64(-2));
    }

    #[test]
    fn missing_or_singular() {
        let no_roots = AlgebraSpec::from_alpha_beta(1, FieldDescriptor::Rational, 1.into(), 1.into(), MultiPoly::var(1, 0)).unwrap();
        assert_eq!(make_h(&no_roots), Err(DuaError::MissingRoots));
        let s1 = spec(2.into(), 1.into(), MultiPoly::var(1, 0));
        assert!(matches!(make_h(&s1), Err(DuaError::Precondition(m)) if m.contains("s = 1")));
        assert!(make_k(&s1).is_ok());
        assert!(matches!(make_hk(&s1), Err(DuaError::Precondition(_))));
        assert!(make_h(&spec(2.into(), 1.into(), MultiPoly::zero(1))).is_ok());
    }

    #[test]
    fn identities_and_alternate_basis() {
        let sp = spec(2.into(), 3.into(), MultiPoly::var(1, 0));
        let ids = hk_identities(&sp).unwrap();
        assert!(ids.all_hold() && ids.hk_commute);
        let alt = alternate_basis(&sp, 4).unwrap();
        assert_eq!(alt.len() as u64, crate::algebra::filtration_count(&sp, 4));
        assert!(independent(alt.iter().map(|e| e.terms().clone())));
    }
}
