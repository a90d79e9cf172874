//! Center generators by case analysis on the roots r, s.

use std::sync::Arc;

use crate::algebra::{basis_monomials, commutator, AlgebraSpec, Element, Monomial};
use crate::coeff::{mult_dependence, root_of_unity_order, Dependence, FieldElem};
use crate::error::Result;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::par::Exec;

use super::central::is_central;
use super::hk::{make_h, make_k};

#[derive(Clone, Debug)]
pub struct CenterGenerator {
    pub name: String,
    pub element: Element,
    /// Result of [`is_central`] on the emitted element.
    pub central: bool,
}

/// A case number 1–9 with its generators, each certified by [`is_central`].
#[derive(Clone, Debug)]
pub struct CenterDescription {
    pub case: u8,
    pub generators: Vec<CenterGenerator>,
    pub note: String,
}

impl CenterDescription {
    pub fn all_central(&self) -> bool {
        self.generators.iter().all(|g| g.central)
    }
}

/// Minimal nonzero (i, j) ∈ ℕ² with s^i r^j = 1, given the orders of s, r.
fn hilbert_basis(r: &FieldElem, s: &FieldElem, m_r: u32, m_s: u32) -> Vec<(u32, u32)> {
    let mut members = Vec::new();
    for i in 0..=m_s {
        for j in 0..=m_r {
            if (i, j) != (0, 0) && (&s.pow_u(i) * &r.pow_u(j)).is_one() {
                members.push((i, j));
            }
        }
    }
    members
        .iter()
        .copied()
        .filter(|&(i, j)| !members.iter().any(|&(a, b)| (a, b) != (i, j) && a <= i && b <= j))
        .collect()
}

/// Dispatches on the root-of-unity orders of r and s, then on their
/// multiplicative dependence, and builds the generators of the center.
pub fn center_generators(spec: &Arc<AlgebraSpec>) -> Result<CenterDescription> {
    let (r, s) = spec.require_roots()?;
    let (r, s) = (r.clone(), s.clone());
    let phi0 = spec.phi().is_zero();
    let (or, os) = (root_of_unity_order(&r)?, root_of_unity_order(&s)?);
    let mut gens: Vec<(String, Element)> = Vec::new();
    let h = || make_h(spec);
    let k = || make_k(spec);
    let (case, note) = if r == s {
        match or {
            Some(1) if !phi0 => {
                let du = Element::du(spec);
                let ud = &Element::u(spec) * &Element::d(spec);
                let phi = Element::from_poly(spec, spec.phi());
                gens.push(("(du-ud)^2-phi*(du+ud)".into(), &(&du - &ud).pow(2) - &(&phi * &(&du + &ud))));
                (2, "r = s = 1 and phi != 0".to_string())
            }
            Some(m) => {
                gens.push((format!("(du-r*ud+phi/(r-1))^{m}"), h()?.pow(m)));
                (1, format!("r = s is a root of unity of order {m}"))
            }
            None => (9, "r = s is not a root of unity".to_string()),
        }
    } else {
        match (or, os) {
            (Some(m1), Some(m2)) if (m1 > 1 && m2 > 1) || phi0 => {
                let m = num_integer::lcm(m1, m2);
                gens.push((format!("d^{m}"), Element::d(spec).pow(m)));
                gens.push((format!("u^{m}"), Element::u(spec).pow(m)));
                let (hh, kk) = (h()?, k()?);
                for (i, j) in hilbert_basis(&r, &s, m1, m2) {
                    gens.push((format!("H^{i}*K^{j}"), &hh.pow(i) * &kk.pow(j)));
                }
                (6, format!("r, s distinct roots of unity of orders {m1}, {m2}"))
            }
            (Some(1), Some(m)) => {
                gens.push((format!("H^{m}"), h()?.pow(m)));
                (7, format!("r = 1, s of order {m}, phi != 0"))
            }
            (Some(m), Some(1)) => {
                gens.push((format!("K^{m}"), k()?.pow(m)));
                (8, format!("s = 1, r of order {m}, phi != 0"))
            }
            (Some(m), None) if m > 1 || phi0 => {
                gens.push((format!("K^{m}"), k()?.pow(m)));
                (3, format!("r of order {m}, s not a root of unity"))
            }
            (None, Some(m)) if m > 1 || phi0 => {
                gens.push((format!("H^{m}"), h()?.pow(m)));
                (4, format!("s of order {m}, r not a root of unity"))
            }
            (None, None) => match mult_dependence(&r, &s)? {
                Dependence::Relation(i, j) if i > 0 && j > 0 => {
                    let (i, j) = (i as u32, j as u32);
                    gens.push((format!("H^{j}*K^{i}"), &h()?.pow(j) * &k()?.pow(i)));
                    (5, format!("r^{i}*s^{j} = 1"))
                }
                Dependence::Relation(i, j) => (5, format!("r^{i}*s^{j} = 1 has no solution with i, j > 0")),
                Dependence::Independent => (9, "r, s multiplicatively independent".to_string()),
            },
            _ => (9, "no case applies".to_string()),
        }
    };
    for i in 0..spec.n() {
        gens.push((format!("t{}", i + 1), Element::t(spec, i)?));
    }
    let generators = gens
        .into_iter()
        .map(|(name, element)| CenterGenerator {
            central: is_central(&element).central,
            name,
            element,
        })
        .collect();
    Ok(CenterDescription { case, generators, note })
}

/// Comparison of the central elements of bounded degree with the
/// degree-truncated subalgebra generated by a center description.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub max_degree: u32,
    pub central_dim: usize,
    pub generated_dim: usize,
    /// Every generated product lies in the central space.
    pub contained: bool,
}

impl CompletenessReport {
    pub fn equal(&self) -> bool {
        self.contained && self.central_dim == self.generated_dim
    }
}

/// Basis of the central elements of weighted degree ≤ `max_degree`.
pub fn central_space(spec: &Arc<AlgebraSpec>, max_degree: u32, exec: Exec) -> Vec<Element> {
    let basis = basis_monomials(spec, max_degree);
    let (u, d) = (Element::u(spec), Element::d(spec));
    let images = exec.map(&basis, |m| {
        let x = Element::monomial(spec, m.clone(), FieldElem::one());
        let mut v: SparseVec<(u8, Monomial)> = SparseVec::new();
        for (tag, g) in [(0u8, &u), (1, &d)] {
            for (mm, c) in commutator(&x, g).unwrap().into_terms() {
                v.insert((tag, mm), c);
            }
        }
        v
    });
    kernel(images)
        .into_iter()
        .map(|comb| Element::from_terms(spec, comb.into_iter().map(|(i, c)| (basis[i].clone(), c))))
        .collect()
}

/// Products g₁^e₁⋯g_k^e_k of the generators with Σ eᵢ·deg gᵢ ≤ `max_degree`.
fn generated_products(spec: &Arc<AlgebraSpec>, gens: &[Element], max_degree: u32) -> Vec<Element> {
    let mut out = vec![Element::one(spec)];
    for g in gens {
        let Some(deg) = g.weighted_degree().filter(|&x| x > 0) else { continue };
        let mut next = Vec::new();
        for (p, pd) in out.iter().map(|p| (p, p.weighted_degree().unwrap_or(0))) {
            let mut cur = p.clone();
            let mut cd = pd;
            next.push(cur.clone());
            while cd + deg <= max_degree {
                cur = &cur * g;
                cd += deg;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out
}

pub fn center_completeness(desc: &CenterDescription, spec: &Arc<AlgebraSpec>, max_degree: u32, exec: Exec) -> CompletenessReport {
    let central = central_space(spec, max_degree, exec);
    let gens: Vec<Element> = desc.generators.iter().map(|g| g.element.clone()).collect();
    let products = generated_products(spec, &gens, max_degree);
    let mut gen_span = Echelon::new();
    for p in &products {
        gen_span.insert(p.terms().clone());
    }
    let mut central_span = Echelon::new();
    for c in &central {
        central_span.insert(c.terms().clone());
    }
    let contained = products.iter().all(|p| central_span.contains(p.terms()));
    CompletenessReport {
        max_degree,
        central_dim: central_span.rank(),
        generated_dim: gen_span.rank(),
        contained,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{FieldDescriptor, MultiPoly};

    fn roots(r: FieldElem, s: FieldElem) -> Arc<AlgebraSpec> {
        AlgebraSpec::from_roots(1, FieldDescriptor::Rational, r, s, MultiPoly::var(1, 0)).unwrap()
    }

    #[test]
    fn case_five() {
        let s = roots(2.into(), FieldElem::from_ratio(1, 2));
        let c = center_generators(&s).unwrap();
        assert_eq!(c.case, 5);
        assert_eq!(c.generators.len(), 2);
        assert!(c.all_central());
        assert!(center_completeness(&c, &s, 4, Exec::Sequential).equal());
    }

    #[test]
    fn case_two() {
        let s = roots(1.into(), 1.into());
        let c = center_generators(&s).unwrap();
        assert_eq!(c.case, 2);
        assert!(c.all_central());
    }

    #[test]
    fn case_nine() {
        let s = roots(2.into(), 3.into());
        let c = center_generators(&s).unwrap();
        assert_eq!(c.case, 9);
        assert_eq!(c.generators.len(), 1);
        let rep = center_completeness(&c, &s, 4, Exec::Parallel);
        assert!(rep.equal(), "{rep:?}");
        assert_eq!(rep.central_dim, 5);
    }

    #[test]
    fn hilbert_basis_of_cube_roots() {
        let f = FieldDescriptor::cyclotomic(3).unwrap();
        let z = f.zeta().unwrap();
        let mut hb = hilbert_basis(&z, &z.pow_u(2), 3, 3);
        hb.sort();
        assert_eq!(hb, vec![(0, 3), (1, 1), (3, 0)]);
    }
}
