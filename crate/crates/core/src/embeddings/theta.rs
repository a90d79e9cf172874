//! The embedding θ: A → S with u ↦ xz, d ↦ z⁻¹, tᵢ ↦ tᵢ.

use std::sync::Arc;

use serde::Serialize;

use super::skew::{SkewLaurentElem, SkewRing};
use crate::algebra::{AlgebraSpec, Element, Monomial};
use crate::coeff::{FieldElem, MultiPoly};
use crate::error::{DuaError, Result};
use crate::linalg;
use crate::par::Exec;
use crate::random::random_pairs;

/// θ(u) = xz = z·y.
pub fn theta_u(ring: &Arc<SkewRing>) -> SkewLaurentElem {
    SkewLaurentElem::poly(ring, ring.sigma().x()).mul(&SkewLaurentElem::z(ring, 1))
}

/// θ(d) = z⁻¹.
pub fn theta_d(ring: &Arc<SkewRing>) -> SkewLaurentElem {
    SkewLaurentElem::z(ring, -1)
}

fn theta_monomial(ring: &Arc<SkewRing>, m: &Monomial) -> SkewLaurentElem {
    let nv = ring.sigma().nvars();
    let mut exps = vec![0; nv];
    // θ(du) = y
    exps[1] = m.j;
    exps[2..].copy_from_slice(&m.t);
    let middle = SkewLaurentElem::poly(ring, MultiPoly::monomial(nv, exps, FieldElem::one())).mul(&SkewLaurentElem::z(ring, -(m.k as i64)));
    let u = theta_u(ring);
    let mut acc = SkewLaurentElem::z(ring, 0);
    for _ in 0..m.i {
        acc = acc.mul(&u);
    }
    acc.mul(&middle)
}

/// θ into a given ring, which may carry a different σ.
pub fn theta_in(ring: &Arc<SkewRing>, a: &Element) -> Result<SkewLaurentElem> {
    if a.spec().n() != ring.spec().n() {
        return Err(DuaError::SpecMismatch);
    }
    let mut out = SkewLaurentElem::zero(ring);
    for (m, c) in a.terms() {
        out = out.add(&theta_monomial(ring, m).scale(c));
    }
    Ok(out)
}

/// θ(a). Needs β ≠ 0.
pub fn theta(a: &Element) -> Result<SkewLaurentElem> {
    let ring = SkewRing::new(a.spec())?;
    theta_in(&ring, a)
}

/// The two defining relations d²u − αdud − βud² − φd and
/// du² − αudu − βu²d − φu, computed letter by letter.
pub fn relation_words(spec: &Arc<AlgebraSpec>) -> [Element; 2] {
    let (u, d) = (Element::u(spec), Element::d(spec));
    let phi = Element::from_poly(spec, spec.phi());
    let (al, be) = (spec.alpha(), spec.beta());
    let r1 = &(&(&(&(&d * &d) * &u) - &(&(&d * &u) * &d).scale(al)) - &(&(&u * &d) * &d).scale(be)) - &(&phi * &d);
    let r2 = &(&(&(&(&d * &u) * &u) - &(&(&u * &d) * &u).scale(al)) - &(&(&u * &u) * &d).scale(be)) - &(&phi * &u);
    [r1, r2]
}

/// θ images of the relations, built from the generator images without
/// normalizing in A first.
pub fn relation_images(ring: &Arc<SkewRing>) -> [SkewLaurentElem; 2] {
    let spec = ring.spec();
    let (u, d) = (theta_u(ring), theta_d(ring));
    let nv = ring.sigma().nvars();
    let phi = SkewLaurentElem::poly(ring, spec.phi().embed(nv, 2));
    let (al, be) = (spec.alpha(), spec.beta());
    let r1 = d.mul(&d).mul(&u).sub(&d.mul(&u).mul(&d).scale(al)).sub(&u.mul(&d).mul(&d).scale(be)).sub(&phi.mul(&d));
    let r2 = d.mul(&u).mul(&u).sub(&u.mul(&d).mul(&u).scale(al)).sub(&u.mul(&u).mul(&d).scale(be)).sub(&phi.mul(&u));
    [r1, r2]
}

/// Spanning-set element (ud)^i (du)^j d^k t^m (`up = false`) or
/// (ud)^i (du)^j u^{k+1} t^m (`up = true`), with its expected θ image
/// x^i y^j z^{-k} t^m or x^i y^j (xz)^{k+1} t^m.
#[derive(Clone, Debug)]
pub struct SpanningEntry {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub t: Vec<u32>,
    pub up: bool,
}

impl SpanningEntry {
    pub fn element(&self, spec: &Arc<AlgebraSpec>) -> Element {
        let ud = &Element::u(spec) * &Element::d(spec);
        let tail = if self.up {
            Element::u(spec).pow(self.k + 1)
        } else {
            Element::d(spec).pow(self.k)
        };
        let t = Element::monomial(spec, Monomial::new(0, 0, 0, self.t.clone()), FieldElem::one());
        &(&(&ud.pow(self.i) * &Element::du(spec).pow(self.j)) * &tail) * &t
    }

    pub fn expected_image(&self, ring: &Arc<SkewRing>) -> SkewLaurentElem {
        let nv = ring.sigma().nvars();
        let mut exps = vec![self.i, self.j];
        exps.extend(&self.t);
        let p = SkewLaurentElem::poly(ring, MultiPoly::monomial(nv, exps, FieldElem::one()));
        if self.up {
            let xz = SkewLaurentElem::poly(ring, ring.sigma().x()).mul(&SkewLaurentElem::z(ring, 1));
            let mut acc = p;
            for _ in 0..=self.k {
                acc = acc.mul(&xz);
            }
            acc
        } else {
            p.mul(&SkewLaurentElem::z(ring, -(self.k as i64)))
        }
    }

    pub fn weighted_degree(&self, w: u32) -> u32 {
        let letters = 2 * self.i + 2 * self.j + self.k + u32::from(self.up);
        w * letters + self.t.iter().sum::<u32>()
    }
}

pub fn spanning_set(spec: &AlgebraSpec, maxdeg: u32) -> Vec<SpanningEntry> {
    let w = spec.weight();
    let mut out = Vec::new();
    for letters in 0..=maxdeg / w {
        for up in [false, true] {
            let rest = match letters.checked_sub(u32::from(up)) {
                Some(r) => r,
                None => continue,
            };
            for i in 0..=rest / 2 {
                for j in 0..=(rest - 2 * i) / 2 {
                    let k = rest - 2 * i - 2 * j;
                    for t in crate::algebra::t_monomials(spec.n(), maxdeg - w * letters) {
                        out.push(SpanningEntry { i, j, k, t, up });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub max_degree: u32,
    pub relations_vanish: bool,
    pub pairs_checked: usize,
    pub pairs_failed: usize,
    pub spanning_size: usize,
    pub basis_dimension: u64,
    pub image_rank: usize,
    pub formula_matches: bool,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.relations_vanish
            && self.pairs_failed == 0
            && self.formula_matches
            && self.image_rank == self.spanning_size
            && self.spanning_size as u64 == self.basis_dimension
    }
}

/// Relations ↦ 0, θ(ab) = θ(a)θ(b) on `pairs` random pairs of word length
/// ≤ 3, and independence of the spanning-set images up to `maxdeg`.
pub fn theta_check(spec: &Arc<AlgebraSpec>, maxdeg: u32, pairs: usize, seed: u64, exec: Exec) -> Result<ThetaReport> {
    let ring = SkewRing::new(spec)?;
    let relations_vanish = relation_images(&ring).iter().all(|r| r.is_zero())
        && relation_words(spec).iter().all(|r| r.is_zero());

    let samples = random_pairs(spec, seed, pairs, 3);
    let ok = exec.map(&samples, |(a, b)| {
        let lhs = theta_in(&ring, &(a * b)).unwrap();
        let rhs = theta_in(&ring, a).unwrap().mul(&theta_in(&ring, b).unwrap());
        lhs == rhs
    });
    let pairs_failed = ok.iter().filter(|x| !**x).count();

    let entries = spanning_set(spec, maxdeg);
    let images = exec.map(&entries, |e| {
        let img = theta_in(&ring, &e.element(spec)).unwrap();
        let matches = img == e.expected_image(&ring);
        (img.flat(), matches)
    });
    let formula_matches = images.iter().all(|(_, m)| *m);
    let image_rank = linalg::rank(images.into_iter().map(|(v, _)| v));

    Ok(ThetaReport {
        max_degree: maxdeg,
        relations_vanish,
        pairs_checked: pairs,
        pairs_failed,
        spanning_size: entries.len(),
        basis_dimension: crate::algebra::filtration_count(spec, maxdeg),
        image_rank,
        formula_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldDescriptor;
    use crate::embeddings::SigmaAut;

    fn spec_rs() -> Arc<AlgebraSpec> {
        AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap()
    }

    #[test]
    fn generator_images() {
        let spec = spec_rs();
        let ring = SkewRing::new(&spec).unwrap();
        let ud = &Element::u(&spec) * &Element::d(&spec);
        assert_eq!(theta_in(&ring, &ud).unwrap(), SkewLaurentElem::poly(&ring, ring.sigma().x()));
        assert_eq!(theta_in(&ring, &Element::du(&spec)).unwrap(), SkewLaurentElem::poly(&ring, ring.sigma().y()));
    }

    #[test]
    fn check_passes() {
        let spec = spec_rs();
        let rep = theta_check(&spec, 5, 20, 0, Exec::Sequential).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let spec2 = AlgebraSpec::from_alpha_beta(1, FieldDescriptor::Rational, 2.into(), (-1).into(), MultiPoly::var(1, 0)).unwrap();
        assert!(theta_check(&spec2, 5, 20, 1, Exec::Parallel).unwrap().passed());
    }

    #[test]
    fn beta_zero_rejected() {
        let spec = AlgebraSpec::from_alpha_beta(1, FieldDescriptor::Rational, 2.into(), 0.into(), MultiPoly::var(1, 0)).unwrap();
        assert!(theta_check(&spec, 3, 1, 0, Exec::Sequential).is_err());
    }

    #[test]
    fn swapped_sigma_breaks_relations() {
        // y ↦ αx + βy + φ instead of αy + βx + φ
        let spec = spec_rs();
        let sigma = SigmaAut::with_parameters(1, spec.beta().clone(), spec.alpha().clone(), spec.phi()).unwrap();
        let ring = SkewRing::with_sigma(&spec, sigma);
        assert!(relation_images(&ring).iter().any(|r| !r.is_zero()));
    }
}
