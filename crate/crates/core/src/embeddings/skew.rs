//! The automorphism σ of R = K[x, y, t₁..tₙ] and the skew-Laurent ring
//! S = R[z^{±1}; σ] with r·z = z·σ(r).
//!
//! R-polynomials are [`MultiPoly`]s in n + 2 variables ordered (x, y, t₁..tₙ).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::AlgebraSpec;
use crate::coeff::{FieldElem, MultiPoly};
use crate::error::{DuaError, Result};

/// σ: x ↦ y, y ↦ αy + βx + φ, tᵢ ↦ tᵢ, with σ⁻¹: y ↦ x,
/// x ↦ (y − αx − φ)/β.
pub struct SigmaAut {
    n: usize,
    alpha: FieldElem,
    beta: FieldElem,
    phi: MultiPoly,
    /// σ^k(x), σ^k(y) by k.
    powers: RwLock<BTreeMap<i64, (MultiPoly, MultiPoly)>>,
}

impl fmt::Debug for SigmaAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma(x) = y, sigma(y) = {}", self.sigma_y())
    }
}

impl SigmaAut {
    pub fn new(spec: &AlgebraSpec) -> Result<Self> {
        Self::with_parameters(spec.n(), spec.alpha().clone(), spec.beta().clone(), spec.phi())
    }

    /// σ for explicit (α, β, φ), e.g. with α and β swapped.
    pub fn with_parameters(n: usize, alpha: FieldElem, beta: FieldElem, phi: &MultiPoly) -> Result<Self> {
        if beta.is_zero() {
            return Err(DuaError::Precondition("sigma is not invertible when beta = 0".into()));
        }
        let mut powers = BTreeMap::new();
        powers.insert(0, (MultiPoly::var(n + 2, 0), MultiPoly::var(n + 2, 1)));
        Ok(SigmaAut {
            n,
            alpha,
            beta,
            phi: phi.embed(n + 2, 2),
            powers: RwLock::new(powers),
        })
    }

    pub fn nvars(&self) -> usize {
        self.n + 2
    }

    pub fn x(&self) -> MultiPoly {
        MultiPoly::var(self.n + 2, 0)
    }

    pub fn y(&self) -> MultiPoly {
        MultiPoly::var(self.n + 2, 1)
    }

    fn sigma_y(&self) -> MultiPoly {
        &(&self.y().scale(&self.alpha) + &self.x().scale(&self.beta)) + &self.phi
    }

    /// (σ^k(x), σ^k(y)).
    pub fn power_images(&self, k: i64) -> (MultiPoly, MultiPoly) {
        if let Some(v) = self.powers.read().unwrap().get(&k) {
            return v.clone();
        }
        let step = if k > 0 { k - 1 } else { k + 1 };
        let (xb, yb) = self.power_images(step);
        let next = if k > 0 {
            // σ^{b+1}(x) = σ^b(y), σ^{b+1}(y) = α σ^b(y) + β σ^b(x) + φ
            let y2 = &(&yb.scale(&self.alpha) + &xb.scale(&self.beta)) + &self.phi;
            (yb, y2)
        } else {
            // σ^{-(b+1)}(y) = σ^{-b}(x), σ^{-(b+1)}(x) = (σ^{-b}(y) − α σ^{-b}(x) − φ)/β
            let binv = self.beta.try_inv().unwrap();
            let x2 = (&(&yb - &xb.scale(&self.alpha)) - &self.phi).scale(&binv);
            (x2, xb)
        };
        self.powers.write().unwrap().insert(k, next.clone());
        next
    }

    /// σ^k(p).
    pub fn apply(&self, p: &MultiPoly, k: i64) -> MultiPoly {
        if k == 0 || p.is_constant() {
            return p.clone();
        }
        let (xk, yk) = self.power_images(k);
        let mut images = vec![xk, yk];
        images.extend((0..self.n).map(|i| MultiPoly::var(self.n + 2, i + 2)));
        p.compose(&images)
    }

    pub fn variable_names(&self) -> Vec<String> {
        let mut v = vec!["x".to_string(), "y".to_string()];
        v.extend((1..=self.n).map(|i| format!("t{i}")));
        v
    }
}

/// The ring S for one spec.
pub struct SkewRing {
    spec: Arc<AlgebraSpec>,
    sigma: SigmaAut,
}

impl SkewRing {
    /// Needs β ≠ 0.
    pub fn new(spec: &Arc<AlgebraSpec>) -> Result<Arc<Self>> {
        Ok(Arc::new(SkewRing {
            spec: spec.clone(),
            sigma: SigmaAut::new(spec)?,
        }))
    }

    /// S built on an explicit σ.
    pub fn with_sigma(spec: &Arc<AlgebraSpec>, sigma: SigmaAut) -> Arc<Self> {
        Arc::new(SkewRing {
            spec: spec.clone(),
            sigma,
        })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn sigma(&self) -> &SigmaAut {
        &self.sigma
    }
}

/// Σ_k z^k·r_k with z-powers on the left.
#[derive(Clone)]
pub struct SkewLaurentElem {
    ring: Arc<SkewRing>,
    terms: BTreeMap<i64, MultiPoly>,
}

impl PartialEq for SkewLaurentElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl fmt::Debug for SkewLaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Skew({self})")
    }
}

impl fmt::Display for SkewLaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.sigma.variable_names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, p)| {
                let body = p.fmt_with(&names);
                match k {
                    0 => format!("({body})"),
                    1 => format!("z*({body})"),
                    _ => format!("z^{k}*({body})"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SkewLaurentElem {
    pub fn zero(ring: &Arc<SkewRing>) -> Self {
        SkewLaurentElem {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// z^k·p.
    pub fn term(ring: &Arc<SkewRing>, k: i64, p: MultiPoly) -> Self {
        assert_eq!(p.nvars(), ring.sigma.nvars(), "R-polynomial arity");
        let mut e = Self::zero(ring);
        if !p.is_zero() {
            e.terms.insert(k, p);
        }
        e
    }

    pub fn poly(ring: &Arc<SkewRing>, p: MultiPoly) -> Self {
        Self::term(ring, 0, p)
    }

    pub fn z(ring: &Arc<SkewRing>, k: i64) -> Self {
        Self::term(ring, k, MultiPoly::one(ring.sigma.nvars()))
    }

    pub fn ring(&self) -> &Arc<SkewRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<i64, MultiPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: i64, p: MultiPoly) {
        let v = match self.terms.remove(&k) {
            Some(old) => &old + &p,
            None => p,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn add(&self, other: &SkewLaurentElem) -> SkewLaurentElem {
        let mut out = self.clone();
        for (k, p) in &other.terms {
            out.add_term(*k, p.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> SkewLaurentElem {
        let mut out = Self::zero(&self.ring);
        for (k, p) in &self.terms {
            out.add_term(*k, p.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &SkewLaurentElem) -> SkewLaurentElem {
        self.add(&other.scale(&-FieldElem::one()))
    }

    /// (z^a p)(z^b q) = z^{a+b} σ^b(p) q.
    pub fn mul(&self, other: &SkewLaurentElem) -> SkewLaurentElem {
        let sigma = &self.ring.sigma;
        let mut out = Self::zero(&self.ring);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                out.add_term(a + b, &sigma.apply(p, *b) * q);
            }
        }
        out
    }

    /// Entries keyed by (z-exponent, R-exponent vector) for linear algebra.
    pub fn flat(&self) -> BTreeMap<(i64, Vec<u32>), FieldElem> {
        self.terms
            .iter()
            .flat_map(|(k, p)| p.terms().map(move |(e, c)| ((*k, e.to_vec()), c.clone())))
            .collect()
    }
}

/// Product in S; the operands must share a ring.
pub fn skew_mul(p: &SkewLaurentElem, q: &SkewLaurentElem) -> Result<SkewLaurentElem> {
    if !Arc::ptr_eq(&p.ring, &q.ring) {
        return Err(DuaError::SpecMismatch);
    }
    Ok(p.mul(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldDescriptor;

    fn ring() -> Arc<SkewRing> {
        let s = AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        SkewRing::new(&s).unwrap()
    }

    #[test]
    fn sigma_inverse_round_trip() {
        let r = ring();
        let s = r.sigma();
        for p in [s.x(), s.y(), MultiPoly::var(3, 2)] {
            assert_eq!(s.apply(&s.apply(&p, 1), -1), p);
            assert_eq!(s.apply(&s.apply(&p, -3), 3), p);
        }
    }

    #[test]
    fn basic_products() {
        let r = ring();
        let x = SkewLaurentElem::poly(&r, r.sigma().x());
        let xz = x.mul(&SkewLaurentElem::z(&r, 1));
        let zinv = SkewLaurentElem::z(&r, -1);
        assert_eq!(xz.mul(&zinv), x);
        assert_eq!(zinv.mul(&xz), SkewLaurentElem::poly(&r, r.sigma().y()));
        assert_eq!(SkewLaurentElem::z(&r, 1).mul(&zinv), SkewLaurentElem::z(&r, 0));
    }

    #[test]
    fn r_z_equals_z_sigma_r() {
        let r = ring();
        let p = &r.sigma().x() * &r.sigma().y();
        let lhs = SkewLaurentElem::poly(&r, p.clone()).mul(&SkewLaurentElem::z(&r, 1));
        let rhs = SkewLaurentElem::term(&r, 1, r.sigma().apply(&p, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn beta_zero_rejected() {
        let s = AlgebraSpec::from_alpha_beta(1, FieldDescriptor::Rational, 1.into(), 0.into(), MultiPoly::var(1, 0)).unwrap();
        assert!(SkewRing::new(&s).is_err());
    }
}
