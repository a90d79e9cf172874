//! PBW monomials and algebra elements.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::engine::{add_into, mul_terms, Terms};
use super::spec::AlgebraSpec;
use crate::coeff::{join_signed_terms, FieldElem, MultiPoly};
use crate::error::{DuaError, Result};

/// u^i (du)^j d^k t₁^m₁ … tₙ^mₙ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub t: Vec<u32>,
}

impl Monomial {
    pub fn new(i: u32, j: u32, k: u32, t: Vec<u32>) -> Self {
        Monomial { i, j, k, t }
    }

    pub fn one(n: usize) -> Self {
        Monomial::new(0, 0, 0, vec![0; n])
    }

    pub fn t_degree(&self) -> u32 {
        self.t.iter().sum()
    }

    /// w·(i + 2j + k) + |m|.
    pub fn weighted_degree(&self, w: u32) -> u32 {
        w * (self.i + 2 * self.j + self.k) + self.t_degree()
    }

    /// Grade in the Z-grading deg u = 1, deg d = −1.
    pub fn grade(&self) -> i64 {
        self.i as i64 - self.k as i64
    }

    /// Renders as a product, e.g. `u^2*(d*u)*d*t1^3`; empty for 1.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        let pw = |base: &str, e: u32| if e == 1 { base.to_string() } else { format!("{base}^{e}") };
        if self.i > 0 {
            parts.push(pw("u", self.i));
        }
        if self.j > 0 {
            parts.push(pw("(d*u)", self.j));
        }
        if self.k > 0 {
            parts.push(pw("d", self.k));
        }
        for (idx, &e) in self.t.iter().enumerate() {
            if e > 0 {
                parts.push(pw(&format!("t{}", idx + 1), e));
            }
        }
        parts.join("*")
    }
}

/// A finite combination of PBW monomials of one spec.
#[derive(Clone)]
pub struct Element {
    spec: Arc<AlgebraSpec>,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.spec.id() == other.spec.id() && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.sorted_terms().into_iter().map(|(m, c)| (c.clone(), m.render()));
        f.write_str(&join_signed_terms(parts))
    }
}

impl Element {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        Element {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> Self {
        Self::scalar(spec, FieldElem::one())
    }

    pub fn scalar(spec: &Arc<AlgebraSpec>, c: FieldElem) -> Self {
        Self::monomial(spec, Monomial::one(spec.n()), c)
    }

    pub fn monomial(spec: &Arc<AlgebraSpec>, m: Monomial, c: FieldElem) -> Self {
        assert_eq!(m.t.len(), spec.n(), "monomial arity");
        let mut e = Self::zero(spec);
        add_into(&mut e.terms, m, c);
        e
    }

    pub fn from_terms(spec: &Arc<AlgebraSpec>, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut e = Self::zero(spec);
        for (m, c) in terms {
            assert_eq!(m.t.len(), spec.n(), "monomial arity");
            add_into(&mut e.terms, m, c);
        }
        e
    }

    pub fn u(spec: &Arc<AlgebraSpec>) -> Self {
        Self::monomial(spec, Monomial::new(1, 0, 0, vec![0; spec.n()]), FieldElem::one())
    }

    pub fn d(spec: &Arc<AlgebraSpec>) -> Self {
        Self::monomial(spec, Monomial::new(0, 0, 1, vec![0; spec.n()]), FieldElem::one())
    }

    /// The basis element (du).
    pub fn du(spec: &Arc<AlgebraSpec>) -> Self {
        Self::monomial(spec, Monomial::new(0, 1, 0, vec![0; spec.n()]), FieldElem::one())
    }

    /// tᵢ for a 0-based index.
    pub fn t(spec: &Arc<AlgebraSpec>, i: usize) -> Result<Self> {
        if i >= spec.n() {
            return Err(DuaError::IndexOutOfRange { index: i + 1, n: spec.n() });
        }
        let mut t = vec![0; spec.n()];
        t[i] = 1;
        Ok(Self::monomial(spec, Monomial::new(0, 0, 0, t), FieldElem::one()))
    }

    /// A polynomial in t₁..tₙ as a central element.
    pub fn from_poly(spec: &Arc<AlgebraSpec>, p: &MultiPoly) -> Self {
        assert_eq!(p.nvars(), spec.n(), "polynomial arity");
        Self::from_terms(spec, p.terms().map(|(e, c)| (Monomial::new(0, 0, 0, e.to_vec()), c.clone())))
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElem> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, FieldElem> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// The value if this element is a scalar multiple of 1.
    pub fn as_scalar(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m == &Monomial::one(self.spec.n())).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in canonical order: weighted degree, then (i, j, k, m).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &FieldElem)> {
        let w = self.spec.weight();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| m.weighted_degree(w));
        v
    }

    /// Maximum weighted degree; `None` stands for −∞ (the zero element).
    pub fn weighted_degree(&self) -> Option<u32> {
        let w = self.spec.weight();
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.spec.id() == other.spec.id() {
            Ok(())
        } else {
            Err(DuaError::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element {
            spec: self.spec.clone(),
            terms: mul_terms(&self.spec, &self.terms, &other.terms),
        })
    }

    pub fn scale(&self, c: &FieldElem) -> Element {
        if c.is_zero() {
            return Element::zero(&self.spec);
        }
        Element {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), c * x)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::one(&self.spec);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Drops terms whose monomials fail `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            spec: self.spec.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The same combination re-tagged to another spec with equal n. The
    /// coefficients are mapped by `f`.
    pub fn transport(&self, target: &Arc<AlgebraSpec>, f: impl Fn(&FieldElem) -> FieldElem) -> Result<Element> {
        if target.n() != self.spec.n() {
            return Err(DuaError::ArityMismatch {
                expected: target.n(),
                found: self.spec.n(),
            });
        }
        Ok(Element::from_terms(target, self.terms.iter().map(|(m, c)| (m.clone(), f(c)))))
    }
}

/// ab − ba.
pub fn commutator(a: &Element, b: &Element) -> Result<Element> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    /// Panics on a spec mismatch; use [`Element::try_add`] to handle it.
    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).expect("elements of different specs")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        self.try_sub(rhs).expect("elements of different specs")
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &'a Element) -> Element {
        self.try_mul(rhs).expect("elements of different specs")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{reduce_word, reduce_word_with, Letter, SpecParams, Strategy as Rewrite, Word};
    use crate::coeff::FieldDescriptor;
    use proptest::prelude::*;

    fn spec(alpha: i64, beta: i64, phi: MultiPoly) -> Arc<AlgebraSpec> {
        AlgebraSpec::from_alpha_beta(phi.nvars(), FieldDescriptor::Rational, alpha.into(), beta.into(), phi).unwrap()
    }

    fn t1() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    fn word_product(s: &Arc<AlgebraSpec>, w: &[Letter]) -> Element {
        w.iter().fold(Element::one(s), |acc, l| {
            let g = match l {
                Letter::U => Element::u(s),
                Letter::D => Element::d(s),
                Letter::T(i) => Element::t(s, *i).unwrap(),
            };
            &acc * &g
        })
    }

    #[test]
    fn generator_products() {
        let s = spec(2, -1, t1());
        let (u, d) = (Element::u(&s), Element::d(&s));
        assert_eq!(&d * &u, Element::du(&s));
        assert_eq!((&u * &d).terms().keys().next().unwrap(), &Monomial::new(1, 0, 1, vec![0]));
        assert_eq!(&Element::du(&s) * &Element::du(&s), Element::monomial(&s, Monomial::new(0, 2, 0, vec![0]), FieldElem::one()));
        let rel = &(&(&d * &d) * &u) - &(&(&(&d * &u) * &d).scale(&2.into()) - &(&(&(&u * &d) * &d) - &(&Element::from_poly(&s, &t1()) * &d)));
        assert!(rel.is_zero(), "{rel}");
    }

    #[test]
    fn additive_identities() {
        let s = spec(2, -1, t1());
        let a = &Element::u(&s) + &Element::d(&s).scale(&3.into());
        assert_eq!(&a + &Element::zero(&s), a);
        assert!((&a + &a.scale(&(-1).into())).is_zero());
        let t = Element::t(&s, 0).unwrap();
        let d = Element::d(&s);
        assert_eq!(&(&t * &d) + &(&d * &t), (&d * &t).scale(&2.into()));
        assert_eq!(commutator(&t, &d).unwrap(), Element::zero(&s));
    }

    #[test]
    fn mixing_specs_is_an_error() {
        let a = spec(1, 1, t1());
        let b = spec(1, 1, t1());
        assert_eq!(Element::u(&a).try_mul(&Element::u(&b)), Err(DuaError::SpecMismatch));
    }

    #[test]
    fn weighted_degrees() {
        let s = spec(2, -1, t1());
        let m = Element::monomial(&s, Monomial::new(1, 1, 1, vec![1]), FieldElem::one());
        assert_eq!(m.weighted_degree(), Some(5));
        let s2 = spec(2, -1, &t1() * &t1());
        assert_eq!(Element::d(&s2).weighted_degree(), Some(2));
        assert_eq!(Element::zero(&s2).weighted_degree(), None);
    }

    #[test]
    fn display_round_trip_form() {
        let s = spec(2, -1, t1());
        let e = &Element::u(&s) * &Element::du(&s) - Element::scalar(&s, FieldElem::from_ratio(1, 2));
        assert_eq!(e.to_string(), "-1/2 + u*(d*u)");
    }

    #[test]
    fn uncached_engine_agrees() {
        let cached = spec(3, 5, &t1() * &t1());
        let bare = SpecParams::new(1, FieldDescriptor::Rational, &t1() * &t1())
            .alpha_beta(3.into(), 5.into())
            .memo_capacity(0)
            .build()
            .unwrap();
        let w = Word::parse("ddduuudduu").unwrap();
        let a = word_product(&cached, &w.letters);
        let b = word_product(&bare, &w.letters).transport(&cached, |c| c.clone()).unwrap();
        assert_eq!(a, b);
        assert_eq!(bare.memo_len(), 0);
        assert!(cached.memo_len() > 0);
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(prop_oneof![4 => Just(Letter::U), 4 => Just(Letter::D), 1 => Just(Letter::T(0))], 0..=8)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn engine_matches_rewriter(w in letters(), a in -3i64..=3, b in -3i64..=3) {
            let s = spec(a, b, &t1() + &MultiPoly::constant(1, FieldElem::from_i64(2)));
            let word = Word::new(w.clone());
            let left = reduce_word_with(&word, &s, Rewrite::Leftmost).unwrap();
            let right = reduce_word_with(&word, &s, Rewrite::Rightmost).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(word_product(&s, &w), left);
        }

        #[test]
        fn normal_words_are_fixed(i in 0u32..3, j in 0u32..3, k in 0u32..3, m in 0u32..3) {
            let s = spec(2, -1, t1());
            let mut w = vec![Letter::U; i as usize];
            for _ in 0..j { w.extend([Letter::D, Letter::U]); }
            w.extend(std::iter::repeat_n(Letter::D, k as usize));
            w.extend(std::iter::repeat_n(Letter::T(0), m as usize));
            let e = reduce_word(&Word::new(w), &s).unwrap();
            prop_assert_eq!(e, Element::monomial(&s, Monomial::new(i, j, k, vec![m]), FieldElem::one()));
        }
    }
}
