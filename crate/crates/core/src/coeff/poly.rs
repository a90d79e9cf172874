//! Sparse multivariate polynomials with exact field coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::FieldElem;

/// A polynomial in `nvars` commuting variables. Keys are exponent vectors;
/// the `BTreeMap` order is lexicographic with variable 0 most significant,
/// which doubles as the monomial order for division and GCD.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, FieldElem::one())
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, FieldElem::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: FieldElem) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, FieldElem)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: FieldElem) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<FieldElem> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(FieldElem::zero))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldElem)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElem {
        self.terms.get(exps).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Leading term in lex order.
    pub fn lead(&self) -> Option<(&Vec<u32>, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElem::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                term = &term * &x.pow_u(k);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images share one arity,
    /// which becomes the arity of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars)]).collect();
        let mut acc = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Re-indexes into a ring with `nvars` variables, moving variable `i` to `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MultiPoly {
        assert!(self.nvars + offset <= nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; nvars];
            ne[offset..offset + self.nvars].copy_from_slice(e);
            (ne, c.clone())
        });
        MultiPoly::from_terms(nvars, terms)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.lead()?;
        let dc_inv = dc.try_inv().ok()?;
        let mut q = MultiPoly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.lead() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let c = rc * &dc_inv;
            let t = MultiPoly::monomial(self.nvars, e, c);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Scales so the lex-leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.try_inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor over the coefficient field.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        assert_eq!(a.nvars, b.nvars);
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let top = (0..a.nvars)
            .rev()
            .find(|&v| a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0);
        let Some(v) = top else {
            return MultiPoly::one(a.nvars);
        };
        let ua = a.to_univariate(v);
        let ub = b.to_univariate(v);
        let ca = content(&ua);
        let cb = content(&ub);
        let gc = MultiPoly::gcd(&ca, &cb);
        let mut f = primitive(&ua, &ca);
        let mut g = primitive(&ub, &cb);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_empty() {
            if g.len() == 1 {
                f = vec![MultiPoly::one(a.nvars)];
                break;
            }
            let r = pseudo_rem(&f, &g);
            f = g;
            g = if r.is_empty() {
                r
            } else {
                let c = content(&r);
                primitive(&r, &c)
            };
        }
        let pp = MultiPoly::from_univariate(&f, v);
        (&gc * &pp).monic()
    }

    /// Coefficients of powers of variable `v` (each free of `v`).
    fn to_univariate(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[v], 0) as usize;
            out[k].add_term(e2, c.clone());
        }
        while out.last().is_some_and(|p| p.is_zero()) {
            out.pop();
        }
        out
    }

    fn from_univariate(coeffs: &[MultiPoly], v: usize) -> MultiPoly {
        let nvars = coeffs[0].nvars;
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                out.add_term(e2, x.clone());
            }
        }
        out
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let parts = keys.into_iter().map(|e| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            (self.terms[e].clone(), mono.join("*"))
        });
        join_signed_terms(parts)
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("t{i}")).collect()
    }
}

fn content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero(coeffs[0].nvars);
    for c in coeffs {
        g = MultiPoly::gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(coeffs: &[MultiPoly], content: &MultiPoly) -> Vec<MultiPoly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials over a polynomial ring.
fn pseudo_rem(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let lg = g.last().unwrap();
    let mut r: Vec<MultiPoly> = f.to_vec();
    while r.len() >= g.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - g.len();
        for c in r.iter_mut() {
            *c = &*c * lg;
        }
        for (i, gc) in g.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * gc);
        }
        debug_assert!(r.last().unwrap().is_zero());
        while r.last().is_some_and(|p| p.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Joins `(coefficient, monomial)` pairs into `a*x - b*y + c` form.
pub(crate) fn join_signed_terms(parts: impl IntoIterator<Item = (FieldElem, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in parts {
        let (neg, body) = signed_term(&c, &mono);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn signed_term(c: &FieldElem, mono: &str) -> (bool, String) {
    let (neg, mag) = match c.as_rational() {
        Some(q) if q < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
        _ => (false, c.clone()),
    };
    if mono.is_empty() {
        let s = mag.to_string();
        return (neg, if mag.is_atomic() { s } else { format!("({s})") });
    }
    if mag.is_one() {
        return (neg, mono.to_string());
    }
    if mag.is_atomic() {
        (neg, format!("{mag}*{mono}"))
    } else {
        (neg, format!("({mag})*{mono}"))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&MultiPoly::default_names(self.nvars)))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
