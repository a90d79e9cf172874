//! Cyclotomic fields ℚ(ζ_m), stored densely modulo Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
pub(crate) type UPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn upoly_sub(a: &[BigRational], b: &[BigRational]) -> UPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub(crate) fn upoly_mul(a: &[BigRational], b: &[BigRational]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn upoly_divrem(a: &[BigRational], b: &[BigRational]) -> (UPoly, UPoly) {
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lb;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Inverse of `a` modulo the irreducible `m`, via the extended Euclidean algorithm.
fn upoly_inv_mod(a: &[BigRational], m: &[BigRational]) -> Option<UPoly> {
    let (mut r0, mut r1) = (m.to_vec(), upoly_divrem(a, m).1);
    let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = upoly_divrem(&r0, &r1);
        let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 = gcd, a constant when `a` is a unit.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: UPoly = s0.iter().map(|x| x / &c).collect();
    trim(&mut inv);
    Some(upoly_divrem(&inv, m).1)
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The m-th cyclotomic polynomial, lowest degree first, computed by dividing
/// x^m − 1 by Φ_d for every proper divisor d of m.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num: UPoly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let phi_d: UPoly = cyclotomic_polynomial(d)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let (q, r) = upoly_divrem(&num, &phi_d);
        debug_assert!(r.is_empty());
        num = q;
    }
    let out: Vec<BigInt> = num.into_iter().map(|c| c.to_integer()).collect();
    cache.lock().unwrap().insert(m, out.clone());
    out
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|k| num_integer::gcd(*k, m) == 1).count() as u32
}

/// The field ℚ(ζ_m) together with the minimal polynomial of ζ_m.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicField {
    m: u32,
    phi: Vec<BigRational>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.m)
    }
}

impl CyclotomicField {
    pub fn new(m: u32) -> Arc<Self> {
        let phi = cyclotomic_polynomial(m)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Arc::new(CyclotomicField { m, phi })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Integer coefficients of Φ_m, lowest degree first.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        self.phi.iter().map(|c| c.to_integer()).collect()
    }

    /// Every root of unity in ℚ(ζ_m) has order dividing this bound.
    pub fn root_of_unity_bound(&self) -> u32 {
        num_integer::lcm(2, self.m)
    }

    pub(crate) fn reduce(&self, p: &[BigRational]) -> UPoly {
        upoly_divrem(p, &self.phi).1
    }

    pub(crate) fn inverse(&self, p: &[BigRational]) -> Option<UPoly> {
        if p.is_empty() {
            return None;
        }
        upoly_inv_mod(p, &self.phi)
    }
}

/// Formats a reduced cyclotomic value as a polynomial in `zeta`, e.g. `1 - 2*zeta^3`.
pub(crate) fn fmt_zeta_poly(coeffs: &[BigRational], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let base = match k {
            0 => String::new(),
            1 => "zeta".to_string(),
            _ => format!("zeta^{k}"),
        };
        if k == 0 {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{base}")?;
        } else {
            write!(f, "{a}*{base}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=24 {
            let p = cyclotomic_polynomial(m);
            assert_eq!(p.len() as u32 - 1, totient(m), "m = {m}");
            assert_eq!(p.last().unwrap(), &BigInt::one());
        }
    }

    #[test]
    fn inverse_mod_phi() {
        let f = CyclotomicField::new(6);
        // 1 + zeta
        let a: UPoly = vec![BigRational::one(), BigRational::one()];
        let inv = f.inverse(&a).unwrap();
        let prod = f.reduce(&upoly_mul(&a, &inv));
        assert_eq!(prod, vec![BigRational::one()]);
    }
}
