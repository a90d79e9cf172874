//! Rational functions K(t₁,…,tₙ) over ℚ or ℚ(ζ_m).

use std::fmt;

use super::{FieldElem, MultiPoly};

/// `num / den` with coprime parts and a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let n = num.nvars();
        if num.is_zero() {
            return Some(RatFunc {
                num,
                den: MultiPoly::one(n),
            });
        }
        let g = MultiPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.lead().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.try_inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(num, &self.den * &o.den).unwrap()
    }

    pub(crate) fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub(crate) fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub(crate) fn inv(&self) -> Option<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Evaluates at a point; `None` where the denominator vanishes.
    pub fn eval(&self, point: &[FieldElem]) -> Option<FieldElem> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        self.num.eval(point).try_div(&d).ok()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
        }
    }
}

fn wrap(p: &MultiPoly) -> String {
    let s = p.to_string();
    if p.num_terms() > 1 || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}
