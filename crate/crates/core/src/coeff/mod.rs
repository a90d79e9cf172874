//! Exact coefficient arithmetic: ℚ, ℚ(ζ_m) and K(t₁,…,tₙ).
//!
//! Values are canonical: a cyclotomic or rational-function value that
//! happens to be rational is stored as [`FieldElem::Rational`], so structural
//! equality is field equality.

mod cyclotomic;
mod number;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_polynomial, totient, CyclotomicField};
pub use number::{mult_dependence, poly_substitute_affine, root_of_unity_order, sqrt_in_field, Dependence};
pub use poly::MultiPoly;
#[allow(unused_imports)]
pub(crate) use poly::join_signed_terms;
pub use ratfunc::RatFunc;

use crate::error::{DuaError, Result};

/// Which level of the tower ℚ ⊂ ℚ(ζ_m) ⊂ K(t₁,…,tₙ) an algebra lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rational,
    Cyclotomic(Arc<CyclotomicField>),
    /// Rational functions in `arity` variables over `base` (ℚ or ℚ(ζ_m)).
    RationalFunction { arity: usize, base: Box<FieldDescriptor> },
}

impl FieldDescriptor {
    /// ℚ(ζ_m); `m = 1` gives Φ₁ = x − 1, i.e. the rationals.
    pub fn cyclotomic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(DuaError::Precondition("cyclotomic order must be at least 1".into()));
        }
        Ok(FieldDescriptor::Cyclotomic(CyclotomicField::new(m)))
    }

    pub fn rational_function(arity: usize, base: FieldDescriptor) -> Result<Self> {
        if matches!(base, FieldDescriptor::RationalFunction { .. }) {
            return Err(DuaError::Unsupported("nested rational function fields".into()));
        }
        Ok(FieldDescriptor::RationalFunction {
            arity,
            base: Box::new(base),
        })
    }

    pub fn cyclotomic_field(&self) -> Option<&Arc<CyclotomicField>> {
        match self {
            FieldDescriptor::Rational => None,
            FieldDescriptor::Cyclotomic(f) => Some(f),
            FieldDescriptor::RationalFunction { base, .. } => base.cyclotomic_field(),
        }
    }

    pub fn function_arity(&self) -> Option<usize> {
        match self {
            FieldDescriptor::RationalFunction { arity, .. } => Some(*arity),
            _ => None,
        }
    }

    /// The base field below any function-field level.
    pub fn constants(&self) -> &FieldDescriptor {
        match self {
            FieldDescriptor::RationalFunction { base, .. } => base,
            other => other,
        }
    }

    pub fn zeta(&self) -> Option<FieldElem> {
        self.cyclotomic_field().map(FieldElem::zeta)
    }

    /// Every root of unity in the constant field.
    pub fn roots_of_unity(&self) -> Vec<FieldElem> {
        let mut out = vec![FieldElem::one(), FieldElem::from_i64(-1)];
        if let Some(f) = self.cyclotomic_field() {
            let z = FieldElem::zeta(f);
            let mut p = FieldElem::one();
            for _ in 0..f.order() {
                for c in [p.clone(), -&p] {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
                p = &p * &z;
            }
        }
        out
    }

    /// Whether `x` is a legal value of this field.
    pub fn contains(&self, x: &FieldElem) -> bool {
        match (self, x) {
            (_, FieldElem::Rational(_)) => true,
            (FieldDescriptor::Rational, _) => false,
            (FieldDescriptor::Cyclotomic(f), FieldElem::Cyclotomic(c)) => f == &c.field,
            (FieldDescriptor::Cyclotomic(_), _) => false,
            (FieldDescriptor::RationalFunction { base, .. }, FieldElem::Cyclotomic(_)) => base.contains(x),
            (FieldDescriptor::RationalFunction { arity, .. }, FieldElem::RationalFunction(r)) => {
                r.nvars() == *arity
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::Cyclotomic(c) => write!(f, "cyclotomic({})", c.order()),
            FieldDescriptor::RationalFunction { arity, base } => write!(f, "rational_function({arity}) over {base}"),
        }
    }
}

/// A reduced element of ℚ(ζ_m) of degree at least one in ζ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coefficients of 1, ζ, ζ², … (below deg Φ_m).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

/// An exact scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Cyclotomic(CycloElem),
    RationalFunction(RatFunc),
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Cyclotomic(c) => cyclotomic::fmt_zeta_poly(&c.coeffs, f),
            FieldElem::RationalFunction(r) => write!(f, "{r}"),
        }
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_i64(n)
    }
}

impl From<BigRational> for FieldElem {
    fn from(q: BigRational) -> Self {
        FieldElem::Rational(q)
    }
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElem::Rational(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElem::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        FieldElem::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn zeta(field: &Arc<CyclotomicField>) -> Self {
        let mut coeffs = vec![BigRational::zero(), BigRational::one()];
        coeffs = field.reduce(&coeffs);
        Self::from_cyclo(field.clone(), coeffs)
    }

    /// Builds a value from coefficients of 1, ζ, ζ², …, reducing modulo Φ_m.
    pub fn from_zeta_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        Self::from_cyclo(field.clone(), field.reduce(coeffs))
    }

    fn from_cyclo(field: Arc<CyclotomicField>, mut coeffs: Vec<BigRational>) -> Self {
        cyclotomic::trim(&mut coeffs);
        match coeffs.len() {
            0 => FieldElem::zero(),
            1 => FieldElem::Rational(coeffs.pop().unwrap()),
            _ => FieldElem::Cyclotomic(CycloElem { field, coeffs }),
        }
    }

    /// Wraps a rational function, collapsing constants.
    pub fn from_ratfunc(r: RatFunc) -> Self {
        if r.denominator().is_one() {
            if let Some(c) = r.numerator().constant_value() {
                return c;
            }
        }
        FieldElem::RationalFunction(r)
    }

    /// The function-field element `tᵢ` (0-based index) in `arity` variables.
    pub fn function_var(arity: usize, i: usize) -> Self {
        FieldElem::RationalFunction(RatFunc::from_poly(MultiPoly::var(arity, i)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            _ => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Renders without needing parentheses inside a product.
    pub(crate) fn is_atomic(&self) -> bool {
        match self {
            FieldElem::Rational(q) => !q.is_negative(),
            FieldElem::Cyclotomic(c) => c.coeffs.iter().filter(|x| !x.is_zero()).count() == 1 && {
                let lead = c.coeffs.iter().rev().find(|x| !x.is_zero()).unwrap();
                !lead.is_negative()
            },
            FieldElem::RationalFunction(_) => false,
        }
    }

    pub fn try_inv(&self) -> Result<FieldElem> {
        match self {
            FieldElem::Rational(q) => {
                if q.is_zero() {
                    Err(DuaError::DivisionByZero)
                } else {
                    Ok(FieldElem::Rational(q.recip()))
                }
            }
            FieldElem::Cyclotomic(c) => {
                let inv = c.field.inverse(&c.coeffs).ok_or(DuaError::DivisionByZero)?;
                Ok(Self::from_cyclo(c.field.clone(), inv))
            }
            FieldElem::RationalFunction(r) => r.inv().map(Self::from_ratfunc).ok_or(DuaError::DivisionByZero),
        }
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self * &other.try_inv()?)
    }

    pub fn pow_u(&self, mut k: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = FieldElem::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<FieldElem> {
        if k >= 0 {
            Ok(self.pow_u(k as u32))
        } else {
            Ok(self.try_inv()?.pow_u(k.unsigned_abs() as u32))
        }
    }

    fn binop(&self, rhs: &FieldElem, op: Op) -> FieldElem {
        use FieldElem::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(op.apply_q(a, b)),
            (Cyclotomic(a), Cyclotomic(b)) => {
                assert!(
                    a.field == b.field,
                    "field mismatch: {:?} vs {:?}",
                    a.field,
                    b.field
                );
                cyclo_op(&a.field, &a.coeffs, &b.coeffs, op)
            }
            (Cyclotomic(a), Rational(b)) => cyclo_op(&a.field, &a.coeffs, std::slice::from_ref(b), op),
            (Rational(a), Cyclotomic(b)) => cyclo_op(&b.field, std::slice::from_ref(a), &b.coeffs, op),
            (RationalFunction(a), RationalFunction(b)) => {
                assert_eq!(a.nvars(), b.nvars(), "function field arity mismatch");
                ratfunc_op(a, b, op)
            }
            (RationalFunction(a), c) => ratfunc_op(a, &RatFunc::constant(a.nvars(), c.clone()), op),
            (c, RationalFunction(b)) => ratfunc_op(&RatFunc::constant(b.nvars(), c.clone()), b, op),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl Op {
    fn apply_q(self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        }
    }
}

fn cyclo_op(field: &Arc<CyclotomicField>, a: &[BigRational], b: &[BigRational], op: Op) -> FieldElem {
    let coeffs = match op {
        Op::Add | Op::Sub => {
            let mut out = vec![BigRational::zero(); a.len().max(b.len())];
            for (i, x) in a.iter().enumerate() {
                out[i] += x;
            }
            for (i, y) in b.iter().enumerate() {
                match op {
                    Op::Add => out[i] += y,
                    _ => out[i] -= y,
                }
            }
            out
        }
        Op::Mul => field.reduce(&cyclotomic::upoly_mul(a, b)),
    };
    FieldElem::from_cyclo(field.clone(), coeffs)
}

fn ratfunc_op(a: &RatFunc, b: &RatFunc, op: Op) -> FieldElem {
    let r = match op {
        Op::Add => a.add(b),
        Op::Sub => a.add(&b.neg()),
        Op::Mul => a.mul(b),
    };
    FieldElem::from_ratfunc(r)
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.binop(rhs, Op::Add)
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        self.binop(rhs, Op::Sub)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.binop(rhs, Op::Mul)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(-q),
            FieldElem::Cyclotomic(c) => FieldElem::Cyclotomic(CycloElem {
                field: c.field.clone(),
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
            FieldElem::RationalFunction(r) => FieldElem::RationalFunction(r.neg()),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Operation selector for [`field_arith`].
#[derive(Clone, Debug)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(i64),
    Eq,
}

/// Result of [`field_arith`]: a value, or a truth value for `Eq`.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldResult {
    Value(FieldElem),
    Bool(bool),
}

/// Uniform entry point for exact field arithmetic. `b` is ignored for
/// `Inv` and `Pow`.
pub fn field_arith(op: FieldOp, a: &FieldElem, b: &FieldElem) -> Result<FieldResult> {
    let compatible = match (a, b) {
        (FieldElem::Cyclotomic(x), FieldElem::Cyclotomic(y)) => x.field == y.field,
        (FieldElem::RationalFunction(x), FieldElem::RationalFunction(y)) => x.nvars() == y.nvars(),
        (FieldElem::Cyclotomic(_), FieldElem::RationalFunction(r))
        | (FieldElem::RationalFunction(r), FieldElem::Cyclotomic(_)) => {
            // ζ is a constant of K(t) only when K ⊇ ℚ(ζ); accept and let
            // coefficient-level checks catch mixing of distinct cyclotomic fields.
            r.nvars() > 0
        }
        _ => true,
    };
    if !compatible && !matches!(op, FieldOp::Inv | FieldOp::Pow(_)) {
        return Err(DuaError::FieldMismatch(format!("{a} and {b} live in different fields")));
    }
    Ok(match op {
        FieldOp::Add => FieldResult::Value(a + b),
        FieldOp::Sub => FieldResult::Value(a - b),
        FieldOp::Mul => FieldResult::Value(a * b),
        FieldOp::Div => FieldResult::Value(a.try_div(b)?),
        FieldOp::Inv => FieldResult::Value(a.try_inv()?),
        FieldOp::Pow(k) => FieldResult::Value(a.pow(k)?),
        FieldOp::Eq => FieldResult::Bool(a == b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> Arc<CyclotomicField> {
        CyclotomicField::new(m)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = FieldElem::zeta(&field(4));
        assert_eq!(&z * &z, FieldElem::from_i64(-1));
    }

    #[test]
    fn rational_sum() {
        let r = field_arith(FieldOp::Add, &FieldElem::from_ratio(2, 3), &FieldElem::from_ratio(1, 6)).unwrap();
        assert_eq!(r, FieldResult::Value(FieldElem::from_ratio(5, 6)));
    }

    #[test]
    fn zeta6_cubed() {
        let z = FieldElem::zeta(&field(6));
        assert_eq!(z.pow_u(3), FieldElem::from_i64(-1));
        assert_eq!(z.pow_u(6), FieldElem::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let e = field_arith(FieldOp::Div, &FieldElem::one(), &FieldElem::zero());
        assert_eq!(e, Err(DuaError::DivisionByZero));
        assert_eq!(FieldElem::zero().try_inv(), Err(DuaError::DivisionByZero));
    }

    #[test]
    fn mixed_cyclotomic_fields_rejected() {
        let a = FieldElem::zeta(&field(3));
        let b = FieldElem::zeta(&field(4));
        assert!(matches!(field_arith(FieldOp::Add, &a, &b), Err(DuaError::FieldMismatch(_))));
    }

    #[test]
    fn display_forms() {
        let f = field(6);
        let z = FieldElem::zeta(&f);
        // zeta^3 = -1 collapses to a rational
        assert_eq!(z.pow_u(3).to_string(), "-1");
        let x = &FieldElem::one() - &(&z * &FieldElem::from_i64(2));
        assert_eq!(x.to_string(), "1 - 2*zeta");
        assert_eq!(FieldElem::from_ratio(-3, 6).to_string(), "-1/2");
        let t = FieldElem::function_var(1, 0);
        let r = FieldElem::one().try_div(&(&t + &FieldElem::one())).unwrap();
        assert_eq!(r.to_string(), "1 / (t1 + 1)");
    }

    #[test]
    fn rational_functions_reduce() {
        let t = FieldElem::function_var(1, 0);
        let one = FieldElem::one();
        let a = (&t * &t) - one.clone(); // t^2 - 1
        let b = &t - &one;
        let q = a.try_div(&b).unwrap();
        assert_eq!(q, &t + &one);
        let back = &q * &b;
        assert_eq!(back, a);
        // (t^2 - 1)/(t - 1) - t == 1 collapses to a rational
        assert_eq!(&q - &t, FieldElem::one());
    }

    #[test]
    fn roots_of_unity_of_q_zeta6() {
        let d = FieldDescriptor::cyclotomic(6).unwrap();
        let roots = d.roots_of_unity();
        assert_eq!(roots.len(), 6);
        for r in roots {
            assert!(r.pow_u(6).is_one());
        }
    }
}
