//! Expression grammar shared by spec files and the command line.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' nat)?
//! atom   := integer | 'u' | 'd' | 't'NAT | 'H' | 'K' | 'zeta' | '(' expr ')'
//! ```
//!
//! Products are noncommutative and associate to the left. Division is
//! accepted only by a nonzero scalar.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{AlgebraSpec, Element};
use crate::coeff::{FieldDescriptor, FieldElem, MultiPoly};
use crate::structure::{make_h, make_k};
use crate::error::{DuaError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    U,
    D,
    /// `t1`, `t2`, …; the index is 1-based as written.
    T(usize),
    H,
    K,
    Zeta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// A symbol and its byte offset in the source text.
    Sym(Symbol, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor and the byte offset of the `/`.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Number of summands at the top level, e.g. 4 for `a - b + c - d`.
    pub fn top_level_terms(&self) -> usize {
        match self {
            Expr::Add(a, _) | Expr::Sub(a, _) => a.top_level_terms() + 1,
            _ => 1,
        }
    }

    pub fn symbols(&self) -> Vec<(Symbol, usize)> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<(Symbol, usize)>) {
        match self {
            Expr::Int(_) => {}
            Expr::Sym(s, p) => out.push((*s, *p)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// Evaluates bottom-up into any target ring.
    pub fn eval<T: EvalTarget>(&self, target: &T) -> Result<T::Value> {
        match self {
            Expr::Int(n) => target.int(n),
            Expr::Sym(s, p) => target.sym(*s, *p),
            Expr::Neg(a) => Ok(target.neg(a.eval(target)?)),
            Expr::Add(a, b) => Ok(target.add(a.eval(target)?, b.eval(target)?)),
            Expr::Sub(a, b) => {
                let b = target.neg(b.eval(target)?);
                Ok(target.add(a.eval(target)?, b))
            }
            Expr::Mul(a, b) => target.mul(a.eval(target)?, b.eval(target)?),
            Expr::Div(a, b, p) => target.div(a.eval(target)?, b.eval(target)?, *p),
            Expr::Pow(a, k) => {
                let base = a.eval(target)?;
                let mut acc = target.int(&BigInt::from(1))?;
                for _ in 0..*k {
                    acc = target.mul(acc, base.clone())?;
                }
                Ok(acc)
            }
        }
    }
}

/// A ring that expressions can be evaluated into.
pub trait EvalTarget {
    type Value: Clone;
    fn int(&self, n: &BigInt) -> Result<Self::Value>;
    fn sym(&self, s: Symbol, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(Symbol),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[start..i].parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let sym = match word {
                "u" => Symbol::U,
                "d" => Symbol::D,
                "H" => Symbol::H,
                "K" => Symbol::K,
                "zeta" => Symbol::Zeta,
                _ => match word.strip_prefix('t').and_then(|k| k.parse::<usize>().ok()) {
                    Some(k) => Symbol::T(k),
                    _ => return Err(DuaError::UnknownSymbol(word.to_string())),
                },
            };
            out.push((Tok::Sym(sym), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(DuaError::parse(i, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k = u32::try_from(k).map_err(|_| DuaError::parse(at, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(DuaError::parse(at, "expected a natural-number exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s, at))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(DuaError::parse(self.offset(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(DuaError::parse(at, format!("unexpected `{c}`"))),
            None => Err(DuaError::parse(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into an expression tree without checking symbols
/// against any algebra.
pub fn parse_ast(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(DuaError::parse(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Evaluates into the constant field, with `t1..t_arity` as function-field
/// variables when the field is a rational function field.
pub struct ScalarTarget<'a> {
    pub field: &'a FieldDescriptor,
}

impl EvalTarget for ScalarTarget<'_> {
    type Value = FieldElem;

    fn int(&self, n: &BigInt) -> Result<FieldElem> {
        Ok(FieldElem::Rational(n.clone().into()))
    }

    fn sym(&self, s: Symbol, pos: usize) -> Result<FieldElem> {
        match s {
            Symbol::Zeta => self
                .field
                .zeta()
                .ok_or_else(|| DuaError::parse(pos, "`zeta` needs a cyclotomic field")),
            Symbol::T(i) => match self.field.function_arity() {
                Some(n) if i >= 1 && i <= n => Ok(FieldElem::function_var(n, i - 1)),
                Some(n) => Err(DuaError::IndexOutOfRange { index: i, n }),
                None => Err(DuaError::parse(pos, format!("t{i} is not a scalar"))),
            },
            _ => Err(DuaError::parse(pos, "algebra generator in a scalar")),
        }
    }

    fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        &a + &b
    }

    fn neg(&self, a: FieldElem) -> FieldElem {
        -a
    }

    fn mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(&a * &b)
    }

    fn div(&self, a: FieldElem, b: FieldElem, pos: usize) -> Result<FieldElem> {
        a.try_div(&b).map_err(|_| DuaError::parse(pos, "division by zero"))
    }
}

/// Evaluates into K[t1..tn] with scalar coefficients from `field`.
pub struct PolyTarget<'a> {
    pub n: usize,
    pub field: &'a FieldDescriptor,
}

impl EvalTarget for PolyTarget<'_> {
    type Value = MultiPoly;

    fn int(&self, n: &BigInt) -> Result<MultiPoly> {
        Ok(MultiPoly::constant(self.n, FieldElem::Rational(n.clone().into())))
    }

    fn sym(&self, s: Symbol, pos: usize) -> Result<MultiPoly> {
        match s {
            Symbol::T(i) if i >= 1 && i <= self.n => Ok(MultiPoly::var(self.n, i - 1)),
            Symbol::T(i) => Err(DuaError::IndexOutOfRange { index: i, n: self.n }),
            Symbol::Zeta => ScalarTarget { field: self.field }
                .sym(s, pos)
                .map(|z| MultiPoly::constant(self.n, z)),
            _ => Err(DuaError::parse(pos, "algebra generator in a polynomial in t")),
        }
    }

    fn add(&self, a: MultiPoly, b: MultiPoly) -> MultiPoly {
        &a + &b
    }

    fn neg(&self, a: MultiPoly) -> MultiPoly {
        -&a
    }

    fn mul(&self, a: MultiPoly, b: MultiPoly) -> Result<MultiPoly> {
        Ok(&a * &b)
    }

    fn div(&self, a: MultiPoly, b: MultiPoly, pos: usize) -> Result<MultiPoly> {
        let c = b
            .constant_value()
            .ok_or_else(|| DuaError::parse(pos, "division only by a scalar"))?;
        let inv = c.try_inv().map_err(|_| DuaError::parse(pos, "division by zero"))?;
        Ok(a.scale(&inv))
    }
}

pub fn parse_scalar(text: &str, field: &FieldDescriptor) -> Result<FieldElem> {
    parse_ast(text)?.eval(&ScalarTarget { field })
}

pub fn parse_poly(text: &str, n: usize, field: &FieldDescriptor) -> Result<MultiPoly> {
    parse_ast(text)?.eval(&PolyTarget { n, field })
}

/// Evaluates into an algebra; `H` and `K` need the roots r, s.
pub struct ElementTarget<'a> {
    pub spec: &'a Arc<AlgebraSpec>,
}

impl EvalTarget for ElementTarget<'_> {
    type Value = Element;

    fn int(&self, n: &BigInt) -> Result<Element> {
        Ok(Element::scalar(self.spec, FieldElem::Rational(n.clone().into())))
    }

    fn sym(&self, s: Symbol, pos: usize) -> Result<Element> {
        let spec = self.spec;
        match s {
            Symbol::U => Ok(Element::u(spec)),
            Symbol::D => Ok(Element::d(spec)),
            Symbol::H => make_h(spec),
            Symbol::K => make_k(spec),
            Symbol::T(i) if spec.n() > 0 => match i {
                1.. if i <= spec.n() => Element::t(spec, i - 1),
                _ => Err(DuaError::IndexOutOfRange { index: i, n: spec.n() }),
            },
            Symbol::T(_) | Symbol::Zeta => ScalarTarget { field: spec.field() }
                .sym(s, pos)
                .map(|c| Element::scalar(spec, c)),
        }
    }

    fn add(&self, a: Element, b: Element) -> Element {
        &a + &b
    }

    fn neg(&self, a: Element) -> Element {
        -&a
    }

    fn mul(&self, a: Element, b: Element) -> Result<Element> {
        a.try_mul(&b)
    }

    fn div(&self, a: Element, b: Element, pos: usize) -> Result<Element> {
        let c = b.as_scalar().ok_or_else(|| DuaError::parse(pos, "division only by a scalar"))?;
        let inv = c.try_inv().map_err(|_| DuaError::parse(pos, "division by zero"))?;
        Ok(a.scale(&inv))
    }
}

/// Parses and evaluates an algebra expression.
pub fn parse_expr(text: &str, spec: &Arc<AlgebraSpec>) -> Result<Element> {
    parse_ast(text)?.eval(&ElementTarget { spec })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_has_four_terms() {
        let e = parse_ast("d^2*u - 2*d*u*d + u*d^2 - t1*d").unwrap();
        assert_eq!(e.top_level_terms(), 4);
    }

    #[test]
    fn precedence() {
        let q = FieldDescriptor::Rational;
        assert_eq!(parse_scalar("-2^2 + 1/2*4", &q).unwrap(), FieldElem::from_i64(-2));
        assert_eq!(parse_scalar("(1 - 3)^3", &q).unwrap(), FieldElem::from_i64(-8));
        assert_eq!(parse_scalar("2 - 3 - 4", &q).unwrap(), FieldElem::from_i64(-5));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_ast("u + * d"), Err(DuaError::parse(4, "unexpected `*`")));
        assert_eq!(parse_ast("(u + d"), Err(DuaError::parse(6, "expected `)`")));
        assert_eq!(parse_ast("du"), Err(DuaError::UnknownSymbol("du".into())));
        assert!(matches!(parse_ast("u ^ d"), Err(DuaError::Parse { pos: 4, .. })));
        assert!(matches!(parse_ast("u $ d"), Err(DuaError::Parse { pos: 2, .. })));
    }

    #[test]
    fn polynomials() {
        let q = FieldDescriptor::Rational;
        let p = parse_poly("t1*t2 - 3", 2, &q).unwrap();
        assert_eq!(p.to_string(), "t1*t2 - 3");
        assert_eq!(parse_poly("t3", 2, &q), Err(DuaError::IndexOutOfRange { index: 3, n: 2 }));
        assert!(parse_poly("t1/t1", 1, &q).is_err());
        assert_eq!(parse_poly("(t1 + 1)^2/2", 1, &q).unwrap().to_string(), "1/2*t1^2 + t1 + 1/2");
    }

    #[test]
    fn zeta_needs_cyclotomic_field() {
        assert!(parse_scalar("zeta", &FieldDescriptor::Rational).is_err());
        let f = FieldDescriptor::cyclotomic(6).unwrap();
        assert_eq!(parse_scalar("zeta^3", &f).unwrap(), FieldElem::from_i64(-1));
    }

    #[test]
    fn element_expressions() {
        let phi = MultiPoly::var(1, 0);
        let spec = AlgebraSpec::from_alpha_beta(1, FieldDescriptor::Rational, 2.into(), (-1).into(), phi).unwrap();
        let rel = parse_expr("d^2*u - 2*d*u*d + u*d^2 - t1*d", &spec).unwrap();
        assert!(rel.is_zero());
        assert_eq!(parse_expr("d*(d*u)", &spec).unwrap(), parse_expr("d^2*u", &spec).unwrap());
        assert_eq!(parse_expr("t2", &spec), Err(DuaError::IndexOutOfRange { index: 2, n: 1 }));
        let no_roots = AlgebraSpec::from_alpha_beta(0, FieldDescriptor::Rational, 1.into(), 1.into(), MultiPoly::zero(0)).unwrap();
        let err = parse_expr("H*K", &no_roots).unwrap_err();
        assert_eq!(err.to_string(), "roots r,s required");
    }

    #[test]
    fn round_trip_display() {
        let spec = AlgebraSpec::from_roots(1, FieldDescriptor::cyclotomic(6).unwrap(), 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap();
        let a = parse_expr("(zeta*d + 1/2*u*t1)^3 - 3*d*u", &spec).unwrap();
        assert_eq!(parse_expr(&a.to_string(), &spec).unwrap(), a);
    }
}
