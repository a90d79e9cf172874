//! Algebra specifications A(α, β, φ) and their spec-file format.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use crate::coeff::{sqrt_in_field, CyclotomicField, FieldDescriptor, FieldElem, MultiPoly};
use crate::error::{DuaError, Result};
use crate::parse::{parse_poly, parse_scalar};

use super::element::Monomial;

/// Default cap on memoized straightening entries per spec.
pub const DEFAULT_MEMO_CAPACITY: usize = 10_000;

pub(crate) type MemoEntry = Arc<Vec<(Monomial, FieldElem)>>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// One algebra: n, the coefficient field, α, β, optional roots r, s of
/// x² − αx − β, and φ ∈ K[t₁..tₙ].
///
/// Specs are shared behind `Arc`; every constructed spec has a fresh
/// identity, and elements of distinct specs never mix.
pub struct AlgebraSpec {
    id: u64,
    n: usize,
    field: FieldDescriptor,
    alpha: FieldElem,
    beta: FieldElem,
    roots: Option<(FieldElem, FieldElem)>,
    phi: MultiPoly,
    weight: u32,
    memo: RwLock<HashMap<(u32, u32), MemoEntry>>,
    memo_capacity: usize,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A(alpha={}, beta={}, phi={}) n={} over {}",
            self.alpha, self.beta, self.phi, self.n, self.field
        )?;
        if let Some((r, s)) = &self.roots {
            write!(f, ", r={r}, s={s}")?;
        }
        Ok(())
    }
}

/// Builder-style parameters. Give either (α, β) or (r, s) or both.
#[derive(Clone, Debug)]
pub struct SpecParams {
    pub n: usize,
    pub field: FieldDescriptor,
    pub alpha: Option<FieldElem>,
    pub beta: Option<FieldElem>,
    pub r: Option<FieldElem>,
    pub s: Option<FieldElem>,
    pub phi: MultiPoly,
    pub memo_capacity: usize,
}

impl SpecParams {
    pub fn new(n: usize, field: FieldDescriptor, phi: MultiPoly) -> Self {
        SpecParams {
            n,
            field,
            alpha: None,
            beta: None,
            r: None,
            s: None,
            phi,
            memo_capacity: DEFAULT_MEMO_CAPACITY,
        }
    }

    pub fn alpha_beta(mut self, alpha: FieldElem, beta: FieldElem) -> Self {
        self.alpha = Some(alpha);
        self.beta = Some(beta);
        self
    }

    pub fn roots(mut self, r: FieldElem, s: FieldElem) -> Self {
        self.r = Some(r);
        self.s = Some(s);
        self
    }

    pub fn memo_capacity(mut self, cap: usize) -> Self {
        self.memo_capacity = cap;
        self
    }

    pub fn build(self) -> Result<Arc<AlgebraSpec>> {
        if self.phi.nvars() != self.n {
            return Err(DuaError::ArityMismatch {
                expected: self.n,
                found: self.phi.nvars(),
            });
        }
        if let FieldDescriptor::RationalFunction { arity, .. } = &self.field {
            if self.n > 0 && *arity != self.n {
                return Err(DuaError::ArityMismatch {
                    expected: self.n,
                    found: *arity,
                });
            }
        }
        let check = |name: &str, x: &FieldElem| {
            if self.field.contains(x) {
                Ok(())
            } else {
                Err(DuaError::FieldMismatch(format!("{name} = {x} is not in {}", self.field)))
            }
        };
        for (name, v) in [("alpha", &self.alpha), ("beta", &self.beta), ("r", &self.r), ("s", &self.s)] {
            if let Some(x) = v {
                check(name, x)?;
            }
        }
        for (_, c) in self.phi.terms() {
            check("phi coefficient", c)?;
        }
        let (alpha, beta, roots) = match (self.alpha, self.beta, self.r, self.s) {
            (a, b, Some(r), Some(s)) => {
                let (ar, br) = (&r + &s, -(&r * &s));
                if let (Some(a), Some(b)) = (&a, &b) {
                    if a != &ar || b != &br {
                        return Err(DuaError::InconsistentRoots(format!(
                            "r + s = {ar}, -rs = {br} but alpha = {a}, beta = {b}"
                        )));
                    }
                } else if a.is_some() || b.is_some() {
                    return Err(DuaError::SpecFile("give both alpha and beta, or neither".into()));
                }
                (ar, br, Some((r, s)))
            }
            (Some(a), Some(b), None, None) => {
                let roots = solve_roots(&self.field, &a, &b);
                (a, b, roots)
            }
            (_, _, Some(_), None) | (_, _, None, Some(_)) => {
                return Err(DuaError::SpecFile("give both r and s, or neither".into()))
            }
            _ => return Err(DuaError::SpecFile("missing alpha/beta (or r/s)".into())),
        };
        let weight = self.phi.total_degree().unwrap_or(0).max(1);
        Ok(Arc::new(AlgebraSpec {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            n: self.n,
            field: self.field,
            alpha,
            beta,
            roots,
            phi: self.phi,
            weight,
            memo: RwLock::new(HashMap::new()),
            memo_capacity: self.memo_capacity,
        }))
    }
}

/// Roots of x² − αx − β in the field, as r = (α + √D)/2, s = (α − √D)/2.
fn solve_roots(field: &FieldDescriptor, alpha: &FieldElem, beta: &FieldElem) -> Option<(FieldElem, FieldElem)> {
    let disc = &(alpha * alpha) + &(&FieldElem::from_i64(4) * beta);
    let root = sqrt_in_field(&disc, &field.roots_of_unity())?;
    let half = FieldElem::from_ratio(1, 2);
    let r = &(alpha + &root) * &half;
    let s = &(alpha - &root) * &half;
    Some((r, s))
}

impl AlgebraSpec {
    /// A(α, β, φ); roots are solved for when they lie in the field.
    pub fn from_alpha_beta(n: usize, field: FieldDescriptor, alpha: FieldElem, beta: FieldElem, phi: MultiPoly) -> Result<Arc<Self>> {
        SpecParams::new(n, field, phi).alpha_beta(alpha, beta).build()
    }

    /// A(r + s, −rs, φ).
    pub fn from_roots(n: usize, field: FieldDescriptor, r: FieldElem, s: FieldElem, phi: MultiPoly) -> Result<Arc<Self>> {
        SpecParams::new(n, field, phi).roots(r, s).build()
    }

    /// Same parameters under a fresh identity and an empty memo.
    pub fn params(&self) -> SpecParams {
        let mut p = SpecParams::new(self.n, self.field.clone(), self.phi.clone()).memo_capacity(self.memo_capacity);
        p.alpha = Some(self.alpha.clone());
        p.beta = Some(self.beta.clone());
        if let Some((r, s)) = &self.roots {
            p.r = Some(r.clone());
            p.s = Some(s.clone());
        }
        p
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElem {
        &self.beta
    }

    pub fn phi(&self) -> &MultiPoly {
        &self.phi
    }

    pub fn roots(&self) -> Option<(&FieldElem, &FieldElem)> {
        self.roots.as_ref().map(|(r, s)| (r, s))
    }

    /// The roots, or the "roots r,s required" error.
    pub fn require_roots(&self) -> Result<(&FieldElem, &FieldElem)> {
        self.roots().ok_or(DuaError::MissingRoots)
    }

    /// w(u) = w(d) = max(deg φ, 1); each tᵢ has weight 1.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// True when both specs define the same algebra (ignoring identity).
    pub fn same_parameters(&self, other: &AlgebraSpec) -> bool {
        self.n == other.n
            && self.field == other.field
            && self.alpha == other.alpha
            && self.beta == other.beta
            && self.phi == other.phi
    }

    pub(crate) fn memo_get(&self, key: (u32, u32)) -> Option<MemoEntry> {
        self.memo.read().unwrap().get(&key).cloned()
    }

    pub(crate) fn memo_put(&self, key: (u32, u32), v: MemoEntry) {
        let mut m = self.memo.write().unwrap();
        if m.len() < self.memo_capacity {
            m.insert(key, v);
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn memo_capacity(&self) -> usize {
        self.memo_capacity
    }
}

fn toml_scalar_text(v: &toml::Value, key: &str) -> Result<String> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        _ => Err(DuaError::SpecFile(format!("`{key}` must be a string or an integer"))),
    }
}

/// Parses the key/value spec format:
///
/// ```toml
/// n = 1
/// alpha = 2
/// beta = -1
/// phi = "t1"
/// [field]
/// kind = "rational"   # or "cyclotomic" (with m) or "rational_function"
/// ```
///
/// `r` and `s` may replace or accompany `alpha` and `beta`. For a
/// rational-function field, `field.arity` defaults to `n`, and `field.m`
/// selects a cyclotomic constant field. Scalars over a rational-function
/// field may use t1..t_arity as function-field variables; `phi` does too
/// when `n = 0`.
pub fn spec_load(text: &str) -> Result<Arc<AlgebraSpec>> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| DuaError::SpecFile(e.message().to_string()))?;
    let known = ["n", "field", "alpha", "beta", "r", "s", "phi"];
    if let Some(k) = table.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(DuaError::SpecFile(format!("unknown key `{k}`")));
    }
    let n = match table.get("n") {
        Some(toml::Value::Integer(n)) if *n >= 0 => *n as usize,
        Some(_) => return Err(DuaError::SpecFile("`n` must be a natural number".into())),
        None => return Err(DuaError::SpecFile("missing `n`".into())),
    };
    let field = match table.get("field") {
        None => FieldDescriptor::Rational,
        Some(toml::Value::Table(f)) => field_from_table(f, n)?,
        Some(toml::Value::String(kind)) if kind == "rational" => FieldDescriptor::Rational,
        Some(_) => return Err(DuaError::SpecFile("`field` must be a table".into())),
    };
    let scalar = |key: &str| -> Result<Option<FieldElem>> {
        table
            .get(key)
            .map(|v| parse_scalar(&toml_scalar_text(v, key)?, &field))
            .transpose()
    };
    let phi = match table.get("phi") {
        None => MultiPoly::zero(n),
        Some(v) => {
            let text = toml_scalar_text(v, "phi")?;
            if n == 0 {
                MultiPoly::constant(0, parse_scalar(&text, &field)?)
            } else {
                parse_poly(&text, n, &field)?
            }
        }
    };
    let mut p = SpecParams::new(n, field.clone(), phi);
    p.alpha = scalar("alpha")?;
    p.beta = scalar("beta")?;
    p.r = scalar("r")?;
    p.s = scalar("s")?;
    if p.alpha.is_some() != p.beta.is_some() {
        return Err(DuaError::SpecFile("give both alpha and beta, or neither".into()));
    }
    p.build()
}

fn field_from_table(f: &toml::Table, n: usize) -> Result<FieldDescriptor> {
    let int = |key: &str| -> Result<Option<u32>> {
        match f.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(v)) if *v >= 0 && *v <= u32::MAX as i64 => Ok(Some(*v as u32)),
            Some(_) => Err(DuaError::SpecFile(format!("`field.{key}` must be a natural number"))),
        }
    };
    let kind = match f.get("kind") {
        Some(toml::Value::String(k)) => k.as_str(),
        None => "rational",
        Some(_) => return Err(DuaError::SpecFile("`field.kind` must be a string".into())),
    };
    let base = match int("m")? {
        Some(0) => return Err(DuaError::SpecFile("`field.m` must be at least 1".into())),
        Some(m) => FieldDescriptor::Cyclotomic(CyclotomicField::new(m)),
        None => FieldDescriptor::Rational,
    };
    match kind {
        "rational" => Ok(FieldDescriptor::Rational),
        "cyclotomic" => match base {
            FieldDescriptor::Rational => Err(DuaError::SpecFile("cyclotomic field needs `m`".into())),
            c => Ok(c),
        },
        "rational_function" => {
            let arity = int("arity")?.map_or(n, |a| a as usize);
            FieldDescriptor::rational_function(arity, base)
        }
        other => Err(DuaError::SpecFile(format!("unknown field kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldElem::from_i64(n)
    }

    #[test]
    fn double_root() {
        let s = spec_load("n = 1\nalpha = 2\nbeta = -1\nphi = \"t1\"\n[field]\nkind = \"rational\"\n").unwrap();
        assert_eq!(s.roots(), Some((&q(1), &q(1))));
        assert_eq!(s.weight(), 1);
    }

    #[test]
    fn roots_give_alpha_beta() {
        let s = spec_load("n = 1\nr = 2\ns = 3\nphi = \"t1\"\n").unwrap();
        assert_eq!(s.alpha(), &q(5));
        assert_eq!(s.beta(), &q(-6));
    }

    #[test]
    fn solves_quadratic() {
        let s = spec_load("n = 2\nalpha = 0\nbeta = 1\nphi = \"t1*t2\"\nfield.kind = \"rational\"\n").unwrap();
        assert_eq!(s.roots(), Some((&q(1), &q(-1))));
        assert_eq!(s.weight(), 2);
    }

    #[test]
    fn irrational_roots_stay_absent() {
        let s = spec_load("n = 0\nalpha = 1\nbeta = 1\n").unwrap();
        assert!(s.roots().is_none());
        let c = spec_load("n = 0\nalpha = 0\nbeta = -1\nfield.kind = \"cyclotomic\"\nfield.m = 4\n").unwrap();
        let (r, s) = c.roots().unwrap();
        assert_eq!(&(r * s), &q(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            spec_load("n = 1\nalpha = 5\nbeta = 6\nr = 2\ns = 3\n"),
            Err(DuaError::InconsistentRoots(_))
        ));
        assert!(matches!(
            spec_load("n = 1\nalpha = 1\nbeta = 1\nphi = \"t2\"\n"),
            Err(DuaError::IndexOutOfRange { index: 2, n: 1 })
        ));
        assert!(matches!(spec_load("n = 1\nalpha = 1\n"), Err(DuaError::SpecFile(_))));
        assert!(matches!(spec_load("n = 1\nalpha = 1\nbeta = 1\ngamma = 2\n"), Err(DuaError::SpecFile(_))));
    }

    #[test]
    fn cyclotomic_parameters() {
        let s = spec_load("n = 1\nr = \"zeta\"\ns = \"zeta\"\nphi = \"t1\"\n[field]\nkind = \"cyclotomic\"\nm = 6\n").unwrap();
        let z = s.field().zeta().unwrap();
        assert_eq!(s.alpha(), &(&z + &z));
    }

    #[test]
    fn function_field_constants() {
        let s = spec_load("n = 0\nr = 2\ns = \"1/2\"\nphi = \"t1\"\n[field]\nkind = \"rational_function\"\narity = 1\n").unwrap();
        assert_eq!(s.phi().constant_value().unwrap(), FieldElem::function_var(1, 0));
    }
}
