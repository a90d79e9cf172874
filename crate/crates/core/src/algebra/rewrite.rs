//! Literal word rewriting in the free algebra K⟨u, d, t₁..tₙ⟩.
//!
//! Rules, with leading words under degree-lex order u < d:
//!
//! ```text
//! ddu → α·dud + β·udd + φ·d
//! duu → α·udu + β·uud + φ·u
//! ```
//!
//! The t's are central and commuted to the right first. This rewriter does
//! not use the straightening table, so it serves as a cross-check of the
//! multiplication engine as well as the confluence test.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::element::{Element, Monomial};
use super::spec::AlgebraSpec;
use crate::coeff::{join_signed_terms, FieldElem};
use crate::error::{DuaError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    U,
    D,
    /// tᵢ with a 0-based index.
    T(usize),
}

/// A scalar times a word over {u, d, t₁..tₙ}.
#[derive(Clone, Debug, PartialEq)]
pub struct Word {
    pub coeff: FieldElem,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word {
            coeff: FieldElem::one(),
            letters,
        }
    }

    /// Reads a compact word such as `ddu` or `dut1u`.
    pub fn parse(text: &str) -> Result<Self> {
        let b = text.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < b.len() {
            match b[i] {
                b'u' => letters.push(Letter::U),
                b'd' => letters.push(Letter::D),
                b't' => {
                    let start = i + 1;
                    let mut end = start;
                    while end < b.len() && b[end].is_ascii_digit() {
                        end += 1;
                    }
                    let idx: usize = text[start..end]
                        .parse()
                        .map_err(|_| DuaError::parse(i, "expected an index after `t`"))?;
                    if idx == 0 {
                        return Err(DuaError::parse(i, "t indices start at 1"));
                    }
                    letters.push(Letter::T(idx - 1));
                    i = end;
                    continue;
                }
                b' ' | b'*' => {}
                _ => return Err(DuaError::parse(i, "expected u, d or t<N>")),
            }
            i += 1;
        }
        Ok(Word::new(letters))
    }
}

/// Which occurrence of a leading word is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// A u/d word; `true` is d. Ordered by length, then lexicographically
/// with u < d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct UdWord(Vec<bool>);

impl Ord for UdWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for UdWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A free-algebra combination Σ c·w·t^m with all t's on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCombo {
    n: usize,
    terms: BTreeMap<(UdWord, Vec<u32>), FieldElem>,
}

const DDU: [bool; 3] = [true, true, false];
const DUU: [bool; 3] = [true, false, false];

impl FreeCombo {
    fn zero(n: usize) -> Self {
        FreeCombo {
            n,
            terms: BTreeMap::new(),
        }
    }

    fn add(&mut self, w: Vec<bool>, t: Vec<u32>, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let key = (UdWord(w), t);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    fn from_word(w: &Word, n: usize) -> Result<Self> {
        let mut ud = Vec::new();
        let mut t = vec![0; n];
        for l in &w.letters {
            match l {
                Letter::U => ud.push(false),
                Letter::D => ud.push(true),
                Letter::T(i) if *i < n => t[*i] += 1,
                Letter::T(i) => return Err(DuaError::IndexOutOfRange { index: i + 1, n }),
            }
        }
        let mut c = Self::zero(n);
        c.add(ud, t, w.coeff.clone());
        Ok(c)
    }

    fn from_letters(letters: &str, n: usize, c: FieldElem) -> Self {
        let mut out = Self::zero(n);
        out.add(letters.bytes().map(|b| b == b'd').collect(), vec![0; n], c);
        out
    }

    fn plus(mut self, other: &FreeCombo) -> Self {
        for ((w, t), c) in &other.terms {
            self.add(w.0.clone(), t.clone(), c.clone());
        }
        self
    }

    fn scaled(&self, c: &FieldElem) -> Self {
        let mut out = Self::zero(self.n);
        for ((w, t), x) in &self.terms {
            out.add(w.0.clone(), t.clone(), c * x);
        }
        out
    }

    /// Multiplies by a polynomial in t (central).
    fn times_poly(&self, spec: &AlgebraSpec) -> Self {
        let mut out = Self::zero(self.n);
        for ((w, t), x) in &self.terms {
            for (e, pc) in spec.phi().terms() {
                let t2 = t.iter().zip(e).map(|(a, b)| a + b).collect();
                out.add(w.0.clone(), t2, x * pc);
            }
        }
        out
    }

    fn concat(&self, other: &FreeCombo) -> Self {
        let mut out = Self::zero(self.n);
        for ((w1, t1), c1) in &self.terms {
            for ((w2, t2), c2) in &other.terms {
                let w = w1.0.iter().chain(&w2.0).copied().collect();
                let t = t1.iter().zip(t2).map(|(a, b)| a + b).collect();
                out.add(w, t, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FreeCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.terms.iter().rev().map(|((w, t), c)| {
            let mut s: String = w.0.iter().map(|&b| if b { 'd' } else { 'u' }).collect();
            for (i, &e) in t.iter().enumerate() {
                if e > 0 {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&format!("t{}", i + 1));
                    if e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
            }
            (c.clone(), s)
        });
        f.write_str(&join_signed_terms(parts))
    }
}

fn find(w: &[bool], strategy: Strategy) -> Option<usize> {
    let hits = (0..w.len().saturating_sub(2)).filter(|&p| w[p..p + 3] == DDU || w[p..p + 3] == DUU);
    match strategy {
        Strategy::Leftmost => hits.min(),
        Strategy::Rightmost => hits.max(),
    }
}

/// Rewrites the leading word at position `p` of `w` once.
fn rewrite_at(spec: &AlgebraSpec, w: &[bool], t: &[u32], c: &FieldElem, p: usize, out: &mut FreeCombo) {
    let ddu = w[p..p + 3] == DDU;
    let (a, b, last) = if ddu {
        ([true, false, true], [false, true, true], true)
    } else {
        ([false, true, false], [false, false, true], false)
    };
    let splice = |mid: &[bool]| -> Vec<bool> { w[..p].iter().chain(mid).chain(&w[p + 3..]).copied().collect() };
    out.add(splice(&a), t.to_vec(), c * spec.alpha());
    out.add(splice(&b), t.to_vec(), c * spec.beta());
    for (e, pc) in spec.phi().terms() {
        let t2 = t.iter().zip(e).map(|(x, y)| x + y).collect();
        out.add(splice(&[last]), t2, c * pc);
    }
}

/// Reads u^i (du)^j d^k off a word avoiding ddu and duu.
fn read_normal(w: &[bool]) -> (u32, u32, u32) {
    let i = w.iter().take_while(|&&b| !b).count();
    let mut p = i;
    let mut j = 0;
    while p + 1 < w.len() && w[p] && !w[p + 1] {
        j += 1;
        p += 2;
    }
    let k = w.len() - p;
    debug_assert!(w[p..].iter().all(|&b| b), "word is not normal");
    (i as u32, j, k as u32)
}

fn normalize_combo(spec: &Arc<AlgebraSpec>, mut pending: FreeCombo, strategy: Strategy) -> Element {
    let mut out = Vec::new();
    while let Some(((w, t), c)) = pending.terms.pop_last() {
        match find(&w.0, strategy) {
            Some(p) => rewrite_at(spec, &w.0, &t, &c, p, &mut pending),
            None => {
                let (i, j, k) = read_normal(&w.0);
                out.push((Monomial::new(i, j, k, t), c));
            }
        }
    }
    Element::from_terms(spec, out)
}

/// PBW normal form of a word by leftmost rewriting.
pub fn reduce_word(w: &Word, spec: &Arc<AlgebraSpec>) -> Result<Element> {
    reduce_word_with(w, spec, Strategy::Leftmost)
}

pub fn reduce_word_with(w: &Word, spec: &Arc<AlgebraSpec>, strategy: Strategy) -> Result<Element> {
    let combo = FreeCombo::from_word(w, spec.n())?;
    Ok(normalize_combo(spec, combo, strategy))
}

/// How the computed overlap identity compares with the reference form
/// (d²u−αdud−βud²−φd)u − d(du²−αudu−βu²d−φu) = β(ud²u − du²d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityMatch {
    Exact,
    /// The left side equals −β(ud²u − du²d).
    UpToSign,
    Differs,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    /// dduu after one ddu step.
    pub step_ddu: FreeCombo,
    /// dduu after one duu step.
    pub step_duu: FreeCombo,
    pub normal_ddu: Element,
    pub normal_duu: Element,
    pub confluent: bool,
    /// The free-algebra value of the overlap identity's left side.
    pub identity_lhs: FreeCombo,
    pub identity: IdentityMatch,
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "overlap dduu")?;
        writeln!(f, "  ddu first: {}", self.step_ddu)?;
        writeln!(f, "    normal:  {}", self.normal_ddu)?;
        writeln!(f, "  duu first: {}", self.step_duu)?;
        writeln!(f, "    normal:  {}", self.normal_duu)?;
        writeln!(f, "  confluent: {}", self.confluent)?;
        writeln!(
            f,
            "  (d^2u - a*dud - b*ud^2 - phi*d)u - d(du^2 - a*udu - b*u^2d - phi*u) = {}",
            self.identity_lhs
        )?;
        let note = match self.identity {
            IdentityMatch::Exact => "equals b*(ud^2u - du^2d)",
            IdentityMatch::UpToSign => "equals b*(du^2d - ud^2u), i.e. b*(ud^2u - du^2d) up to sign",
            IdentityMatch::Differs => "does not match b*(ud^2u - du^2d)",
        };
        write!(f, "  {note}")
    }
}

/// Resolves the single overlap ambiguity dduu both ways.
pub fn confluence_check(spec: &Arc<AlgebraSpec>) -> ConfluenceReport {
    let n = spec.n();
    let w = vec![true, true, false, false];
    let t0 = vec![0; n];
    let one = FieldElem::one();
    let mut step_ddu = FreeCombo::zero(n);
    rewrite_at(spec, &w, &t0, &one, 0, &mut step_ddu);
    let mut step_duu = FreeCombo::zero(n);
    rewrite_at(spec, &w, &t0, &one, 1, &mut step_duu);
    let normal_ddu = normalize_combo(spec, step_ddu.clone(), Strategy::Leftmost);
    let normal_duu = normalize_combo(spec, step_duu.clone(), Strategy::Leftmost);

    let word = |s: &str, c: FieldElem| FreeCombo::from_letters(s, n, c);
    let (a, b) = (spec.alpha(), spec.beta());
    let m1 = -one.clone();
    let rel1 = word("ddu", one.clone())
        .plus(&word("dud", -a))
        .plus(&word("udd", -b))
        .plus(&word("d", m1.clone()).times_poly(spec));
    let rel2 = word("duu", one.clone())
        .plus(&word("udu", -a))
        .plus(&word("uud", -b))
        .plus(&word("u", m1.clone()).times_poly(spec));
    let lhs = rel1
        .concat(&word("u", one.clone()))
        .plus(&word("d", m1.clone()).concat(&rel2));
    let rhs = word("uddu", b.clone()).plus(&word("duud", -b));
    let identity = if lhs == rhs {
        IdentityMatch::Exact
    } else if lhs == rhs.scaled(&m1) {
        IdentityMatch::UpToSign
    } else {
        IdentityMatch::Differs
    };
    ConfluenceReport {
        confluent: normal_ddu == normal_duu,
        step_ddu,
        step_duu,
        normal_ddu,
        normal_duu,
        identity_lhs: lhs,
        identity,
    }
}
