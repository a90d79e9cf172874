//! Straightening of products into PBW normal form.
//!
//! A normal monomial is u^i (du)^j d^k t^m. Right multiplication by d only
//! bumps k, and u^i on the left is inert, so the whole product reduces to
//! the table Q(j, k) = NF((du)^j d^k u), computed by
//!
//! ```text
//! Q(0, 0)      = u
//! Q(j, 1)      = (du)^(j+1)
//! Q(j, 0)      = α·Q(j−1,0)·du + β·Q(j−1,0)·ud + φ·Q(j−1,0)      (duu rule)
//! Q(j, k ≥ 2)  = α·Q(j,k−1)·d + β·Q(j,k−2)·d² + φ·(du)^j d^(k−1)   (ddu rule)
//! ```
//!
//! Every recursive call is on a strictly shorter word, and the table is
//! memoized per spec.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::Monomial;
use super::spec::AlgebraSpec;
use crate::coeff::FieldElem;

pub(crate) type Terms = BTreeMap<Monomial, FieldElem>;

pub(crate) fn add_into(acc: &mut Terms, m: Monomial, c: FieldElem) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get() + &c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

fn rmul_d(terms: &Terms) -> Terms {
    terms
        .iter()
        .map(|(m, c)| {
            let mut m = m.clone();
            m.k += 1;
            (m, c.clone())
        })
        .collect()
}

fn rmul_u(spec: &AlgebraSpec, terms: &Terms) -> Terms {
    let mut out = Terms::new();
    for (m, c) in terms {
        let table = q(spec, m.j, m.k);
        for (qm, qc) in table.iter() {
            let mut r = qm.clone();
            r.i += m.i;
            for (a, b) in r.t.iter_mut().zip(&m.t) {
                *a += b;
            }
            add_into(&mut out, r, c * qc);
        }
    }
    out
}

/// φ · terms (φ is central).
fn mul_phi(spec: &AlgebraSpec, terms: &Terms, out: &mut Terms, scale: &FieldElem) {
    for (e, pc) in spec.phi().terms() {
        let f = scale * pc;
        for (m, c) in terms {
            let mut r = m.clone();
            for (a, b) in r.t.iter_mut().zip(e) {
                *a += b;
            }
            add_into(out, r, &f * c);
        }
    }
}

fn accumulate(out: &mut Terms, terms: Terms, scale: &FieldElem) {
    if scale.is_zero() {
        return;
    }
    for (m, c) in terms {
        add_into(out, m, scale * &c);
    }
}

fn q(spec: &AlgebraSpec, j: u32, k: u32) -> Arc<Vec<(Monomial, FieldElem)>> {
    if let Some(v) = spec.memo_get((j, k)) {
        return v;
    }
    let n = spec.n();
    let single = |i, j, k| {
        let mut t = Terms::new();
        t.insert(Monomial::new(i, j, k, vec![0; n]), FieldElem::one());
        t
    };
    let (alpha, beta) = (spec.alpha(), spec.beta());
    let mut out = Terms::new();
    match (j, k) {
        (0, 0) => out = single(1, 0, 0),
        (_, 1) => out = single(0, j + 1, 0),
        (_, 0) => {
            let prev: Terms = q(spec, j - 1, 0).iter().cloned().collect();
            if !alpha.is_zero() {
                accumulate(&mut out, rmul_u(spec, &rmul_d(&prev)), alpha);
            }
            if !beta.is_zero() {
                accumulate(&mut out, rmul_d(&rmul_u(spec, &prev)), beta);
            }
            mul_phi(spec, &prev, &mut out, &FieldElem::one());
        }
        _ => {
            if !alpha.is_zero() {
                let a: Terms = q(spec, j, k - 1).iter().cloned().collect();
                accumulate(&mut out, rmul_d(&a), alpha);
            }
            if !beta.is_zero() {
                let b: Terms = q(spec, j, k - 2).iter().cloned().collect();
                accumulate(&mut out, rmul_d(&rmul_d(&b)), beta);
            }
            mul_phi(spec, &single(0, j, k - 1), &mut out, &FieldElem::one());
        }
    }
    let v: Arc<Vec<(Monomial, FieldElem)>> = Arc::new(out.into_iter().collect());
    spec.memo_put((j, k), v.clone());
    v
}

/// Normal form of the product of two normal monomials.
pub(crate) fn mul_monomials(spec: &AlgebraSpec, a: &Monomial, b: &Monomial) -> Terms {
    let mut cur = Terms::new();
    let mut head = a.clone();
    head.t.iter_mut().for_each(|x| *x = 0);
    cur.insert(head, FieldElem::one());
    for _ in 0..b.i {
        cur = rmul_u(spec, &cur);
    }
    for _ in 0..b.j {
        cur = rmul_u(spec, &rmul_d(&cur));
    }
    let tail: Vec<u32> = a.t.iter().zip(&b.t).map(|(x, y)| x + y).collect();
    cur.into_iter()
        .map(|(mut m, c)| {
            m.k += b.k;
            for (x, y) in m.t.iter_mut().zip(&tail) {
                *x += y;
            }
            (m, c)
        })
        .collect()
}

pub(crate) fn mul_terms(spec: &AlgebraSpec, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let c = ca * cb;
            for (m, x) in mul_monomials(spec, ma, mb) {
                add_into(&mut out, m, &c * &x);
            }
        }
    }
    out
}
