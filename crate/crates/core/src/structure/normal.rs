//! Search for normal elements with scalar twists at bounded degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{basis_monomials, AlgebraSpec, Element, Monomial};
use crate::coeff::FieldElem;
use crate::error::{DuaError, Result};
use crate::linalg::{axpy, kernel, SparseVec};
use crate::par::Exec;

use super::central::TwistCertificate;
use super::hk::make_hk;

/// All solutions of weighted degree ≤ the search bound for one twist.
#[derive(Clone, Debug)]
pub struct NormalFamily {
    pub twist: TwistCertificate,
    pub basis: Vec<Element>,
}

/// Distinct values r^a s^b with |a|, |b| ≤ bound, in order of first
/// appearance for a, b ascending from −bound.
pub fn twist_candidates(r: &FieldElem, s: &FieldElem, bound: u32) -> Result<Vec<FieldElem>> {
    let b = bound as i64;
    let mut out: Vec<FieldElem> = Vec::new();
    for a in -b..=b {
        let ra = r.pow(a)?;
        for c in -b..=b {
            let v = &ra * &s.pow(c)?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

struct Images {
    /// b·u, u·b, b·d, d·b for one basis monomial b.
    bu: SparseVec<Monomial>,
    ub: SparseVec<Monomial>,
    bd: SparseVec<Monomial>,
    db: SparseVec<Monomial>,
}

fn twisted(lhs: &SparseVec<Monomial>, rhs: &SparseVec<Monomial>, c: &FieldElem) -> SparseVec<Monomial> {
    let mut v = lhs.clone();
    axpy(&mut v, &-c, rhs);
    v
}

/// Solves N·u = c_u·u·N, N·d = c_d·d·N over elements of weighted degree
/// ≤ `max_degree` for every candidate pair (c_u, c_d), grade by grade.
pub fn normal_search(spec: &Arc<AlgebraSpec>, max_degree: u32, exec: Exec) -> Result<Vec<NormalFamily>> {
    let (r, s) = spec.require_roots()?;
    if r.is_one() || s.is_one() {
        return Err(DuaError::Precondition("normal_search needs r != 1 and s != 1".into()));
    }
    let cands = twist_candidates(r, s, max_degree)?;
    let basis = basis_monomials(spec, max_degree);
    let (u, d) = (Element::u(spec), Element::d(spec));
    let images: Vec<Images> = exec.map(&basis, |m| {
        let b = Element::monomial(spec, m.clone(), FieldElem::one());
        Images {
            bu: (&b * &u).into_terms(),
            ub: (&u * &b).into_terms(),
            bd: (&b * &d).into_terms(),
            db: (&d * &b).into_terms(),
        }
    });
    let mut grades: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (idx, m) in basis.iter().enumerate() {
        grades.entry(m.grade()).or_default().push(idx);
    }
    let per_cu = exec.map(&cands, |cu| {
        let mut found: Vec<(usize, Vec<Element>)> = Vec::new();
        for idxs in grades.values() {
            let ker_u = kernel(idxs.iter().map(|&i| twisted(&images[i].bu, &images[i].ub, cu)));
            if ker_u.is_empty() {
                continue;
            }
            for (ci, cd) in cands.iter().enumerate() {
                let imgs = ker_u.iter().map(|comb| {
                    let mut v = SparseVec::new();
                    for (k, x) in comb {
                        let i = idxs[*k];
                        axpy(&mut v, x, &twisted(&images[i].bd, &images[i].db, cd));
                    }
                    v
                });
                for comb2 in kernel(imgs) {
                    let mut elem: SparseVec<Monomial> = SparseVec::new();
                    for (k2, y) in &comb2 {
                        for (k, x) in &ker_u[*k2] {
                            let mut single = SparseVec::new();
                            single.insert(basis[idxs[*k]].clone(), x.clone());
                            axpy(&mut elem, y, &single);
                        }
                    }
                    let e = Element::from_terms(spec, elem);
                    match found.iter_mut().find(|(c, _)| *c == ci) {
                        Some((_, v)) => v.push(e),
                        None => found.push((ci, vec![e])),
                    }
                }
            }
        }
        found.sort_by_key(|(ci, _)| *ci);
        found
    });
    let mut out = Vec::new();
    for (cu, found) in cands.iter().zip(per_cu) {
        for (ci, basis) in found {
            out.push(NormalFamily {
                twist: TwistCertificate {
                    c_u: cu.clone(),
                    c_d: cands[ci].clone(),
                },
                basis,
            });
        }
    }
    Ok(out)
}

/// The elements t^m H^i K^j of weighted degree ≤ `max_degree`.
pub fn hk_monomials(spec: &Arc<AlgebraSpec>, max_degree: u32) -> Result<Vec<Element>> {
    let (h, k) = make_hk(spec)?;
    let w = spec.weight();
    let mut out = Vec::new();
    let mut i = 0;
    while 2 * w * i <= max_degree {
        let mut j = 0;
        while 2 * w * (i + j) <= max_degree {
            let hk = &h.pow(i) * &k.pow(j);
            let rest = max_degree - 2 * w * (i + j);
            for t in crate::algebra::t_monomials(spec.n(), rest) {
                let tm = Element::monomial(spec, Monomial::new(0, 0, 0, t), FieldElem::one());
                out.push(&tm * &hk);
            }
            j += 1;
        }
        i += 1;
    }
    Ok(out)
}
