//! Sparse exact linear algebra over [`FieldElem`].
//!
//! Vectors are ordered maps from an arbitrary key (a monomial, say) to a
//! nonzero coefficient. [`Echelon`] keeps an incrementally built echelon
//! basis pivoting on the largest key, and records for every row the
//! combination of inserted vectors it came from, so dependencies come out
//! as kernel vectors.

use std::collections::BTreeMap;

use crate::coeff::FieldElem;

pub type SparseVec<K> = BTreeMap<K, FieldElem>;

/// `acc += c·v`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &FieldElem, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let y = c * x;
        match acc.get_mut(k) {
            Some(old) => {
                *old = &*old + &y;
                if old.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                if !y.is_zero() {
                    acc.insert(k.clone(), y);
                }
            }
        }
    }
}

fn scaled<K: Ord + Clone>(v: &SparseVec<K>, c: &FieldElem) -> SparseVec<K> {
    v.iter().map(|(k, x)| (k.clone(), c * x)).collect()
}

struct Row<K> {
    vec: SparseVec<K>,
    comb: SparseVec<usize>,
}

pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn eliminate(&self, v: &mut SparseVec<K>, comb: &mut SparseVec<usize>) {
        let mut bound: Option<K> = None;
        loop {
            let next = v
                .iter()
                .rev()
                .filter(|(k, _)| bound.as_ref().is_none_or(|b| *k < b))
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { return };
            let row = &self.rows[self.pivots[&k]];
            let neg = -c;
            axpy(v, &neg, &row.vec);
            axpy(comb, &neg, &row.comb);
            bound = Some(k);
        }
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        self.eliminate(&mut v, &mut SparseVec::new());
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` as input number `self.inserted()`. Returns `None` if the
    /// rank grew, or the dependency `Σ c_t·input_t = 0` (with coefficient 1
    /// on the new input) if `v` was already in the span.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let tag = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut comb = SparseVec::new();
        comb.insert(tag, FieldElem::one());
        self.eliminate(&mut v, &mut comb);
        let Some((k, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(comb);
        };
        let inv = lead.try_inv().expect("nonzero pivot");
        let row = Row {
            vec: scaled(&v, &inv),
            comb: scaled(&comb, &inv),
        };
        self.pivots.insert(k, self.rows.len());
        self.rows.push(row);
        None
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// The current basis vectors.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.iter().map(|r| &r.vec)
    }
}

/// Kernel of the linear map sending input `i` to `images[i]`, as
/// combinations of inputs.
pub fn kernel<K: Ord + Clone>(images: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::new();
    images.into_iter().filter_map(|v| e.insert(v)).collect()
}

pub fn rank<K: Ord + Clone>(vecs: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

pub fn independent<K: Ord + Clone>(vecs: impl IntoIterator<Item = SparseVec<K>>) -> bool {
    let mut e = Echelon::new();
    vecs.into_iter().all(|v| e.insert(v).is_none())
}

/// Σ cᵢ·vᵢ for a combination over indices into `vs`.
pub fn combine<K: Ord + Clone>(comb: &SparseVec<usize>, vs: &[SparseVec<K>]) -> SparseVec<K> {
    let mut out = SparseVec::new();
    for (i, c) in comb {
        axpy(&mut out, c, &vs[*i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, FieldElem::from_i64(c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let imgs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1)]), v(&[(0, 2), (1, 3)])];
        let ker = kernel(imgs.clone());
        assert_eq!(ker.len(), 1);
        assert!(combine(&ker[0], &imgs).is_empty());
        assert_eq!(rank(imgs.clone()), 2);
        assert!(!independent(imgs));
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(v(&[(0, 1), (2, 1)]));
        e.insert(v(&[(1, 1), (2, -1)]));
        assert!(e.contains(&v(&[(0, 1), (1, 1)])));
        assert!(!e.contains(&v(&[(0, 1)])));
    }
}
