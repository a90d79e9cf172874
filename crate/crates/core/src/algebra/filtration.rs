//! The weighted-degree filtration.

use super::element::Monomial;
use super::spec::AlgebraSpec;

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1u64, |acc, i| acc * (n - k + i) / i)
}

/// Number of PBW monomials of weighted degree ≤ `max`.
pub fn filtration_count(spec: &AlgebraSpec, max: u32) -> u64 {
    let w = spec.weight();
    let n = spec.n() as u64;
    let mut total = 0;
    for ijk in 0..=max / w {
        // (i, j, k) with i + 2j + k = ijk
        let shapes: u64 = (0..=ijk / 2).map(|j| (ijk - 2 * j + 1) as u64).sum();
        let rest = (max - w * ijk) as u64;
        total += shapes * binomial(rest + n, n);
    }
    total
}

/// Exponent vectors in `n` variables of total degree ≤ `max`, in
/// increasing degree.
pub fn t_monomials(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=max {
        let mut cur = vec![0; n];
        fill(&mut cur, 0, deg, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = left;
            out.push(cur.clone());
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// All PBW monomials of weighted degree ≤ `max`, sorted canonically.
pub fn basis_monomials(spec: &AlgebraSpec, max: u32) -> Vec<Monomial> {
    let w = spec.weight();
    let mut out = Vec::new();
    for ijk in 0..=max / w {
        for j in 0..=ijk / 2 {
            for i in 0..=ijk - 2 * j {
                let k = ijk - 2 * j - i;
                for t in t_monomials(spec.n(), max - w * ijk) {
                    out.push(Monomial::new(i, j, k, t));
                }
            }
        }
    }
    out.sort_by(|a, b| a.weighted_degree(w).cmp(&b.weighted_degree(w)).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{FieldDescriptor, FieldElem, MultiPoly};

    fn spec(phi: MultiPoly) -> std::sync::Arc<AlgebraSpec> {
        AlgebraSpec::from_alpha_beta(phi.nvars(), FieldDescriptor::Rational, FieldElem::one(), FieldElem::one(), phi).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(filtration_count(&spec(MultiPoly::zero(0)), 0), 1);
        assert_eq!(filtration_count(&spec(MultiPoly::zero(0)), 2), 7);
        assert_eq!(filtration_count(&spec(MultiPoly::var(1, 0)), 2), 11);
    }

    #[test]
    fn enumeration_matches_count() {
        let p = &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1);
        let s = spec(p);
        for max in 0..8 {
            assert_eq!(basis_monomials(&s, max).len() as u64, filtration_count(&s, max));
        }
    }
}
