//! Growth of the weighted filtration.
//!
//! The generators u, (du), d, t₁..tₙ have weights W, 2W, W, 1, …, 1, so the
//! counts c(N) have generating function
//! 1 / ((1−x)(1−x^W)²(1−x^{2W})(1−x)ⁿ). Applying the difference operators
//! f(N) ↦ f(N) − f(N−w) for those weights, largest first, peels off one
//! factor at a time; the number of operators needed before the sequence
//! becomes a positive constant is the polynomial growth degree.

use serde::Serialize;

use crate::algebra::{filtration_count, AlgebraSpec};

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub counts: Vec<u64>,
    /// Strides of the difference operators, in the order applied.
    pub strides: Vec<u32>,
    /// Row `k` holds the sequence after `k` operators (row 0 = counts).
    pub differences: Vec<Vec<i64>>,
    /// First `N` from which rows are compared.
    pub window_start: u32,
    pub inferred_dimension: Option<usize>,
    pub conclusive: bool,
    pub message: String,
}

fn difference(f: &[i64], w: u32) -> Vec<i64> {
    let w = w as usize;
    (0..f.len()).map(|k| f[k] - if k >= w { f[k - w] } else { 0 }).collect()
}

/// Counts for N = 0..=max_n and the weight-matched difference table.
pub fn gk_probe(spec: &AlgebraSpec, max_n: u32) -> GrowthReport {
    let n = spec.n();
    let w = spec.weight();
    let counts: Vec<u64> = (0..=max_n).map(|k| filtration_count(spec, k)).collect();
    let mut strides = vec![2 * w, w, w];
    strides.extend(std::iter::repeat_n(1, n + 1));
    let mut differences = vec![counts.iter().map(|&c| c as i64).collect::<Vec<_>>()];
    for &st in &strides {
        let next = difference(differences.last().unwrap(), st);
        differences.push(next);
    }
    let start = n as u32 + 4;
    let mut report = GrowthReport {
        counts,
        strides,
        differences,
        window_start: start,
        inferred_dimension: None,
        conclusive: false,
        message: String::new(),
    };
    if max_n < n as u32 + 6 {
        report.message = format!("inconclusive: need max N >= {}", n + 6);
        return report;
    }
    let window = start as usize..=max_n as usize;
    let constant_positive = |row: &[i64]| {
        let v = row[start as usize];
        v > 0 && row[window.clone()].iter().all(|&x| x == v)
    };
    let vanishes = |row: &[i64]| row[window.clone()].iter().all(|&x| x == 0);
    for level in 1..report.differences.len() - 1 {
        if constant_positive(&report.differences[level]) && vanishes(&report.differences[level + 1]) {
            report.inferred_dimension = Some(level);
            report.conclusive = true;
            report.message = format!(
                "difference {level} is the constant {} and difference {} vanishes for N in {}..={}",
                report.differences[level][start as usize],
                level + 1,
                start,
                max_n
            );
            return report;
        }
    }
    report.message = "inconclusive: no level became constant in the window".into();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{FieldDescriptor, FieldElem, MultiPoly};

    fn spec(phi: MultiPoly) -> std::sync::Arc<AlgebraSpec> {
        AlgebraSpec::from_alpha_beta(phi.nvars(), FieldDescriptor::Rational, FieldElem::one(), FieldElem::one(), phi).unwrap()
    }

    #[test]
    fn classical_and_extended() {
        assert_eq!(gk_probe(&spec(MultiPoly::zero(0)), 10).inferred_dimension, Some(3));
        assert_eq!(gk_probe(&spec(MultiPoly::var(1, 0)), 12).inferred_dimension, Some(4));
        let p = &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1);
        assert_eq!(gk_probe(&spec(p), 14).inferred_dimension, Some(5));
    }

    #[test]
    fn too_small_is_inconclusive() {
        let r = gk_probe(&spec(MultiPoly::var(1, 0)), 5);
        assert!(!r.conclusive);
    }
}
