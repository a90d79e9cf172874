//! Normal forms against a naive string rewriter that knows only the two
//! defining relations and the centrality of t.

use std::collections::BTreeMap;
use std::sync::Arc;

use dua_core::algebra::{AlgebraSpec, Element, Monomial};
use dua_core::coeff::{FieldDescriptor, FieldElem, MultiPoly};
use dua_core::parse::parse_expr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Combo = BTreeMap<(String, Vec<u32>), FieldElem>;

fn add_to(out: &mut Combo, key: (String, Vec<u32>), c: FieldElem) {
    let entry = out.entry(key.clone()).or_insert_with(FieldElem::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// Rewrites the leftmost ddu or duu until neither occurs.
fn naive_normal(word: &str, t: Vec<u32>, spec: &AlgebraSpec) -> Combo {
    let mut todo: Combo = BTreeMap::new();
    todo.insert((word.to_string(), t), FieldElem::one());
    let mut done: Combo = BTreeMap::new();
    while let Some(((w, t), c)) = todo.pop_first() {
        let hit = ["ddu", "duu"].iter().filter_map(|p| w.find(p).map(|i| (i, *p))).min();
        let Some((i, pat)) = hit else {
            add_to(&mut done, (w, t), c);
            continue;
        };
        let (pre, post) = (&w[..i], &w[i + 3..]);
        // ddu = α dud + β udd + φ d and duu = α udu + β uud + φ u
        let (a_w, b_w, p_w) = if pat == "ddu" { ("dud", "udd", "d") } else { ("udu", "uud", "u") };
        for (mid, coeff) in [(a_w, spec.alpha()), (b_w, spec.beta())] {
            add_to(&mut todo, (format!("{pre}{mid}{post}"), t.clone()), &c * coeff);
        }
        for (exps, pc) in spec.phi().terms() {
            let tt: Vec<u32> = t.iter().zip(exps).map(|(a, b)| a + b).collect();
            add_to(&mut todo, (format!("{pre}{p_w}{post}"), tt), &c * pc);
        }
    }
    done
}

/// Reads u^i (du)^j d^k off a reduced word.
fn to_monomial(w: &str, t: &[u32]) -> Monomial {
    let i = w.chars().take_while(|c| *c == 'u').count();
    let rest = &w[i..];
    let mut j = 0;
    while rest[2 * j..].starts_with("du") {
        j += 1;
    }
    let tail = &rest[2 * j..];
    assert!(tail.chars().all(|c| c == 'd'), "not reduced: {w}");
    Monomial::new(i as u32, j as u32, tail.len() as u32, t.to_vec())
}

fn oracle_element(spec: &Arc<AlgebraSpec>, word: &str, t: Vec<u32>) -> Element {
    let combo = naive_normal(word, t, spec);
    Element::from_terms(spec, combo.iter().map(|((w, t), c)| (to_monomial(w, t), c.clone())))
}

fn specs() -> Vec<Arc<AlgebraSpec>> {
    let q = FieldDescriptor::Rational;
    let t1 = MultiPoly::var(1, 0);
    let q6 = FieldDescriptor::cyclotomic(6).unwrap();
    let z = q6.zeta().unwrap();
    vec![
        AlgebraSpec::from_alpha_beta(1, q.clone(), 2.into(), (-1).into(), t1.clone()).unwrap(),
        AlgebraSpec::from_roots(1, q.clone(), 2.into(), 3.into(), &t1.pow(2) + &MultiPoly::one(1)).unwrap(),
        AlgebraSpec::from_alpha_beta(1, q, FieldElem::from_ratio(1, 2), 0.into(), t1).unwrap(),
        AlgebraSpec::from_alpha_beta(2, q6, z, 1.into(), &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1)).unwrap(),
    ]
}

#[test]
fn random_words_match_naive_rewriter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in specs() {
        for _ in 0..60 {
            let len = rng.gen_range(1..=6);
            let word: String = (0..len).map(|_| if rng.gen_bool(0.5) { 'u' } else { 'd' }).collect();
            let t: Vec<u32> = (0..spec.n()).map(|_| rng.gen_range(0..=1)).collect();
            let mut text: Vec<String> = word.chars().map(|c| c.to_string()).collect();
            for (i, e) in t.iter().enumerate() {
                if *e > 0 {
                    text.insert(rng.gen_range(0..=text.len()), format!("t{}", i + 1));
                }
            }
            let engine = parse_expr(&text.join("*"), &spec).unwrap();
            assert_eq!(engine, oracle_element(&spec, &word, t), "word {} in {spec}", text.join("*"));
        }
    }
}

#[test]
fn relation_words_reduce_to_zero_in_oracle() {
    for spec in specs() {
        let z = vec![0; spec.n()];
        let a = oracle_element(&spec, "ddu", z.clone());
        let rhs = &(&parse_expr("d*u*d", &spec).unwrap().scale(spec.alpha()) + &parse_expr("u*d*d", &spec).unwrap().scale(spec.beta()))
            + &(&Element::from_poly(&spec, spec.phi()) * &Element::d(&spec));
        assert_eq!(a, rhs);
    }
}
