//! affine_equiv and iso_decide against a brute-force search.

use dua_core::algebra::AlgebraSpec;
use dua_core::coeff::{poly_substitute_affine, FieldDescriptor, FieldElem, MultiPoly};
use dua_core::maps::{affine_equiv, hom_check, iso_decide, verify_affine, AffineResult, IsoDecision};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid() -> Vec<FieldElem> {
    let mut out = Vec::new();
    for q in 1..=3 {
        for p in -6..=6 {
            let x = FieldElem::from_ratio(p, q);
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn poly(c: &[i64]) -> MultiPoly {
    MultiPoly::from_terms(1, c.iter().enumerate().map(|(e, v)| (vec![e as u32], FieldElem::from_i64(*v))))
}

/// Any (a, b) on the grid with φ₁(at + b) a scalar multiple of φ₂?
fn brute(p1: &MultiPoly, p2: &MultiPoly) -> bool {
    let g = grid();
    let d = p2.total_degree().unwrap();
    g.iter().filter(|a| !a.is_zero()).any(|a| {
        g.iter().any(|b| {
            let s = poly_substitute_affine(p1, a, b).unwrap();
            let eta = s.coeff(&[d]).try_div(&p2.coeff(&[d])).unwrap();
            !eta.is_zero() && s == p2.scale(&eta)
        })
    })
}

#[test]
fn random_pairs_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut found = 0;
    for i in 0..80 {
        let deg = 1 + i % 3;
        let coeffs = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
            c.push(*[1, -1, 2].get(rng.gen_range(0..3)).unwrap());
            c
        };
        let p2 = poly(&coeffs(&mut rng));
        let p1 = if i % 2 == 0 {
            let a = FieldElem::from_i64(*[1, -1, 2, -2].get(rng.gen_range(0..4)).unwrap());
            let b = FieldElem::from_i64(rng.gen_range(-2..=2));
            poly_substitute_affine(&p2, &a, &b).unwrap().scale(&FieldElem::from_i64(3))
        } else {
            poly(&coeffs(&mut rng))
        };
        // p1 built as 3·p2(at + b) is matched by (p1 ∘ inverse map) ∝ p2
        let oracle = brute(&p1, &p2);
        match affine_equiv(&p1, &p2, &FieldDescriptor::Rational).unwrap() {
            AffineResult::Found(x) => {
                assert!(verify_affine(&p1, &p2, &x).unwrap(), "{p1} vs {p2}");
                found += 1;
            }
            AffineResult::None => assert!(!oracle, "missed a map for {p1} vs {p2}"),
            AffineResult::Undecided(m) => panic!("undecided over Q: {m}"),
        }
    }
    assert!(found >= 40);
}

#[test]
fn iso_witnesses_are_homomorphisms() {
    let q = FieldDescriptor::Rational;
    let t = MultiPoly::var(1, 0);
    let sp = |r: FieldElem, s: FieldElem, phi: MultiPoly| AlgebraSpec::from_roots(1, q.clone(), r, s, phi).unwrap();
    let half = FieldElem::from_ratio(1, 2);
    let third = FieldElem::from_ratio(1, 3);
    let pairs = [
        (sp(2.into(), 3.into(), t.clone()), sp(3.into(), 2.into(), t.clone())),
        (sp(2.into(), 3.into(), t.pow(2)), sp(2.into(), 3.into(), (&t + &MultiPoly::one(1)).pow(2))),
        (sp(2.into(), 3.into(), t.clone()), sp(third, half.clone(), t.scale(&5.into()))),
        (sp(2.into(), 3.into(), t.clone()), sp(half, FieldElem::from_ratio(1, 3), t.clone())),
    ];
    for (a, b) in pairs {
        let IsoDecision::Isomorphic(w) = iso_decide(&a, &b).unwrap() else { panic!("{a} vs {b}") };
        assert!(hom_check(&w.images, &a).unwrap().holds, "case {}", w.case);
    }
}
