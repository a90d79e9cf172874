//! Algebra maps given by generator images.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{AlgebraSpec, Element};
use crate::coeff::MultiPoly;
use crate::error::{DuaError, Result};
use crate::json::element_to_json;

/// Images of u, d, t₁..tₙ in one target algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GenImages {
    pub u: Element,
    pub d: Element,
    pub t: Vec<Element>,
}

impl GenImages {
    pub fn new(u: Element, d: Element, t: Vec<Element>) -> Result<Self> {
        let target = u.spec().clone();
        for e in std::iter::once(&d).chain(&t) {
            if e.spec().id() != target.id() {
                return Err(DuaError::SpecMismatch);
            }
        }
        Ok(GenImages { u, d, t })
    }

    /// u ↦ u, d ↦ d, tᵢ ↦ tᵢ.
    pub fn identity(spec: &Arc<AlgebraSpec>) -> Self {
        let t = (0..spec.n()).map(|i| Element::t(spec, i).unwrap()).collect();
        GenImages {
            u: Element::u(spec),
            d: Element::d(spec),
            t,
        }
    }

    pub fn target(&self) -> &Arc<AlgebraSpec> {
        self.u.spec()
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("u".into(), element_to_json(&self.u));
        m.insert("d".into(), element_to_json(&self.d));
        for (i, t) in self.t.iter().enumerate() {
            m.insert(format!("t{}", i + 1), element_to_json(t));
        }
        Value::Object(m)
    }

    /// Human-readable "u -> ..., d -> ..., t1 -> ...".
    pub fn describe(&self) -> String {
        let mut parts = vec![format!("u -> {}", self.u), format!("d -> {}", self.d)];
        parts.extend(self.t.iter().enumerate().map(|(i, t)| format!("t{} -> {t}", i + 1)));
        parts.join(", ")
    }
}

/// p(T₁..Tₙ) for commuting elements T.
pub fn eval_poly(p: &MultiPoly, t: &[Element], target: &Arc<AlgebraSpec>) -> Element {
    let mut out = Element::zero(target);
    for (e, c) in p.terms() {
        let mut term = Element::scalar(target, c.clone());
        for (x, k) in t.iter().zip(e) {
            term = &term * &x.pow(*k);
        }
        out = &out + &term;
    }
    out
}

/// f(a) by substituting the images into every PBW monomial of `a`.
pub fn apply_morphism(images: &GenImages, a: &Element) -> Result<Element> {
    if images.t.len() != a.spec().n() {
        return Err(DuaError::ArityMismatch {
            expected: a.spec().n(),
            found: images.t.len(),
        });
    }
    let target = images.target();
    let du = &images.d * &images.u;
    let mut cache: HashMap<(u8, usize, u32), Element> = HashMap::new();
    let mut power = |which: u8, idx: usize, k: u32| -> Element {
        cache
            .entry((which, idx, k))
            .or_insert_with(|| match which {
                0 => images.u.pow(k),
                1 => du.pow(k),
                2 => images.d.pow(k),
                _ => images.t[idx].pow(k),
            })
            .clone()
    };
    let mut out = Element::zero(target);
    for (m, c) in a.terms() {
        let mut term = Element::scalar(target, c.clone());
        term = &term * &power(0, 0, m.i);
        term = &term * &power(1, 0, m.j);
        term = &term * &power(2, 0, m.k);
        for (i, e) in m.t.iter().enumerate() {
            if *e > 0 {
                term = &term * &power(3, i, *e);
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// outer ∘ inner, generator by generator.
pub fn compose(outer: &GenImages, inner: &GenImages) -> Result<GenImages> {
    GenImages::new(
        apply_morphism(outer, &inner.u)?,
        apply_morphism(outer, &inner.d)?,
        inner.t.iter().map(|t| apply_morphism(outer, t)).collect::<Result<Vec<_>>>()?,
    )
}

#[derive(Clone, Debug)]
pub struct HomCheck {
    pub holds: bool,
    /// Name of the first relation with a nonzero image, and that image.
    pub witness: Option<(String, Element)>,
}

/// Whether the source relations, including centrality of the tᵢ, map to 0.
pub fn hom_check(images: &GenImages, source: &AlgebraSpec) -> Result<HomCheck> {
    if images.t.len() != source.n() {
        return Err(DuaError::ArityMismatch {
            expected: source.n(),
            found: images.t.len(),
        });
    }
    let target = images.target();
    let (u, d) = (&images.u, &images.d);
    let phi = eval_poly(source.phi(), &images.t, target);
    let (al, be) = (source.alpha(), source.beta());
    let mut relations = vec![
        (
            "d^2*u - alpha*d*u*d - beta*u*d^2 - phi*d".to_string(),
            &(&(&(&(d * d) * u) - &(&(d * u) * d).scale(al)) - &(&(u * d) * d).scale(be)) - &(&phi * d),
        ),
        (
            "d*u^2 - alpha*u*d*u - beta*u^2*d - phi*u".to_string(),
            &(&(&(&(d * u) * u) - &(&(u * d) * u).scale(al)) - &(&(u * u) * d).scale(be)) - &(&phi * u),
        ),
    ];
    for (i, t) in images.t.iter().enumerate() {
        relations.push((format!("t{}*u - u*t{}", i + 1, i + 1), &(t * u) - &(u * t)));
        relations.push((format!("t{}*d - d*t{}", i + 1, i + 1), &(t * d) - &(d * t)));
        for (j, t2) in images.t.iter().enumerate().skip(i + 1) {
            relations.push((format!("t{}*t{} - t{}*t{}", i + 1, j + 1, j + 1, i + 1), &(t * t2) - &(t2 * t)));
        }
    }
    let witness = relations.into_iter().find(|(_, e)| !e.is_zero());
    Ok(HomCheck {
        holds: witness.is_none(),
        witness,
    })
}

/// Serializes a hom_check result.
pub fn hom_check_json(h: &HomCheck) -> Value {
    match &h.witness {
        None => json!({"holds": true}),
        Some((name, e)) => json!({"holds": false, "relation": name, "image": element_to_json(e), "image_text": e.to_string()}),
    }
}
