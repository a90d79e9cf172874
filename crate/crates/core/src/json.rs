//! JSON encodings (schema "dua/1").

use serde::Serializer;
use serde_json::{json, Value};

use crate::algebra::Element;

pub const SCHEMA: &str = "dua/1";

pub(crate) fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `[{u, du, d, t, coeff}]` in canonical monomial order.
pub fn element_to_json(e: &Element) -> Value {
    Value::Array(
        e.sorted_terms()
            .into_iter()
            .map(|(m, c)| json!({"u": m.i, "du": m.j, "d": m.k, "t": m.t, "coeff": c.to_string()}))
            .collect(),
    )
}

/// Wraps a payload with the schema tag.
pub fn envelope(kind: &str, payload: Value) -> Value {
    json!({"schema": SCHEMA, "kind": kind, "data": payload})
}
