//! Exact-arithmetic kernel for down-up algebras A(α, β, φ) over K[t₁,…,tₙ].

pub mod algebra;
pub mod coeff;
pub mod embeddings;
pub mod error;
pub mod par;
pub mod json;
pub mod linalg;
pub mod maps;
pub mod parse;
pub mod random;
pub mod structure;
pub mod verify;

pub use error::{DuaError, Result};
