//! Algebra specifications, PBW elements and the rewriting engine.

mod element;
mod engine;
mod filtration;
mod rewrite;
mod spec;

pub use element::{commutator, Element, Monomial};
pub use filtration::{basis_monomials, filtration_count, t_monomials};
pub use rewrite::{
    confluence_check, reduce_word, reduce_word_with, ConfluenceReport, FreeCombo, IdentityMatch, Letter, Strategy, Word,
};
pub use spec::{spec_load, AlgebraSpec, SpecParams, DEFAULT_MEMO_CAPACITY};
