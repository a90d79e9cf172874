//! Algebra maps: generator images, automorphisms and isomorphisms.

mod affine;
mod aut;
mod iso;
mod morphism;

pub use affine::{affine_equiv, rational_root, verify_affine, AffineParams, AffineResult};
pub use aut::{aut_constraint, aut_from_params, aut_images, AutSpec};
pub use iso::{iso_decide, IsoDecision, IsoWitness};
pub use morphism::{apply_morphism, compose, eval_poly, hom_check, hom_check_json, GenImages, HomCheck};
