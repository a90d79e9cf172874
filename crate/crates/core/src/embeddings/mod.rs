//! Embedding into a skew-Laurent ring, the generalized Weyl algebra form,
//! and specialization/localization of the base ring.

mod gwa;
mod quotient;
mod skew;
mod theta;

pub use gwa::{gwa_iso_check, GwaAssignment, GwaConvention, GwaElem, GwaReport, GwaRing, GwaTrial};
pub use quotient::{evaluate_coefficients, localize_element, localize_spec, specialize, specialize_into, specialize_spec};
pub use skew::{skew_mul, SigmaAut, SkewLaurentElem, SkewRing};
pub use theta::{relation_images, relation_words, spanning_set, theta, theta_check, theta_in, theta_u, theta_d, SpanningEntry, ThetaReport};
