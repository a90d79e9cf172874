//! Structural analysis: H/K elements, center, normal elements, growth.

mod center;
mod central;
mod growth;
mod hk;
mod normal;

pub use center::{center_completeness, center_generators, central_space, CenterDescription, CenterGenerator, CompletenessReport};
pub use central::{is_central, twist_normal_check, zero_divisor_witness, Centrality, TwistCertificate};
pub use growth::{gk_probe, GrowthReport};
pub use hk::{alternate_basis, hk_identities, make_h, make_hk, make_k, HkIdentities};
pub use normal::{hk_monomials, normal_search, twist_candidates, NormalFamily};
