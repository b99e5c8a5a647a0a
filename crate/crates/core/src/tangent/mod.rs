//! Function-field arithmetic on a hyperelliptic model and the dual tangent
//! maps of the restricted Torelli morphism.
//!
//! Every space of differentials is written over the `k(x)`-basis `{1, y}`
//! with fixed per-parity denominators, so spans can be compared by exact
//! elimination.

mod ffield;
mod maps;
mod report;

pub use ffield::{ff_differential, ff_mul, FFElem, FunctionField, Section};
pub use maps::{
    basis_h0_l_and_omega_ldual, basis_h0_omega, closed_form_kernel, coordinatize,
    coordinatize_omega2, even_width, mu0_kernel, mu0_map, mu1_image, mu1_sections,
    mu1_sections_dual, mult_map, omega2_dim, parity_blocks, sym2_products, Codomain, LinMap,
    SpaceBasis, SpaceLabel, TensorBasis,
};
pub use report::{rank_report, Checks, Dims, RankReport};
