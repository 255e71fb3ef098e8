//! Matrix models of the extended groups inside `Sp(n+1, ℝ)` and
//! `Aff(n+1, ℝ)`, their metaplectic and wavelet representations, and the
//! fold intertwiners between the two.

pub mod checks;
pub mod group;
pub mod operator;
pub mod probe;
pub mod quadrature;

pub use checks::{CheckRecord, RepKind, SampleCheckConfig};
pub use quadrature::QuadConfig;
pub use group::{
    affine_embedding, affine_linear_part, chirp_matrix, dilation_block, metaplectic_operator,
    symplectic_embedding, wavelet_operator,
};
pub use operator::{
    chirp, dilation, dual_dilation, fold, intertwiner, intertwiner_inverse, modulation,
    translation, unfold, OpKind, RepOperator,
};
pub use probe::{Region, Support, TestFunction};
