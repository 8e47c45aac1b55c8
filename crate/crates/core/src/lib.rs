//! Curvature invariants and Ricci-Bourguignon-like soliton checks for
//! almost contact B-metric (accR) structures on Lie groups.
//!
//! The numerical core is generic over [`Scalar`] (`f64` and `f32`); the
//! `*64` aliases below are what the command-line front end uses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod scenarios;
pub mod soliton;
pub mod structure;
pub mod tensor;

pub use error::{GeometryError, Result, Violation};
pub use geometry::{
    classify_sasaki_like, fundamental_tensor, levi_civita, ricci, riemann, scalar_invariants, tau_tilde, Connection,
    CurvaturePackage, FundamentalTensor, LieAlgebra, SasakiLike, StructureGeometry,
};
pub use report::{Check, TheoremReport};
pub use scalar::Scalar;
pub use soliton::{
    divergence, einstein_like_fit, eta_rb_residual, lie_derivative_metric, rb_like_residual, solve_vertical_soliton,
    verify_conformal_theorem, verify_vertical_theorem, vertical_lie_closed_form, BetaBranch, EinsteinClass,
    EinsteinFit, PotentialSpec, SolitonSpec, VerticalScalar,
};
pub use structure::{
    associated_metric, contact_homothetic_transform, standard_structure, validate_structure, AccRStructure,
};
pub use tensor::{invert_metric, max_abs, phi_trace, trace_g, Frame, MetricPair, Tensor};

pub type Tensor64 = Tensor<f64>;
pub type MetricPair64 = MetricPair<f64>;
pub type AccRStructure64 = AccRStructure<f64>;
pub type LieAlgebra64 = LieAlgebra<f64>;
pub type Connection64 = Connection<f64>;
pub type CurvaturePackage64 = CurvaturePackage<f64>;
pub type StructureGeometry64 = StructureGeometry<f64>;
pub type VerticalScalar64 = VerticalScalar<f64>;
pub type SolitonSpec64 = SolitonSpec<f64>;

pub type Tensor32 = Tensor<f32>;
pub type AccRStructure32 = AccRStructure<f32>;
pub type LieAlgebra32 = LieAlgebra<f32>;
pub type StructureGeometry32 = StructureGeometry<f32>;
