//! # kahlerfam
//!
//! Information geometry of one-parameter exponential families on a finite
//! sample space `{x_0, …, x_m}` with counting measure.
//!
//! A family is given by two real vectors `C` and `F` and has densities
//! `p(k; θ) = exp(C_k + θ F_k - ψ(θ))`. The crate computes
//!
//! - the log-partition ψ, densities, expectation parameter and Fisher
//!   metric ([`family`]),
//! - the Hessian scalar curvature `S(θ)` and grid constancy checks
//!   ([`curvature`]),
//! - the exact constant-curvature criterion on the reduced family and the
//!   constructors for every constant-curvature family ([`classification`]),
//! - the affine group action on `(C, F)`, equivalence witnesses and
//!   canonical affine-Grassmannian representatives ([`equivalence`]),
//! - the Dombrowski Kähler tensors on the tangent bundle and the sphere
//!   covering of `T B(n)` ([`kahler`]).
//!
//! ```
//! use kahlerfam::{binomial_family, hessian_scalar_curvature};
//!
//! let b4 = binomial_family(4).unwrap();
//! let s = hessian_scalar_curvature(&b4, 1.7).unwrap();
//! assert!((s - 0.5).abs() < 1e-12);
//! ```
//!
//! Every function is pure; all types are `Send + Sync`.

#![forbid(unsafe_code)]

pub mod classification;
pub mod curvature;
pub mod equivalence;
pub mod error;
pub mod family;
pub mod io;
pub mod kahler;
mod weighted;

pub use classification::{
    admissible_lambdas, binomial_family, classify_constant_curvature, classify_reduced,
    ln_binomial, make_constant_curvature_family, reduce, ClassificationResult, ReducedFamily,
};
pub use curvature::{
    curvature_profile, default_profile, finite_difference_scal, hessian_scalar_curvature,
    CurvatureReport, Grid,
};
pub use equivalence::{
    are_equivalent, canonical_representative, reduced_equivalent_to_binomial, CanonicalClass,
    GroupElement,
};
pub use error::{Error, Result};
pub use family::{FRange, FiniteExpFamily, MomentSet, NaturalPoint};
pub use kahler::{
    binomial_sphere_map, dombrowski_frame, scal_tangent, sphere_isometry_defect, TangentPoint,
    TensorFrame,
};
