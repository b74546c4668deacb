//! Joint modeling of longitudinal risk-factor trajectories, time-varying
//! medication use, and time-to-event outcomes (JM-RMT).
//!
//! The crate provides:
//!
//! - a data model and CSV ingestion for longitudinal cohorts
//!   ([`data_model`]),
//! - shared numerical kernels: B-spline bases, Gauss-Kronrod quadrature,
//!   skew-normal log-densities ([`numerics`]),
//! - the three submodels: risk factor ([`longitudinal`]), medication
//!   transitions ([`medication`]), and hazard ([`survival`]), plus the
//!   latent switch-time machinery ([`switching`]),
//! - a brute-force observed-data likelihood oracle for tiny instances
//!   ([`oracle`]),
//! - an adaptive Metropolis-within-Gibbs sampler with data augmentation
//!   ([`mcmc`]),
//! - a generative simulator ([`simulator`]), an LOCF baseline ([`locf`]),
//!   and a model-comparison harness ([`compare`]).
//!
//! Numerical kernels are generic over the scalar type through the
//! [`scalar::Scalar`] trait; the inference stack runs on [`Real`] (`f64`).

pub mod compare;
pub mod data_model;
pub mod error;
pub mod locf;
pub mod longitudinal;
pub mod mcmc;
pub mod medication;
pub mod numerics;
pub mod oracle;
pub mod params;
pub mod scalar;
pub mod simulator;
pub mod switching;
pub mod survival;

/// Scalar type used by the inference stack.
pub type Real = f64;

/// B-spline basis over [`Real`].
pub type Basis = numerics::BSplineBasis<Real>;

/// Gauss-Kronrod rule over [`Real`].
pub type Quadrature = numerics::GKRule<Real>;

pub use data_model::{Cohort, Covariates, Education, MedStatus, Race, Sex, Subject, Visit};
pub use error::{Error, Result};
pub use params::Parameters;
