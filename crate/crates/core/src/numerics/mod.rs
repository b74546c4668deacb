//! Shared numerical kernels: B-spline bases, Gauss-Kronrod quadrature,
//! skew-normal log-density, normal CDF, and logit utilities.
//!
//! Everything here is pure and reentrant, and generic over the scalar
//! type via [`crate::scalar::Scalar`].

mod bspline;
mod logit;
mod normal;
mod quadrature;
mod skew_normal;

pub use bspline::BSplineBasis;
pub use logit::{inv_logit, ln_inv_logit, softplus};
pub use normal::{ln_normal_cdf, ln_normal_pdf, normal_cdf, LN_SQRT_2PI};
pub use quadrature::{gk_integrate, GKRule};
pub use skew_normal::{sample_skew_normal, skew_normal_logpdf};
