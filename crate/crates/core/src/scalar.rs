//! Scalar abstraction for the numerical kernels.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the numeric kernels are generic over (`f32` or `f64`).
pub trait Scalar: Float + FromPrimitive + Debug + Display + 'static {
    /// Lossy conversion from `f64`, for tabulated constants.
    fn from_f64_const(v: f64) -> Self {
        Self::from_f64(v).expect("finite constant must convert")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + 'static {}
