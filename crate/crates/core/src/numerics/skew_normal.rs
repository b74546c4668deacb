use rand::Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::numerics::normal::{ln_normal_cdf, ln_normal_pdf};
use crate::scalar::Scalar;

/// Log-density of the skew-normal distribution `SN(location, scale, shape)`:
/// `log[ 2/scale * phi(z) * Phi(shape * z) ]` with `z = (x - location)/scale`.
pub fn skew_normal_logpdf<T: Scalar>(x: T, location: T, scale: T, shape: T) -> Result<T> {
    if scale <= T::zero() {
        return Err(Error::domain(format!(
            "skew-normal scale must be positive, got {scale}"
        )));
    }
    let z = (x - location) / scale;
    let two = T::from_f64_const(2.0);
    Ok(two.ln() - scale.ln() + ln_normal_pdf(z) + ln_normal_cdf(shape * z))
}

/// Draw from `SN(location, scale, shape)`.
pub fn sample_skew_normal<R: Rng + ?Sized>(
    rng: &mut R,
    location: f64,
    scale: f64,
    shape: f64,
) -> f64 {
    rand_distr::SkewNormal::new(location, scale, shape)
        .expect("valid skew-normal parameters")
        .sample(rng)
}
