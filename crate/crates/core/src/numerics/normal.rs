use crate::scalar::Scalar;

/// `ln(sqrt(2*pi))`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Standard normal log-density.
pub fn ln_normal_pdf<T: Scalar>(z: T) -> T {
    let half = T::from_f64_const(0.5);
    -half * z * z - T::from_f64_const(LN_SQRT_2PI)
}

/// Standard normal CDF via the complementary error function.
///
/// Evaluated as `erfc(-z / sqrt(2)) / 2` in `f64`; the maximum absolute
/// error is below 1e-15 (dominated by the `erfc` implementation).
pub fn normal_cdf<T: Scalar>(z: T) -> T {
    let zf = z.to_f64().expect("scalar converts to f64");
    T::from_f64_const(0.5 * statrs::function::erf::erfc(-zf / SQRT_2))
}

/// Log of the standard normal CDF, stable deep into the lower tail.
///
/// For `z >= -20` this is `ln(erfc(-z/sqrt(2))/2)`, accurate to better
/// than 1e-12 absolute. Below that, `erfc` approaches the subnormal
/// range, so the asymptotic expansion
/// `ln Phi(z) = -z^2/2 - ln(-z) - ln sqrt(2 pi) + ln1p(sum)` is used;
/// at `z = -20` the truncation error of the five-term sum is ~1e-12.
pub fn ln_normal_cdf<T: Scalar>(z: T) -> T {
    let zf = z.to_f64().expect("scalar converts to f64");
    T::from_f64_const(ln_normal_cdf_f64(zf))
}

fn ln_normal_cdf_f64(z: f64) -> f64 {
    if z >= -20.0 {
        (0.5 * statrs::function::erf::erfc(-z / SQRT_2)).ln()
    } else {
        let r = 1.0 / (z * z);
        // 1 - 1/z^2 + 3/z^4 - 15/z^6 + 105/z^8 - 945/z^10
        let series = -r * (1.0 - r * (3.0 - r * (15.0 - r * (105.0 - r * 945.0))));
        -0.5 * z * z - (-z).ln() - LN_SQRT_2PI + series.ln_1p()
    }
}
