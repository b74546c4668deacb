use crate::scalar::Scalar;

/// Inverse logit (logistic function), stable for large `|x|`.
///
/// Returns a value in `(0, 1)`; saturates to exactly 0/1 only when the
/// exponential underflows.
pub fn inv_logit<T: Scalar>(x: T) -> T {
    if x >= T::zero() {
        T::one() / (T::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::one() + e)
    }
}

/// `ln(1 + exp(x))` without overflow.
pub fn softplus<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `ln(inv_logit(x))`, stable in both tails.
pub fn ln_inv_logit<T: Scalar>(x: T) -> T {
    -softplus(-x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn midpoint() {
        assert_eq!(inv_logit(0.0_f64), 0.5);
    }

    #[test]
    fn saturates_without_overflow() {
        assert_eq!(inv_logit(700.0_f64), 1.0);
        assert_eq!(inv_logit(-700.0_f64), 0.0_f64.max(inv_logit(-700.0)));
        assert!(inv_logit(-700.0_f64) >= 0.0);
        assert!(ln_inv_logit(-700.0_f64).is_finite());
        assert!((ln_inv_logit(-700.0_f64) + 700.0).abs() < 1e-12);
    }

    #[test]
    fn generic_over_f32() {
        assert!((inv_logit(0.0_f32) - 0.5).abs() < 1e-7);
    }

    proptest! {
        #[test]
        fn complement_symmetry(x in -50.0_f64..50.0) {
            let a = inv_logit(x);
            let b = inv_logit(-x);
            prop_assert!((a + b - 1.0).abs() < 1e-15);
        }

        #[test]
        fn in_unit_interval(x in -1e6_f64..1e6) {
            let p = inv_logit(x);
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
