use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// B-spline basis on `[lo, hi]` used for the log baseline hazard.
///
/// The basis dimension follows the count convention of the hazard model,
/// `D = n_interior + degree - 1`, which corresponds to a clamped basis of
/// piecewise-polynomial order `degree - 1` (polynomial degree
/// `degree - 2`). `degree = 3` with no interior knots therefore yields the
/// two linear Bernstein functions; every basis is a partition of unity on
/// `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineBasis<T> {
    degree: usize,
    interior: Vec<T>,
    lo: T,
    hi: T,
    /// Clamped knot vector at polynomial degree `degree - 2`.
    knots: Vec<T>,
    dim: usize,
}

impl<T: Scalar> BSplineBasis<T> {
    /// Builds a basis with the given degree parameter `q >= 2` and sorted
    /// interior knots strictly inside `(lo, hi)`.
    pub fn new(degree: usize, interior: Vec<T>, lo: T, hi: T) -> Result<Self> {
        if degree < 2 {
            return Err(Error::domain(format!(
                "spline degree parameter must be >= 2, got {degree}"
            )));
        }
        if !(lo < hi) {
            return Err(Error::domain(format!(
                "spline boundary must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        for pair in interior.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(Error::domain(
                    "interior knots must be strictly increasing".to_string(),
                ));
            }
        }
        if let (Some(first), Some(last)) = (interior.first(), interior.last()) {
            if !(*first > lo && *last < hi) {
                return Err(Error::domain(format!(
                    "interior knots must lie strictly inside ({lo}, {hi})"
                )));
            }
        }
        let p = degree - 2;
        let mut knots = Vec::with_capacity(2 * (p + 1) + interior.len());
        knots.extend(std::iter::repeat(lo).take(p + 1));
        knots.extend(interior.iter().copied());
        knots.extend(std::iter::repeat(hi).take(p + 1));
        let dim = interior.len() + degree - 1;
        Ok(Self {
            degree,
            interior,
            lo,
            hi,
            knots,
            dim,
        })
    }

    /// Places `n_interior` knots at evenly spaced quantiles of `times`
    /// (thirds for two knots), with the boundary at the extremes of
    /// `times`. Falls back to evenly spaced knots when the quantiles
    /// collide.
    pub fn from_quantiles(degree: usize, n_interior: usize, times: &[T]) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::domain(
                "need at least two time points to place spline knots".to_string(),
            ));
        }
        let mut sorted = times.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
        let lo = sorted[0];
        let hi = *sorted.last().unwrap();
        if !(lo < hi) {
            return Err(Error::domain(
                "all time points identical; cannot place spline boundary".to_string(),
            ));
        }
        let mut interior = Vec::with_capacity(n_interior);
        for k in 0..n_interior {
            let q = (k + 1) as f64 / (n_interior + 1) as f64;
            interior.push(quantile_sorted(&sorted, q));
        }
        let ok = interior.windows(2).all(|w| w[0] < w[1])
            && interior.first().map_or(true, |f| *f > lo)
            && interior.last().map_or(true, |l| *l < hi);
        if !ok {
            interior.clear();
            for k in 0..n_interior {
                let frac = T::from_f64_const((k + 1) as f64 / (n_interior + 1) as f64);
                interior.push(lo + (hi - lo) * frac);
            }
        }
        Self::new(degree, interior, lo, hi)
    }

    /// Number of basis functions `D`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn interior_knots(&self) -> &[T] {
        &self.interior
    }

    pub fn boundary(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    /// Evaluates all `D` basis functions at `t`.
    ///
    /// The result is non-negative and sums to one (partition of unity).
    pub fn eval(&self, t: T) -> Result<Vec<T>> {
        let mut out = vec![T::zero(); self.dim];
        self.eval_into(t, &mut out)?;
        Ok(out)
    }

    /// Allocation-free variant of [`Self::eval`]; `out.len()` must be `D`.
    pub fn eval_into(&self, t: T, out: &mut [T]) -> Result<()> {
        if t < self.lo || t > self.hi {
            return Err(Error::domain(format!(
                "spline evaluated at {t} outside boundary [{}, {}]",
                self.lo, self.hi
            )));
        }
        assert_eq!(out.len(), self.dim, "output buffer must have length D");
        out.iter_mut().for_each(|v| *v = T::zero());

        let p = self.degree - 2;
        let span = self.find_span(t);
        // Cox-de Boor triangle for the p+1 non-zero functions at `span`
        // (The NURBS Book, algorithm A2.2).
        let mut values = vec![T::zero(); p + 1];
        let mut left = vec![T::zero(); p + 1];
        let mut right = vec![T::zero(); p + 1];
        values[0] = T::one();
        for j in 1..=p {
            left[j] = t - self.knots[span + 1 - j];
            right[j] = self.knots[span + j] - t;
            let mut saved = T::zero();
            for r in 0..j {
                let temp = values[r] / (right[r + 1] + left[j - r]);
                values[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            values[j] = saved;
        }
        for (offset, v) in values.into_iter().enumerate() {
            out[span - p + offset] = v;
        }
        Ok(())
    }

    fn find_span(&self, t: T) -> usize {
        let p = self.degree - 2;
        let n = self.dim - 1;
        if t >= self.knots[n + 1] {
            return n;
        }
        let mut lo = p;
        let mut hi = n + 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if t < self.knots[mid] {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }
}

fn quantile_sorted<T: Scalar>(sorted: &[T], q: f64) -> T {
    let n = sorted.len();
    let pos = q * (n - 1) as f64;
    let idx = pos.floor() as usize;
    if idx + 1 >= n {
        return sorted[n - 1];
    }
    let frac = T::from_f64_const(pos - idx as f64);
    sorted[idx] + (sorted[idx + 1] - sorted[idx]) * frac
}
