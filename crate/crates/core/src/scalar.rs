//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// `nominal`, raised to a few thousand ulps when the type cannot resolve it.
    #[inline]
    fn tol(nominal: f64) -> Self {
        Self::lit(nominal).max(Self::epsilon() * Self::lit(1.0e3))
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn of_i64(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("i64 representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `sin(pi * x)` with exact argument reduction, so integer `x` gives exactly zero.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    // x - 2*round(x/2) is exact in binary floating point
    let r = x - two * (x / two).round();
    if r == T::zero() || r.abs() == T::one() {
        return T::zero();
    }
    (T::PI() * r).sin()
}

/// Normalized sinc, `sin(pi x) / (pi x)`, with `sinc(0) = 1`.
pub fn sinc<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::one();
    }
    if x.abs() < T::lit(1.0e-4) {
        // Taylor: 1 - (pi x)^2/6 + (pi x)^4/120
        let y = T::PI() * x;
        let y2 = y * y;
        return T::one() - y2 / T::lit(6.0) + y2 * y2 / T::lit(120.0);
    }
    sin_pi(x) / (T::PI() * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_zeros_at_integers() {
        for k in 1..50 {
            assert_eq!(sinc(k as f64), 0.0);
            assert_eq!(sinc(-(k as f64)), 0.0);
        }
        assert_eq!(sinc(0.0f64), 1.0);
    }

    #[test]
    fn sinc_matches_direct_formula() {
        for &x in &[0.3f64, -1.7, 12.25, 1999.5, 1e-3, 1e-6] {
            let direct = (std::f64::consts::PI * x).sin() / (std::f64::consts::PI * x);
            assert!((sinc(x) - direct).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn tol_respects_precision() {
        assert_eq!(<f64 as Real>::tol(1e-9), 1e-9);
        assert!(<f32 as Real>::tol(1e-9) > 1e-6);
    }
}
