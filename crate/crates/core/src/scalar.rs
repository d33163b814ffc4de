//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Besides the arithmetic bounds this carries the two norm tolerances the
/// library checks against. `unit_tolerance` bounds `|norm² - 1|` for values the
/// library constructs itself; `input_tolerance` is the looser bound applied to
/// caller-supplied unit vectors and quaternions.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    fn unit_tolerance() -> Self;
    fn input_tolerance() -> Self;

    /// Shorthand for converting literal constants.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f64 {
    fn unit_tolerance() -> Self {
        1e-12
    }
    fn input_tolerance() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn unit_tolerance() -> Self {
        1e-5
    }
    fn input_tolerance() -> Self {
        1e-5
    }
}
