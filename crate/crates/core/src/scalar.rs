//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used for lengths, angles and coordinates (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion")
    }

    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().expect("scalar conversion")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn tau() -> Self {
        Self::TAU()
    }

    /// Arccosine with the argument clamped to `[-1, 1]`.
    #[inline]
    fn acos_clamped(self) -> Self {
        self.max(-Self::one()).min(Self::one()).acos()
    }
}

impl Real for f32 {}
impl Real for f64 {}
