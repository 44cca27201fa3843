//! Scalar abstraction: all core math is generic over the real type.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar for circuit amplitudes and angles: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Sum + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar type.
///
/// Panics only if the target type cannot represent any `f64`, which does not
/// happen for `f32`/`f64`.
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal not representable")
}
