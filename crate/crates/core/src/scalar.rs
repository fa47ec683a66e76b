//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point scalar the physics is computed in: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion from an integer index or label.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Unit-modulus `e^{i x}`.
pub fn cis<T: Real>(x: T) -> Complex<T> {
    Complex::new(x.cos(), x.sin())
}

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle<T: Real>(x: T) -> T {
    wrap_mod(x, T::TAU())
}

/// Reduce `x` into `[0, period)`.
pub fn wrap_mod<T: Real>(x: T, period: T) -> T {
    let r = x % period;
    let r = if r < T::zero() { r + period } else { r };
    // `r + period` can round up to exactly `period`
    if r >= period {
        T::zero()
    } else {
        r
    }
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_integer<T: Real>(x: T) -> T {
    (x - x.round()).abs()
}
