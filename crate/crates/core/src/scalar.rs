use std::fmt::{Debug, Display};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar used by the rate and oracle modules: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + serde::Serialize + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn count(x: u64) -> Self {
        <Self as FromPrimitive>::from_u64(x).expect("integer representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact test of `lhs <= rhs * (1 + guard)`. The floating side is converted
/// to an exact rational, so no rounding happens on the integer side.
pub fn big_le_real<T: Real>(lhs: &BigUint, rhs: T, guard: f64) -> bool {
    let Some(bound) = rhs.to_f64() else {
        return false;
    };
    let bound = bound * (1.0 + guard);
    if bound.is_nan() {
        return false;
    }
    if bound == f64::INFINITY {
        return true;
    }
    match BigRational::from_float(bound) {
        Some(b) => BigRational::from_integer(BigInt::from(lhs.clone())) <= b,
        None => false,
    }
}
