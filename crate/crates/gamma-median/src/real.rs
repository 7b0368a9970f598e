use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the library is generic over: `f32` or `f64`.
///
/// Everything downstream works at whatever precision the scalar carries;
/// the accuracy figures quoted throughout the crate documentation assume
/// `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + core::fmt::Debug + core::fmt::Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for converting an `f64` constant into the working scalar.
#[inline]
pub(crate) fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert into the scalar type")
}

/// Integer-to-scalar conversion for series indices.
#[inline]
pub(crate) fn ri<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("series index must convert into the scalar type")
}
