use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// Coefficient field for [`crate::Quad`] and [`crate::Cyclo`].
///
/// Exact results need an exact field such as [`crate::Rational`]; `f64`
/// satisfies the bound too and is handy for quick approximations.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync
{}

pub(crate) fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar type must represent small integers")
}
