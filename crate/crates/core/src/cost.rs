//! Scalar type used for facility costs, service costs and objective values.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{PrimInt, Signed};

/// Exact signed integer scalar.
///
/// Objective deltas are compared for exact equality against full
/// re-evaluation, so only integer types qualify; floating point is excluded
/// at the type level.
pub trait Cost:
    PrimInt + Signed + Sum + FromStr + Display + Debug + Default + Send + Sync + 'static
{
    /// Converts a small non-negative literal produced by the generators.
    fn small(v: u32) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("cost type too narrow for generator values")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("cost value not representable as f64")
    }
}

impl<T> Cost for T where
    T: PrimInt + Signed + Sum + FromStr + Display + Debug + Default + Send + Sync + 'static
{
}
