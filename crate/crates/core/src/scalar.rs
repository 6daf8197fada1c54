//! Scalar abstraction for the exact linear algebra layer.
//!
//! Everything downstream is generic over [`Scalar`], a field-like bound
//! assembled from `num-traits`. The inhabitants that matter here are exact
//! rationals (`num::BigRational`); `f32`/`f64` also satisfy the bound, so the
//! generic layer can be instantiated approximately, but none of the shipped
//! constructions do that: the verification contract is exact equality.

use num::traits::{Num, One, Zero};
use std::fmt;
use std::ops::Neg;

/// Field-like scalar: ring operations, exact division, negation, equality.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + fmt::Debug + fmt::Display + 'static {
    /// Embeds a small nonnegative integer by repeated addition of one.
    fn from_count(n: usize) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n {
            acc = acc + Self::one();
        }
        acc
    }

    /// Multiplicative inverse of the image of a nonzero integer count.
    fn inv_count(n: usize) -> Self {
        Self::one() / Self::from_count(n)
    }
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + Clone + PartialEq + fmt::Debug + fmt::Display + 'static
{
}

/// Returns `true` when the value is the additive identity.
pub fn is_zero<F: Scalar>(x: &F) -> bool {
    Zero::is_zero(x)
}

/// Returns `true` when the value is the multiplicative identity.
pub fn is_one<F: Scalar>(x: &F) -> bool {
    One::is_one(x)
}
