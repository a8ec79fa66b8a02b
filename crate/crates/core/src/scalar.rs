//! Scalar abstraction for the algebra kernel.
//!
//! The Laurent and linear-algebra layers are written against this trait
//! rather than a concrete number type. The crate instantiates everything at
//! [`crate::Rat`]; any field-like type satisfying the bounds (e.g. `f64` for
//! quick numeric experiments) works mechanically, but only an exact type
//! preserves the identities this crate exists to check.

use std::fmt;

use num_traits::{FromPrimitive, Num, NumAssignOps};

pub trait Scalar:
    Num + NumAssignOps + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

impl<T> Scalar for T where
    T: Num + NumAssignOps + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

/// `base^exp` by repeated multiplication, with the convention `x^0 = 1`
/// (including `0^0 = 1`).
pub fn scalar_pow<T: Scalar>(base: T, exp: usize) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// Lift a signed integer into the scalar type.
pub fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar type must represent small integers")
}
