//! Scalar abstraction for the field the whole crate computes over.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Field scalar usable by every algorithm in this crate.
///
/// The bound set is satisfied by `num_rational::BigRational` (the alias
/// [`crate::Q`], used for all exact computations) as well as by the primitive
/// floats, should a caller ever want approximate arithmetic for scratch work.
/// Everything shipped in this workspace instantiates with `Q`.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display + 'static
{
}

impl<T> Scalar for T where
    T: Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display + 'static
{
}

/// Converts a machine integer into the scalar type.
///
/// Panics if the conversion is not representable, which cannot happen for
/// rationals.
pub fn from_usize<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("usize must embed into the scalar field")
}

/// `n!` computed inside the scalar field.
pub fn factorial<T: Scalar>(n: u32) -> T {
    let mut acc = T::one();
    for i in 2..=n {
        acc = acc * from_usize::<T>(i as usize);
    }
    acc
}

/// Binomial coefficient `C(n, k)` computed inside the scalar field.
///
/// Uses the multiplicative formula; every intermediate quotient is an
/// integer, so the computation stays exact over any field of characteristic
/// zero despite the division.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 1..=k {
        acc = acc * from_usize::<T>(n - k + i) / from_usize::<T>(i);
    }
    acc
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)` inside the scalar
/// field, as a product of binomials.
pub fn multinomial<T: Scalar>(parts: &[u32]) -> T {
    let mut acc = T::one();
    let mut total = 0usize;
    for &p in parts {
        total += p as usize;
        acc = acc * binomial::<T>(total, p as usize);
    }
    acc
}
