//! The scalar abstraction the algebraic core is generic over.

use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed};

/// An exact ordered field element: field arithmetic, signs, ordering and
/// integer embedding.
///
/// All correctness guarantees in this crate (exact root counts, exact
/// decompositions) assume arithmetic is exact, as it is for the [`crate::Q`]
/// rationals; the floating-point impls satisfy the interface but void those
/// guarantees.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive
{
    /// A positive factor `c` such that `c * x` has a trivial denominator for
    /// every `x` in `values`; `1` wherever denominators do not exist. Lets
    /// dense linear algebra move onto integer values when the scalar type
    /// has them; the default is correct for any field.
    fn common_denominator(values: &[Self]) -> Self {
        let _ = values;
        Self::one()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

impl Scalar for num_rational::BigRational {
    fn common_denominator(values: &[Self]) -> Self {
        let mut l = num_bigint::BigInt::one();
        for v in values {
            l = l.lcm(v.denom());
        }
        Self::from_integer(l)
    }
}

/// Embeds a machine integer into the scalar field.
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("integer does not embed into scalar type")
}

/// `n!` as a scalar, by repeated multiplication (exact in characteristic 0).
pub fn factorial<T: Scalar>(n: u32) -> T {
    let mut f = T::one();
    for k in 2..=n as i64 {
        f = f * int(k);
    }
    f
}

/// Pascal's triangle up to row `n`: `rows[n][k] = C(n, k)`.
///
/// Built with additions only, so it is exact over any scalar.
pub fn binomial_triangle<T: Scalar>(n: u32) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n as usize + 1);
    rows.push(vec![T::one()]);
    for r in 1..=n as usize {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        row.push(T::one());
        for k in 1..r {
            row.push(prev[k - 1].clone() + prev[k].clone());
        }
        row.push(T::one());
        rows.push(row);
    }
    rows
}
