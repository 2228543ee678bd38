//! Exact arithmetic kernel: arbitrary-precision rationals, sparse rational
//! matrices with rank / kernel / solve, and integer matrices with Smith
//! normal form.  No floating point.

mod int_matrix;
mod snf;
mod sparse;

pub use int_matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};
pub use sparse::SparseMatrixQ;

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational scalar.  Always stored reduced with positive denominator;
/// `num_rational::Ratio` maintains that invariant on every operation.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.  Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let q = rat(4, -6);
        assert_eq!(q, rat(-2, 3));
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(3));
    }

    #[test]
    fn rational_parses_and_displays() {
        let q: Rational = "3/2".parse().unwrap();
        assert_eq!(q, rat(3, 2));
        assert_eq!(q.to_string(), "3/2");
        let n: Rational = "-1".parse().unwrap();
        assert_eq!(n, rat_int(-1));
        assert_eq!(n.to_string(), "-1");
    }

    #[test]
    fn rational_field_ops() {
        let a = rat(1, 3);
        let b = rat(1, 6);
        assert_eq!(&a + &b, rat(1, 2));
        assert_eq!(&a * &b, rat(1, 18));
        assert_eq!(&a - &a, Rational::zero());
        assert_eq!(&a / &a, Rational::one());
    }
}
