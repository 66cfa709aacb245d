//! Exact scalar fields.
//!
//! Everything above the linear-algebra layer is generic over [`Field`]. The
//! trait is only implemented for exact rational types: there is no floating
//! point instantiation, since zero tests during elimination must be exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact field of characteristic zero.
pub trait Field:
    Num + Clone + Neg<Output = Self> + Debug + Display + Hash + Eq + FromStr + Send + Sync + 'static
{
    /// The element `num / den`. Panics if `den == 0`.
    fn from_fraction(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_fraction(n, 1)
    }

    fn is_negative(&self) -> bool;
}

macro_rules! impl_ratio_field {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            fn from_fraction(num: i64, den: i64) -> Self {
                Ratio::new(<$int>::from(num), <$int>::from(den))
            }

            fn is_negative(&self) -> bool {
                Signed::is_negative(self)
            }
        }
    };
}

impl_ratio_field!(i64);
impl_ratio_field!(i128);
impl_ratio_field!(BigInt);

/// Parse an exact fraction such as `-3/2` or `7`.
pub fn parse_fraction<T: Field>(s: &str) -> Option<T> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    s.parse::<T>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn fractions_are_reduced() {
        let x = BigRational::from_fraction(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Rational64::from_fraction(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3/2", "8/5", "17"] {
            let x: BigRational = parse_fraction(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(parse_fraction::<BigRational>("1/0").is_none());
        assert!(parse_fraction::<BigRational>("x").is_none());
    }
}
