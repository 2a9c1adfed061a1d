//! Arithmetic abstraction so kernels and drift formulas run either in
//! exact rational arithmetic (for identity verification) or in `f64`
//! (for scans where speed matters over exactness).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;

/// Exact scalar used when model parameters are given as fractions.
/// `i128` numerators/denominators are ample at the state sizes this
/// crate enumerates.
pub type Rational = Ratio<i128>;

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// True when arithmetic here is exact (identities must hold with zero
    /// residual rather than within a tolerance).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    /// The value `doubled / 2`, exact where possible.
    fn from_doubled(doubled: i128) -> Self;
    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_doubled(doubled: i128) -> Self {
        doubled as f64 / 2.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Ratio::new(0, 1)
    }

    fn one() -> Self {
        Ratio::new(1, 1)
    }

    fn from_int(v: i64) -> Self {
        Ratio::new(v as i128, 1)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }

    fn from_doubled(doubled: i128) -> Self {
        Ratio::new(doubled, 2)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Parses `"a/b"`, `"a"`, or a decimal string; fractions and integers
/// yield exact values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParsedScalar {
    Exact(Rational),
    Float(f64),
}

impl ParsedScalar {
    pub fn parse(text: &str) -> Option<ParsedScalar> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: i128 = num.trim().parse().ok()?;
            let den: i128 = den.trim().parse().ok()?;
            if den == 0 {
                return None;
            }
            return Some(ParsedScalar::Exact(Ratio::new(num, den)));
        }
        if let Ok(int) = text.parse::<i128>() {
            return Some(ParsedScalar::Exact(Ratio::new(int, 1)));
        }
        text.parse::<f64>().ok().filter(|v| v.is_finite()).map(ParsedScalar::Float)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ParsedScalar::Exact(r) => Scalar::to_f64(&r),
            ParsedScalar::Float(v) => v,
        }
    }

    pub fn exact(self) -> Option<Rational> {
        match self {
            ParsedScalar::Exact(r) => Some(r),
            ParsedScalar::Float(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let x = Rational::ratio(7, 10);
        let y = Rational::one() - x.clone();
        assert_eq!(y, Rational::ratio(3, 10));
        assert_eq!((x * y).to_f64(), 0.21);
        assert_eq!(Rational::from_doubled(5), Rational::ratio(5, 2));
    }

    #[test]
    fn parsing_distinguishes_exact_and_float() {
        assert_eq!(
            ParsedScalar::parse("7/10"),
            Some(ParsedScalar::Exact(Rational::ratio(7, 10)))
        );
        assert_eq!(
            ParsedScalar::parse("1"),
            Some(ParsedScalar::Exact(Rational::one()))
        );
        assert_eq!(ParsedScalar::parse("0.7"), Some(ParsedScalar::Float(0.7)));
        assert_eq!(ParsedScalar::parse("1/0"), None);
        assert_eq!(ParsedScalar::parse("x"), None);
        assert_eq!(ParsedScalar::parse("inf"), None);
    }
}
