//! Exact rational scalars and vectors.
//!
//! Scalars are `num_rational::BigRational`, which keeps every value in lowest
//! terms with a positive denominator, so structural equality is value equality.
//! Text form is `p/q`, or `p` when the denominator is one.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Fractional part `a - floor(a)`, always in `[0, 1)`.
pub fn frac(a: &Rational) -> Rational {
    a - a.floor()
}

/// `(floor(a), ceil(a))` as integers.
pub fn floor_ceil(a: &Rational) -> (BigInt, BigInt) {
    (a.floor().to_integer(), a.ceil().to_integer())
}

pub fn is_integral(a: &Rational) -> bool {
    a.denom().is_one()
}

/// Parses `p/q`, `p`, with optional sign. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Exact point or direction in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(entries: &[(i64, i64)]) -> Self {
        RationalVector(entries.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integral)
    }

    pub fn scale(&self, t: &Rational) -> Self {
        RationalVector(self.0.iter().map(|v| v * t).collect())
    }

    /// Appends one coordinate, as used by the lifted `(n+1)`-row programs.
    pub fn extended(&self, last: Rational) -> Self {
        let mut entries = self.0.clone();
        entries.push(last);
        RationalVector(entries)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> Self {
        RationalVector(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Parses whitespace- or comma-separated rationals.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Exact inner product. Errors on a dimension mismatch.
pub fn dot(u: &RationalVector, v: &RationalVector) -> Result<Rational> {
    v.check_dim(u.dim())?;
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}

/// Integral vector, used for split normals `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn negated(&self) -> Self {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn extended(&self, last: BigInt) -> Self {
        let mut entries = self.0.clone();
        entries.push(last);
        IntVector(entries)
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().cloned().map(Rational::from_integer).collect())
    }

    /// True when the first non-zero entry is positive.
    pub fn is_sign_representative(&self) -> bool {
        self.0
            .iter()
            .find(|a| !a.is_zero())
            .is_some_and(|a| a.is_positive())
    }

    pub fn dot(&self, v: &RationalVector) -> Result<Rational> {
        v.check_dim(self.dim())?;
        Ok(self
            .0
            .iter()
            .zip(v.iter())
            .map(|(a, b)| b * a)
            .sum())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                let r = parse_rational(s)?;
                if !is_integral(&r) {
                    return Err(Error::Parse(format!("expected an integer, got {s:?}")));
                }
                Ok(r.to_integer())
            })
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Least common multiple of the denominators of all given values.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
