//! Exact arithmetic: big rationals, the ring Q[√2], and truncated power
//! series with rational coefficients.

mod qsqrt2;
mod series;

pub use qsqrt2::QSqrt2;
pub use series::PowerSeries;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Canonical big rational (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or `p` (optional leading sign on `p`, decimal digits only).
/// The result is reduced to canonical form.
pub fn parse_rational(text: &str) -> Option<Rational> {
    fn digits(s: &str) -> Option<BigInt> {
        if s.is_empty() || s.len() > 4096 || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let (negative, magnitude) = match num_text.as_bytes().first()? {
        b'-' => (true, &num_text[1..]),
        b'+' => (false, &num_text[1..]),
        _ => (false, num_text),
    };
    let mut numer = digits(magnitude)?;
    if negative {
        numer = -numer;
    }
    let denom = match den_text {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// The scalar operations the moment-cumulant recursions need. Implemented for
/// [`Rational`] and [`QSqrt2`]; test oracles implement it for dual numbers.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(r: Rational) -> Self;
    /// Division by a nonzero rational.
    fn div_rational(self, r: &Rational) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rational(integer(n))
    }
    fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn div_rational(self, r: &Rational) -> Self {
        self / r
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// (2m-1)!! with the convention (-1)!! = 1.
pub fn double_factorial_odd(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

pub(crate) fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(parse_rational("12/18").unwrap(), rational(2, 3));
        assert_eq!(format_rational(&parse_rational("-12/18").unwrap()), "-2/3");
    }

    #[test]
    fn rational_parser_rejects_garbage() {
        for bad in ["", "/", "1/", "/2", "1/0", "1/-2", "--1", "1.5", " 1", "1/2/3", "+"] {
            assert!(parse_rational(bad).is_none(), "{bad:?}");
        }
        assert_eq!(parse_rational("+7").unwrap(), integer(7));
        assert_eq!(parse_rational("-0/5").unwrap(), integer(0));
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(binomial(7, 2), BigInt::from(21));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(double_factorial_odd(3), BigInt::from(15));
        let cats: Vec<BigInt> = (0..6).map(catalan).collect();
        assert_eq!(cats, [1, 1, 2, 5, 14, 42].map(BigInt::from));
    }
}
