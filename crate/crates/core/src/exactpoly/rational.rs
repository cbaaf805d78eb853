use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// `BigRational` keeps the canonical form (reduced, positive denominator,
/// zero as `0/1`) after every operation.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, `p/q` with integer `p`, `q`. Decimal points and
/// exponents are rejected: every coefficient must be exactly rational.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let t = s.trim();
    let bad = || PolyError::Parse {
        input: s.to_string(),
        position: 0,
        message: "expected an integer or a fraction p/q".into(),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(PolyError::Parse {
            input: s.to_string(),
            position: 0,
            message: "zero denominator".into(),
        });
    }
    Ok(Rational::new(num, den))
}

/// Least common multiple of the denominators.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Greatest common divisor of the numerators (zero for an empty input).
pub(crate) fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(&q.numer().abs()))
}
