//! Exact scalars: the rational type, its text form, and integer bit-sizes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedDiv, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `bit(p) = ceil(log2(p + 1))`, the number of binary digits of `p`.
pub fn bitsize(p: &BigInt) -> Result<u64> {
    if p.is_negative() {
        return Err(Error::NegativeBitsize(p.clone()));
    }
    Ok(p.bits())
}

/// [`bitsize`] for machine integers.
pub fn bit(p: u64) -> u64 {
    u64::BITS as u64 - p.leading_zeros() as u64
}

/// Smallest `m` with `2^m >= x`, for `x >= 1`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "ceil_log2 of zero");
    (x - 1u32).bits()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_div(b).ok_or(Error::DivisionByZero)
}

/// `2^-e` as an exact rational.
pub fn pow2_neg(e: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << e as usize)
}

/// Canonical text form: `"a/b"`, or `"a"` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty number")]
    Empty,
    #[error("malformed integer {0:?}")]
    Integer(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Parses `"a/b"` or `"a"`. Whitespace around the parts is tolerated; the
/// result is reduced to lowest terms.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let parse_int = |s: &str| {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Integer(s.to_string()));
        }
        s.parse::<BigInt>().map_err(|_| RationalParseError::Integer(s.to_string()))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for none).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigUint {
    values.into_iter().fold(BigUint::one(), |acc, v| {
        acc.lcm(v.denom().magnitude())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bitsize_examples() {
        assert_eq!(bitsize(&BigInt::from(1)).unwrap(), 1);
        assert_eq!(bitsize(&BigInt::from(0)).unwrap(), 0);
        assert_eq!(bitsize(&BigInt::from(7)).unwrap(), 3);
        assert_eq!(bitsize(&BigInt::from(8)).unwrap(), 4);
        assert!(matches!(bitsize(&BigInt::from(-3)), Err(Error::NegativeBitsize(_))));
        assert_eq!(bit(0), 0);
        assert_eq!(bit(4), 3);
        assert_eq!(bit(17), 5);
    }

    #[test]
    fn ceil_log2_is_exact() {
        for (x, m) in [(1u32, 0u64), (2, 1), (3, 2), (4, 2), (12, 4), (16, 4), (17, 5), (24, 5)] {
            assert_eq!(ceil_log2(&BigUint::from(x)), m, "x = {x}");
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -2 ").unwrap(), int(-2));
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator));
        assert!(matches!(parse_rational("0.5"), Err(RationalParseError::Integer(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(RationalParseError::Integer(_))));
        assert_eq!(parse_rational(""), Err(RationalParseError::Empty));
        assert_eq!(format_rational(&rat(4, -6)), "-2/3");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(checked_div(&int(1), &int(0)), Err(Error::DivisionByZero)));
        assert_eq!(checked_div(&int(1), &int(4)).unwrap(), rat(1, 4));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
    }

    fn is_canonical(x: &Rational) -> bool {
        x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
    }

    proptest! {
        #[test]
        fn field_laws_hold_exactly(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let l = (&a + &b) + &c;
            let r = &a + (&b + &c);
            prop_assert_eq!(&l, &r);
            prop_assert!(is_canonical(&l));
            let l = &a * (&b + &c);
            let r = &a * &b + &a * &c;
            prop_assert_eq!(&l, &r);
            prop_assert!(is_canonical(&l));
        }

        #[test]
        fn text_round_trip(a in arb_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }
    }
}
