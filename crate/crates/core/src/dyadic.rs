use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Rational;

/// The number `mantissa / 2^exponent`.
///
/// Values are kept reduced: the mantissa is odd whenever the exponent is
/// positive, so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: u64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.reduce();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Dyadic { mantissa: n.into(), exponent: 0 }
    }

    /// `2^-e`.
    pub fn unit(e: u64) -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: e }
    }

    fn reduce(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0).min(self.exponent);
        if tz > 0 {
            self.mantissa >>= tz as usize;
            self.exponent -= tz;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::one() << self.exponent as usize)
    }

    /// Exact conversion; `None` when the denominator is not a power of two.
    pub fn from_rational(x: &Rational) -> Option<Self> {
        let d = x.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz as usize).is_one() {
            Some(Dyadic::new(x.numer().clone(), tz))
        } else {
            None
        }
    }

    /// Nearest multiple of `2^-bits` to `x`, ties to even.
    pub fn round_rational(x: &Rational, bits: u64) -> Self {
        let scaled = x * Rational::from_integer(BigInt::one() << bits as usize);
        Dyadic::new(round_half_even(&scaled), bits)
    }

    /// Largest multiple of `2^-bits` not above `x`.
    pub fn floor_rational(x: &Rational, bits: u64) -> Self {
        let scaled = x * Rational::from_integer(BigInt::one() << bits as usize);
        Dyadic::new(scaled.floor().to_integer(), bits)
    }

    /// Numerator of this value on the grid `2^-bits`; requires `bits >= exponent`.
    pub fn scaled_to(&self, bits: u64) -> BigInt {
        assert!(bits >= self.exponent, "grid too coarse for {self}");
        &self.mantissa << (bits - self.exponent) as usize
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        (self.scaled_to(e), other.scaled_to(e), e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exponent + other.exponent)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }

    /// `(self + other) / 2`.
    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e + 1)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

pub(crate) fn round_half_even(x: &Rational) -> BigInt {
    let fl = x.floor().to_integer();
    let frac = x - Rational::from_integer(fl.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Text form `"mantissa/2^exponent"`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed dyadic {0:?}; expected \"mantissa/2^exponent\"")]
pub struct DyadicParseError(String);

impl std::str::FromStr for Dyadic {
    type Err = DyadicParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DyadicParseError(s.to_string());
        let (m, e) = s.trim().split_once("/2^").ok_or_else(err)?;
        let mantissa: BigInt = m.parse().map_err(|_| err())?;
        let exponent: u64 = e.parse().map_err(|_| err())?;
        Ok(Dyadic::new(mantissa, exponent))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
