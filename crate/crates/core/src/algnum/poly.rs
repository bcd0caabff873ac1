use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// A primitive integer polynomial `a_0 + a_1 z + ... + a_p z^p` with
/// `p >= 1` and `a_p > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Normalizes `coeffs` (ascending degree): trailing zeros are dropped,
    /// the content is divided out and the leading coefficient made positive.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::ConstantPolynomial);
        }
        let content = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let flip = coeffs.last().expect("non-empty").is_negative();
        for c in coeffs.iter_mut() {
            *c = &*c / &content;
            if flip {
                *c = -&*c;
            }
        }
        Ok(IntPolynomial { coeffs })
    }

    /// `den(v)·z - num(v)`, the minimal polynomial of a rational.
    pub fn from_rational(v: &Rational) -> Self {
        IntPolynomial { coeffs: vec![-v.numer().clone(), v.denom().clone()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `max |a_i|`.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().expect("non-empty")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    /// Sign of `P(x)`, computed on integers as `b^p P(a/b)`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc.cmp(&BigInt::zero())
    }

    /// The rational root of a degree-1 polynomial.
    pub fn rational_root(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| Rational::new(-self.coeffs[0].clone(), self.coeffs[1].clone()))
    }

    pub(crate) fn to_rational_coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }
}

/// Renders as e.g. `2z^2 - 1`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomial over the rationals, ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly(pub Vec<Rational>);

impl RatPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// Quotient and remainder of Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.0.last().expect("nonzero");
        if self.0.len() < d.0.len() {
            return (RatPoly(vec![]), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.0.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }
}

/// Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<RatPoly>,
}

impl Sturm {
    pub fn new(p: &IntPolynomial) -> Self {
        let p = RatPoly::new(p.to_rational_coeffs());
        let g = p.gcd(&p.derivative());
        let base = p.div_rem(&g).0;
        let mut chain = vec![base.clone(), base.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last: Option<bool> = None;
        let mut count = 0;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if a > b {
            return 0;
        }
        let at_a = usize::from(self.chain[0].eval(a).is_zero());
        self.variations(a) - self.variations(b) + at_a
    }
}
