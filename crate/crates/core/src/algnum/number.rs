use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::{IntPolynomial, Sturm};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::Rational;

/// A real algebraic number: an integer polynomial together with a dyadic
/// interval on which it has exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: IntPolynomial,
    lo: Dyadic,
    hi: Dyadic,
}

impl AlgebraicNumber {
    /// Checks the isolation certificate before building the value.
    pub fn new(poly: IntPolynomial, lo: Dyadic, hi: Dyadic) -> Result<Self> {
        let count = Sturm::new(&poly).count(&lo.to_rational(), &hi.to_rational());
        if count != 1 {
            return Err(Error::BoundViolation(format!("{poly} has {count} roots on [{lo}, {hi}], expected 1")));
        }
        Ok(AlgebraicNumber { poly, lo, hi })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn interval(&self) -> (&Dyadic, &Dyadic) {
        (&self.lo, &self.hi)
    }

    /// The value itself when the polynomial is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        self.poly.rational_root()
    }

    /// Sturm root count on the interval; 1 for every constructed value.
    pub fn root_count(&self) -> usize {
        Sturm::new(&self.poly).count(&self.lo.to_rational(), &self.hi.to_rational())
    }

    /// Shrinks the interval by bisection until its width is at most
    /// `2^-bits`.
    pub fn refine_interval(&self, bits: u64) -> AlgebraicNumber {
        let sturm = Sturm::new(&self.poly);
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let limit = Dyadic::unit(bits);
        while hi.sub(&lo) > limit {
            let mid = lo.midpoint(&hi);
            if sturm.count(&lo.to_rational(), &mid.to_rational()) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        AlgebraicNumber { poly: self.poly.clone(), lo, hi }
    }

    /// Widens the interval to `[(m-1)/2^j, (m+1)/2^j]` for the smallest
    /// `j >= 2` that still isolates the same root.
    pub fn coarsen(&self) -> AlgebraicNumber {
        let sturm = Sturm::new(&self.poly);
        let center = self.lo.midpoint(&self.hi);
        for j in 2..=self.hi.sub(&self.lo).exponent().max(2) {
            let m = Dyadic::round_rational(&center.to_rational(), j).scaled_to(j);
            let lo = Dyadic::new(&m - 1, j);
            let hi = Dyadic::new(&m + 1, j);
            if lo <= self.lo && self.hi <= hi && sturm.count(&lo.to_rational(), &hi.to_rational()) == 1 {
                return AlgebraicNumber { poly: self.poly.clone(), lo, hi };
            }
        }
        self.clone()
    }
}

/// Isolates the root of `p` that lies within `2^-r` of `approx`.
///
/// The search window is `[approx - 2^{1-r}, approx + 2^{1-r}]`. Windows
/// holding several roots are bisected until every piece holds one, and the
/// piece whose root is within `2^-r` of `approx` is returned.
pub fn isolate_root(p: &IntPolynomial, approx: &Dyadic, r: u64) -> Result<AlgebraicNumber> {
    let sturm = Sturm::new(p);
    let count = |lo: &Dyadic, hi: &Dyadic| sturm.count(&lo.to_rational(), &hi.to_rational());
    let half_width = if r == 0 { Dyadic::from_integer(2) } else { Dyadic::unit(r - 1) };
    let near_lo = approx.sub(&Dyadic::unit(r));
    let near_hi = approx.add(&Dyadic::unit(r));

    let mut open = vec![(approx.sub(&half_width), approx.add(&half_width))];
    let mut done = Vec::new();
    while let Some((lo, hi)) = open.pop() {
        if hi < near_lo || lo > near_hi {
            continue;
        }
        match count(&lo, &hi) {
            0 => {}
            1 => done.push((lo, hi)),
            _ => {
                let mid = lo.midpoint(&hi);
                if p.sign_at(&mid.to_rational()).is_ne() {
                    open.push((lo, mid.clone()));
                    open.push((mid, hi));
                    continue;
                }
                // the midpoint is itself a root: cut out a small interval
                // around it whose ends are not roots
                let mut eps = hi.sub(&lo).mul(&Dyadic::unit(2));
                loop {
                    let (a, b) = (mid.sub(&eps), mid.add(&eps));
                    let clean = p.sign_at(&a.to_rational()).is_ne() && p.sign_at(&b.to_rational()).is_ne();
                    if clean && count(&a, &b) == 1 {
                        open.push((lo, a.clone()));
                        done.push((a, b.clone()));
                        open.push((b, hi));
                        break;
                    }
                    eps = eps.mul(&Dyadic::unit(1));
                }
            }
        }
    }
    let mut near: Vec<(Dyadic, Dyadic)> = done
        .into_iter()
        .filter(|(lo, hi)| {
            let a = lo.clone().max(near_lo.clone());
            let b = hi.clone().min(near_hi.clone());
            a <= b && count(&a, &b) == 1
        })
        .collect();
    match near.len() {
        0 => Err(Error::NoRootNear { poly: p.to_string(), near: approx.to_string() }),
        1 => {
            let (lo, hi) = near.pop().expect("one piece");
            AlgebraicNumber::new(p.clone(), lo, hi)
        }
        k => Err(Error::NoRootNear { poly: p.to_string(), near: format!("{approx} (ambiguous: {k} roots nearby)") }),
    }
}

/// Midpoint of the interval after refining it to width `2^-bits`.
pub fn refine(a: &AlgebraicNumber, bits: u64) -> Dyadic {
    let r = a.refine_interval(bits);
    r.lo.midpoint(&r.hi)
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.poly, self.lo, self.hi)
    }
}

/// `{"coefficients": [a_0, …, a_p], "interval": ["m/2^e", "m/2^e"]}` with
/// coefficients as decimal strings.
impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.poly.coeffs().iter().map(BigInt::to_string).collect();
        let mut st = s.serialize_struct("AlgebraicNumber", 3)?;
        st.serialize_field("polynomial", &self.poly.to_string())?;
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("interval", &[&self.lo, &self.hi])?;
        st.end()
    }
}
