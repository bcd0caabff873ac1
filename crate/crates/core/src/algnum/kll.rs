//! Minimal polynomials from dyadic approximations.
//!
//! For each trial degree `d` the lattice spanned by the rows
//! `e_i ⊕ round(2^s ᾱ^i)`, `i = 0..=d`, contains the vector
//! `(b_0, …, b_d, ≈ 2^s P(ᾱ))` for every integer polynomial `P`; the true
//! minimal polynomial gives an unusually short one. After LLL every reduced
//! vector is tested and the first candidate that passes is returned.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::lll::lll_reduce;
use super::poly::{IntPolynomial, Sturm};
use crate::dyadic::{round_half_even, Dyadic};
use crate::error::{Error, Result};
use crate::rational::{ceil_log2, pow2_neg};
use crate::Rational;

/// `s(q, C) = ⌈q² + (3q+4) log₂(q+1) + 2qC⌉`, evaluated exactly as
/// `q² + 2qC + ⌈log₂((q+1)^{3q+4})⌉`.
pub fn precision_s(q: u64, c: u64) -> u64 {
    let power = num_traits::pow(BigUint::from(q + 1), (3 * q + 4) as usize);
    q * q + ceil_log2(&power) + 2 * q * c
}

/// Why a lattice vector was turned down; kept for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Reject {
    Constant,
    Height,
    Residual,
    NoRoot,
}

fn rational_pow(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// Acceptance test for a candidate of degree at most `d`.
///
/// A genuine minimal polynomial `P` of height at most `2^C` satisfies
/// `|P(ᾱ)| <= |α - ᾱ| · |P'|` on the segment, which is below
/// `T = 2^{-s} (d+1)² 2^C (2 max(1, |ᾱ|))^d`. A polynomial that does not
/// vanish at `α` has `|P(ᾱ)|` bounded away from zero by a resultant argument
/// once `s` exceeds `2qC` plus lower-order terms, so the same `T` separates
/// the two cases. The root-proximity test guards the remaining slack.
fn check(cand: &[BigInt], alpha: &Rational, d: usize, s: u64, c: u64) -> std::result::Result<IntPolynomial, Reject> {
    let p = IntPolynomial::new(cand.to_vec()).map_err(|_| Reject::Constant)?;
    if p.height() > BigInt::one() << c as usize {
        return Err(Reject::Height);
    }
    let m = alpha.abs().max(Rational::one());
    let bound = pow2_neg(s)
        * Rational::from_integer(BigInt::from((d + 1) * (d + 1)) << c as usize)
        * rational_pow(&(m * Rational::from_integer(2.into())), d);
    if p.eval(alpha).abs() > bound {
        return Err(Reject::Residual);
    }
    let w = pow2_neg(s / 4);
    if Sturm::new(&p).count(&(alpha - &w), &(alpha + &w)) == 0 {
        return Err(Reject::NoRoot);
    }
    Ok(p)
}

/// Reconstructs the minimal polynomial of an algebraic number `α` of degree
/// at most `q` and height at most `2^c`, given `ᾱ` with
/// `|α - ᾱ| <= 2^{-s} / (12q)` where `s = precision_s(q, c)`.
///
/// Degrees are tried in increasing order, so the result has the least
/// degree among accepted candidates.
pub fn min_poly_from_approx(alpha: &Dyadic, q: u64, c: u64) -> Result<IntPolynomial> {
    if q == 0 || c == 0 {
        return Err(Error::Reconstruction("degree and height bounds must be positive".into()));
    }
    let s = precision_s(q, c);
    let a = alpha.to_rational();
    let weight = Rational::from_integer(BigInt::one() << s as usize);
    let mut rejected = Vec::new();
    for d in 1..=q as usize {
        let basis: Vec<Vec<BigInt>> = (0..=d)
            .map(|i| {
                let mut row = vec![BigInt::zero(); d + 2];
                row[i] = BigInt::one();
                row[d + 1] = round_half_even(&(&weight * rational_pow(&a, i)));
                row
            })
            .collect();
        let reduced = lll_reduce(&basis, &Rational::new(3.into(), 4.into()))?;
        for v in &reduced {
            match check(&v[..=d], &a, d, s, c) {
                Ok(p) => {
                    log::debug!("degree {d}: accepted {p}");
                    return Ok(p);
                }
                Err(why) => rejected.push((d, why)),
            }
        }
    }
    log::debug!("rejected candidates: {rejected:?}");
    Err(Error::Reconstruction(format!(
        "no polynomial of degree <= {q} and height <= 2^{c} fits {alpha}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn precision_examples() {
        assert_eq!(precision_s(1, 8), 24);
        assert_eq!(precision_s(1, 1), 10);
        assert!(precision_s(3, 5) < precision_s(3, 6));
    }

    #[test]
    fn rationals() {
        let s = precision_s(1, 8);
        let half = Dyadic::floor_rational(&rat(1, 2), s);
        assert_eq!(min_poly_from_approx(&half, 1, 8).unwrap().to_string(), "2z - 1");
        assert_eq!(min_poly_from_approx(&Dyadic::zero(), 3, 5).unwrap().to_string(), "z");
        let third = Dyadic::round_rational(&rat(-7, 3), precision_s(1, 4) + 4);
        assert_eq!(min_poly_from_approx(&third, 1, 4).unwrap().to_string(), "3z + 7");
    }

    #[test]
    fn half_sqrt_two() {
        // √2/2 truncated to 40 bits; s(2, 4) = 36
        let v = Rational::new(BigInt::from(777_472_127_993u64), BigInt::one() << 40);
        let approx = Dyadic::from_rational(&v).unwrap();
        let p = min_poly_from_approx(&approx, 2, 4);
        assert_eq!(p.unwrap().to_string(), "2z^2 - 1");
    }
}
