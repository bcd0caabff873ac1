//! Discounted values `v^k_λ`: certified bisection and exact reconstruction.

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::algnum::{isolate_root, min_poly_from_approx, precision_s, AlgebraicNumber, IntPolynomial, Sturm};
use crate::chain::check_discount;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::game::{NormalizedGame, Player};
use crate::options::{DegreeBound, SolveOptions};
use crate::paramgame::ParamGame;
use crate::rational::{bit, ceil_log2};
use crate::Rational;

/// Height and precision parameters of the exact algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    /// Bit-size bound on the coefficients of the minimal polynomial.
    pub c: u64,
    /// Precision required by reconstruction.
    pub s: u64,
    /// Bisection precision.
    pub r: u64,
    /// Degree bound used for `s` and `r`.
    pub degree: u64,
}

impl BoundSet {
    /// `C = 8|I|²n² bit(N)`, `s = s(q, C)`, `r = s ⌈log₂ 12q⌉`.
    pub fn new(n: u64, rows: u64, denominator: &BigUint, degree: u64) -> Self {
        let c = 8 * rows * rows * n * n * denominator.bits();
        let s = precision_s(degree, c);
        let r = s * ceil_log2(&BigUint::from(12 * degree));
        BoundSet { c, s, r, degree }
    }

    pub fn for_game(game: &NormalizedGame, degree: DegreeBound) -> Self {
        let spec = game.game();
        let rows = spec.profile_count(Player::One) as u64;
        let cols = spec.profile_count(Player::Two) as u64;
        let q = match degree {
            DegreeBound::Tight => rows.min(cols),
            DegreeBound::RowProfiles => rows,
        };
        BoundSet::new(spec.states() as u64, rows, game.denominator(), q)
    }
}

/// The bounds with degree bound `|I|`.
pub fn compute_bounds(n: u64, rows: u64, denominator: &BigUint) -> BoundSet {
    BoundSet::new(n, rows, denominator, rows)
}

/// `L = 2n bit(N²) + n bit(n) + r + 1`, an a-priori bound on the bit-size of
/// the integer entries of `W` during bisection at precision `r`.
pub fn entry_bit_bound(n: u64, denominator: &BigUint, r: u64) -> u64 {
    2 * n * (denominator * denominator).bits() + n * bit(n) + r + 1
}

/// Result of the bisection: `v ∈ [u 2^-r, (u+1) 2^-r]` in normalized units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxOutcome {
    pub u: BigInt,
    pub bits: u64,
    pub iterations: u64,
    pub peak_entry_bits: u64,
    pub entry_bit_bound: u64,
}

impl ApproxOutcome {
    pub fn lower(&self) -> Dyadic {
        Dyadic::new(self.u.clone(), self.bits)
    }

    pub fn upper(&self) -> Dyadic {
        Dyadic::new(&self.u + 1, self.bits)
    }

    /// Whether `v` lies in the closed interval widened by `slack` on each side.
    pub fn contains(&self, v: &Rational, slack: &Rational) -> bool {
        self.lower().to_rational() - slack <= *v && *v <= self.upper().to_rational() + slack
    }
}

/// Bisection on `z` using the sign of `val W^k_λ(z)`.
///
/// The game's `N` is first replaced by `lcm(N, den λ)` so that `λN` is an
/// integer; the entry bound in the outcome refers to that `N`.
pub fn approx_value(
    game: &NormalizedGame,
    lambda: &Rational,
    k: usize,
    r: u64,
    opts: &SolveOptions,
) -> Result<ApproxOutcome> {
    check_discount(lambda)?;
    let game = game.admit_discount(lambda);
    let pg = ParamGame::new(&game, lambda, k, opts.exec)?;
    bisect(&pg, r, entry_bit_bound(game.states() as u64, game.denominator(), r), opts)
}

pub(crate) fn bisect(pg: &ParamGame, r: u64, bound: u64, opts: &SolveOptions) -> Result<ApproxOutcome> {
    let mut lo = Dyadic::zero();
    let mut hi = Dyadic::from_integer(1);
    let step = Dyadic::unit(r);
    let mut iterations = 0u64;
    let mut peak = 0u64;
    while hi.sub(&lo) > step {
        let z = lo.midpoint(&hi);
        if z.exponent() > r {
            return Err(Error::BoundViolation(format!("midpoint {z} is finer than 2^-{r}")));
        }
        let (sign, bits) = pg.sign_at(&z.to_rational())?;
        peak = peak.max(bits);
        if opts.audit && bits > bound {
            return Err(Error::BoundViolation(format!("entry of {bits} bits exceeds the bound {bound}")));
        }
        if sign.is_ge() {
            lo = z.clone();
        }
        if sign.is_le() {
            hi = z;
        }
        iterations += 1;
        if iterations.is_multiple_of(256) {
            log::info!("bisection: {iterations}/{r} steps, entries up to {peak} bits");
        }
    }
    if iterations > r {
        return Err(Error::BoundViolation(format!("bisection took {iterations} > {r} steps")));
    }
    Ok(ApproxOutcome { u: lo.scaled_to(r), bits: r, iterations, peak_entry_bits: peak, entry_bit_bound: bound })
}

/// Exact value as an algebraic number.
#[derive(Clone, Debug)]
pub struct ExactOutcome {
    pub number: AlgebraicNumber,
    pub bounds: BoundSet,
    /// The bisection run; absent when the game is constant.
    pub approx: Option<ApproxOutcome>,
}

/// The constant value of a degenerate game, with a coarse isolating interval.
pub(crate) fn constant_number(c: &Rational) -> Result<AlgebraicNumber> {
    let poly = IntPolynomial::from_rational(c);
    let bits = 2 + c.denom().bits();
    Ok(isolate_root(&poly, &Dyadic::round_rational(c, bits), bits)?.coarsen())
}

/// Reconstructs `α` from `approx` and certifies that the root lies in
/// `[lo, hi]`.
pub(crate) fn reconstruct(
    approx: &Dyadic,
    window_bits: u64,
    lo: &Rational,
    hi: &Rational,
    bounds: &BoundSet,
) -> Result<AlgebraicNumber> {
    let poly = min_poly_from_approx(approx, bounds.degree, bounds.c)?;
    let number = isolate_root(&poly, approx, window_bits)?;
    let (a, b) = number.interval();
    let (a, b) = (a.to_rational().max(lo.clone()), b.to_rational().min(hi.clone()));
    if a > b || Sturm::new(&poly).count(&a, &b) != 1 {
        return Err(Error::BoundViolation(format!("{poly} has no root in the certified interval [{lo}, {hi}]")));
    }
    Ok(number.coarsen())
}

/// Exact `v^k_λ` for a game whose normalization is the identity.
///
/// The bounds are computed for `N = lcm(N, den λ)`.
pub fn exact_value(game: &NormalizedGame, lambda: &Rational, k: usize, opts: &SolveOptions) -> Result<ExactOutcome> {
    check_discount(lambda)?;
    game.game().check_state(k)?;
    let game = &game.admit_discount(lambda);
    let bounds = BoundSet::for_game(game, opts.degree);
    if let Some(c) = game.constant_value() {
        return Ok(ExactOutcome { number: constant_number(c)?, bounds, approx: None });
    }
    if !game.affine().is_identity() {
        return Err(Error::NotNormalized);
    }
    let approx = approx_value(game, lambda, k, bounds.r, opts)?;
    let number = reconstruct(
        &approx.lower(),
        bounds.r,
        &approx.lower().to_rational(),
        &approx.upper().to_rational(),
        &bounds,
    )?;
    Ok(ExactOutcome { number, bounds, approx: Some(approx) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{normalize, GameSpec};
    use crate::rational::{int, rat};
    use num_traits::{One, Zero};

    fn one_state(payoffs: &[&[i64]]) -> NormalizedGame {
        let p = payoffs.len();
        let q = payoffs[0].len();
        let pay = vec![payoffs.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()];
        normalize(&GameSpec::new(vec![p], vec![q], pay, vec![vec![vec![vec![int(1)]; q]; p]]).unwrap())
    }

    #[test]
    fn bounds_examples() {
        let b = compute_bounds(1, 1, &BigUint::one());
        assert_eq!((b.c, b.s, b.r), (8, 24, 96));
        assert_eq!(compute_bounds(4, 4, &BigUint::one()).c, 2048);
        let c1 = compute_bounds(2, 2, &BigUint::from(3u32)).c;
        let c2 = compute_bounds(2, 2, &BigUint::from(6u32)).c;
        assert!(c2 >= c1);
    }

    #[test]
    fn bisection_traces() {
        let opts = SolveOptions::default();
        let pennies = one_state(&[&[1, 0], &[0, 1]]);
        let out = approx_value(&pennies, &rat(1, 2), 0, 3, &opts).unwrap();
        assert_eq!(out.u, BigInt::from(4));
        assert_eq!(out.iterations, 1);

        let unit = one_state(&[&[1]]);
        let out = approx_value(&unit, &rat(1, 3), 0, 2, &opts).unwrap();
        assert_eq!(out.u, BigInt::from(3));
        assert_eq!(out.iterations, 2);

        let out = approx_value(&pennies, &int(1), 0, 0, &opts).unwrap();
        assert_eq!((out.u, out.iterations), (BigInt::zero(), 0));
    }

    #[test]
    fn discount_denominator_is_absorbed() {
        let opts = SolveOptions::default();
        let pennies = one_state(&[&[1, 0], &[0, 1]]);
        let plain = approx_value(&pennies, &rat(1, 3), 0, 5, &opts).unwrap();
        let lifted = approx_value(&pennies.admit_discount(&rat(1, 3)), &rat(1, 3), 0, 5, &opts).unwrap();
        assert_eq!(plain, lifted);
        assert_eq!(plain.entry_bit_bound, entry_bit_bound(1, &BigUint::from(3u32), 5));
    }

    #[test]
    fn exact_examples() {
        let opts = SolveOptions::default();
        let pennies = one_state(&[&[1, 0], &[0, 1]]).admit_discount(&rat(1, 2));
        let out = exact_value(&pennies, &rat(1, 2), 0, &opts).unwrap();
        assert_eq!(out.number.poly().to_string(), "2z - 1");
        let (lo, hi) = out.number.interval();
        assert_eq!((lo.to_rational(), hi.to_rational()), (rat(1, 4), rat(3, 4)));

        let unit = one_state(&[&[1]]);
        let out = exact_value(&unit, &rat(1, 5), 0, &opts);
        assert_eq!(out.unwrap().number.poly().to_string(), "z - 1");

        let shifted = one_state(&[&[-1, 1]]);
        assert!(matches!(exact_value(&shifted, &int(1), 0, &opts), Err(Error::NotNormalized)));
    }
}
