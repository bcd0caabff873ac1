//! The limit value `lim_{λ→0} v^k_λ`.
//!
//! For `λ` at or below a threshold `λ_r`, the sign of `val W^k_λ(z)` on the
//! dyadic grid of step `2^-r` no longer depends on `λ`, so bisection at that
//! single discount factor brackets the limit. The threshold is a power of
//! two whose exponent depends only on the size of the game.

use num_bigint::BigUint;

use crate::algnum::AlgebraicNumber;
use crate::chain::check_discount;
use crate::discounted::{approx_value, constant_number, reconstruct, ApproxOutcome, BoundSet};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::game::{NormalizedGame, Player};
use crate::options::{SolveOptions, ThresholdMode};
use crate::rational::{bit, pow2_neg};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdParams {
    pub n: u64,
    pub rows: u64,
    pub cols: u64,
    pub denominator: BigUint,
    pub mode: ThresholdMode,
}

impl ThresholdParams {
    pub fn for_game(game: &NormalizedGame, mode: ThresholdMode) -> Self {
        let spec = game.game();
        ThresholdParams {
            n: spec.states() as u64,
            rows: spec.profile_count(Player::One) as u64,
            cols: spec.profile_count(Player::Two) as u64,
            denominator: game.denominator().clone(),
            mode,
        }
    }

    fn simple(&self, r: u64) -> u64 {
        10 * self.rows * self.rows * self.n * self.n * self.denominator.bits() * r
    }

    fn tight(&self, r: u64) -> u64 {
        let (i, n) = (self.rows, self.n);
        i * n * bit(n) + i * n * self.denominator.bits() + i * bit(i) + 2 * bit(i * n + 1) + r * n * i + 1
    }

    /// The exponent `e` with `λ_r = 2^-e`.
    pub fn exponent(&self, r: u64) -> u64 {
        match self.mode {
            ThresholdMode::Simple => self.simple(r),
            ThresholdMode::Tight => {
                let e = self.tight(r);
                assert!(r == 0 || e <= self.simple(r), "tight exponent {e} above the simple one");
                e
            }
        }
    }
}

/// `λ_r = 2^-e`, returned with its exponent.
pub fn lambda_threshold(p: &ThresholdParams, r: u64) -> (u64, Rational) {
    let e = p.exponent(r);
    (e, pow2_neg(e))
}

#[derive(Clone, Debug)]
pub struct LimitOutcome {
    /// Bisection at `λ = 2^-lambda_exponent`.
    pub approx: ApproxOutcome,
    pub lambda_exponent: u64,
    /// `lim v ∈ [lo, hi]` in normalized units.
    pub lo: Rational,
    pub hi: Rational,
}

fn run_at_threshold(game: &NormalizedGame, k: usize, r_threshold: u64, r_bits: u64, opts: &SolveOptions) -> Result<(ApproxOutcome, u64)> {
    let params = ThresholdParams::for_game(game, opts.threshold);
    let (e, lambda) = lambda_threshold(&params, r_threshold);
    check_discount(&lambda)?;
    log::info!("threshold discount 2^-{e}, bisection to {r_bits} bits");
    // N / λ is the grid that makes λ N' integral
    let lifted = game.with_denominator(game.denominator() << e as usize)?;
    Ok((approx_value(&lifted, &lambda, k, r_bits, opts)?, e))
}

/// Bisection at `λ_{r+1}` to precision `r + 1`:
/// `|lim v - u 2^{-(r+1)}| <= 2^-r`.
pub fn limit_approx_fast(game: &NormalizedGame, k: usize, r: u64, opts: &SolveOptions) -> Result<LimitOutcome> {
    game.game().check_state(k)?;
    let (approx, e) = run_at_threshold(game, k, r + 1, r + 1, opts)?;
    let center = approx.lower().to_rational();
    let w = pow2_neg(r);
    Ok(LimitOutcome { lo: &center - &w, hi: center + w, approx, lambda_exponent: e })
}

/// Bisection at `λ_r` to precision `r`: `lim v ∈ [u 2^-r, (u+1) 2^-r]`.
pub fn limit_approx_direct(game: &NormalizedGame, k: usize, r: u64, opts: &SolveOptions) -> Result<LimitOutcome> {
    game.game().check_state(k)?;
    let (approx, e) = run_at_threshold(game, k, r, r, opts)?;
    Ok(LimitOutcome {
        lo: approx.lower().to_rational(),
        hi: approx.upper().to_rational(),
        approx,
        lambda_exponent: e,
    })
}

#[derive(Clone, Debug)]
pub struct LimitExactOutcome {
    pub number: AlgebraicNumber,
    pub bounds: BoundSet,
    pub limit: Option<LimitOutcome>,
}

/// Exact limit value for a game whose normalization is the identity.
///
/// The fast approximation runs at precision `r + 1` for the `r` of
/// [`BoundSet`], so its output `u` lives on the grid `2^{-(r+2)}` and lies
/// within `2^{-(r+1)}` of the limit.
pub fn limit_exact(game: &NormalizedGame, k: usize, opts: &SolveOptions) -> Result<LimitExactOutcome> {
    game.game().check_state(k)?;
    let bounds = BoundSet::for_game(game, opts.degree);
    if let Some(c) = game.constant_value() {
        return Ok(LimitExactOutcome { number: constant_number(c)?, bounds, limit: None });
    }
    if !game.affine().is_identity() {
        return Err(Error::NotNormalized);
    }
    let out = limit_approx_fast(game, k, bounds.r + 1, opts)?;
    let approx: Dyadic = out.approx.lower();
    let number = reconstruct(&approx, bounds.r + 1, &out.lo, &out.hi, &bounds)?;
    Ok(LimitExactOutcome { number, bounds, limit: Some(out) })
}
