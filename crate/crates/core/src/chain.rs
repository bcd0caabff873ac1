//! Evaluation of a pure stationary profile pair.
//!
//! Fixing one action per state for both players turns the game into a Markov
//! chain with rewards. Its discounted payoff solves
//! `(Id - (1-λ)Q) γ = λ g`, and Cramer's rule writes each component as a
//! quotient of two determinants, `γ^k = d^k / d^0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{GameSpec, Player, PureProfile};
use crate::rational::lcm_denominators;
use crate::Rational;

/// Transition matrix and reward vector induced by a profile pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileChain {
    pub q: Vec<Vec<Rational>>,
    pub g: Vec<Rational>,
}

impl ProfileChain {
    pub fn states(&self) -> usize {
        self.g.len()
    }

    /// `Id - (1-λ)Q`.
    fn system(&self, lambda: &Rational) -> Vec<Vec<Rational>> {
        let keep = Rational::one() - lambda;
        let n = self.states();
        (0..n)
            .map(|l| {
                (0..n)
                    .map(|m| {
                        let id = if l == m { Rational::one() } else { Rational::zero() };
                        id - &keep * &self.q[l][m]
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn build_chain(game: &GameSpec, i: &PureProfile, j: &PureProfile) -> Result<ProfileChain> {
    let n = game.states();
    for (p, player) in [(i, Player::One), (j, Player::Two)] {
        PureProfile::new(game, player, p.choices().to_vec())?;
    }
    let q = (0..n).map(|l| game.transition(l, i.choice(l), j.choice(l)).to_vec()).collect();
    let g = (0..n).map(|l| game.payoff(l, i.choice(l), j.choice(l)).clone()).collect();
    Ok(ProfileChain { q, g })
}

pub(crate) fn check_discount(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() && *lambda <= Rational::one() {
        Ok(())
    } else {
        Err(Error::DiscountOutOfRange(lambda.clone()))
    }
}

/// Fraction-free forward elimination of an integer matrix, in place.
///
/// Brings the leading `n` columns to upper-triangular form, where `n` is the
/// row count; extra columns are carried along. Returns the sign of the row
/// permutation, or `None` when the leading block is singular.
fn eliminate(m: &mut [Vec<BigInt>]) -> Option<i8> {
    let n = m.len();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let row_k = &top[k];
        for row in rest.iter_mut() {
            for c in k + 1..row.len() {
                let v = &row[c] * &row_k[k] - &row[k] * &row_k[c];
                row[c] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Some(sign)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub(crate) fn det_integer(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    match eliminate(&mut m) {
        None => BigInt::zero(),
        Some(sign) => {
            let d = m[n - 1][n - 1].clone();
            if sign < 0 {
                -d
            } else {
                d
            }
        }
    }
}

fn clear_denominators(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let d = BigInt::from(lcm_denominators(m.iter().flatten()));
    let scaled = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&d / x.denom())).collect())
        .collect();
    (scaled, d)
}

/// Exact determinant of a square rational matrix.
///
/// Entries are brought to a common denominator `D`, the integer matrix goes
/// through Bareiss elimination, and the result is divided by `D^n`.
pub fn bareiss_det(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) {
        return Err(Error::MalformedMatrix);
    }
    let (scaled, d) = clear_denominators(m);
    Ok(Rational::new(det_integer(scaled), num_traits::pow(d, n)))
}

/// `det(Id - (1-λ)Q)`.
pub fn d0(chain: &ProfileChain, lambda: &Rational) -> Result<Rational> {
    check_discount(lambda)?;
    bareiss_det(&chain.system(lambda))
}

/// `det(Id - (1-λ)Q)` with column `k` replaced by `λg`.
pub fn dk(chain: &ProfileChain, lambda: &Rational, k: usize) -> Result<Rational> {
    check_discount(lambda)?;
    if k >= chain.states() {
        return Err(Error::StateOutOfRange { state: k + 1, states: chain.states() });
    }
    let mut m = chain.system(lambda);
    for (row, g) in m.iter_mut().zip(&chain.g) {
        row[k] = lambda * g;
    }
    bareiss_det(&m)
}

/// Discounted payoff from state `k`, as the Cramer quotient `d^k / d^0`.
pub fn gamma(chain: &ProfileChain, lambda: &Rational, k: usize) -> Result<Rational> {
    Ok(dk(chain, lambda, k)? / d0(chain, lambda)?)
}

/// Solves `(Id - (1-λ)Q) x = λg` directly: fraction-free forward elimination
/// followed by back substitution.
pub fn solve_linear_gamma(chain: &ProfileChain, lambda: &Rational) -> Result<Vec<Rational>> {
    check_discount(lambda)?;
    let n = chain.states();
    let mut aug = chain.system(lambda);
    for (row, g) in aug.iter_mut().zip(&chain.g) {
        row.push(lambda * g);
    }
    let (mut m, _) = clear_denominators(&aug);
    eliminate(&mut m).ok_or(Error::DivisionByZero)?;
    let mut x = vec![Rational::zero(); n];
    for l in (0..n).rev() {
        let mut acc = Rational::from_integer(m[l][n].clone());
        for c in l + 1..n {
            acc -= &x[c] * &m[l][c];
        }
        x[l] = acc / &m[l][l];
    }
    Ok(x)
}
