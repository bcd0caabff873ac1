//! Reference computations that share no code path with the solvers: the
//! Shapley operator, value iteration on it, and brute-force minimax for tiny
//! matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chain::{bareiss_det, check_discount};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::exec::{try_map_indexed, Execution};
use crate::game::GameSpec;
use crate::matgame::{cofactor_sum, lp_value, subsets, GameSolution, MatrixGame};
use crate::rational::ceil_log2;
use crate::Rational;

/// The auxiliary matrix game `λ g(ℓ,i,j) + (1-λ) Σ q(ℓ'|ℓ,i,j) u(ℓ')`.
pub fn auxiliary_game(game: &GameSpec, lambda: &Rational, u: &[Rational], state: usize) -> Result<MatrixGame> {
    let rest = Rational::one() - lambda;
    let payoff = &game.payoffs()[state];
    let entries = payoff
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, g)| {
                    let next: Rational = game.transition(state, i, j).iter().zip(u).map(|(q, v)| q * v).sum();
                    lambda * g + &rest * next
                })
                .collect()
        })
        .collect();
    MatrixGame::new(entries)
}

/// One application of the Shapley operator `Φ_λ`.
pub fn shapley_step(game: &GameSpec, lambda: &Rational, u: &[Rational], exec: Execution) -> Result<Vec<Rational>> {
    check_discount(lambda)?;
    if u.len() != game.states() {
        return Err(Error::InvalidProfile(format!("expected {} values, got {}", game.states(), u.len())));
    }
    try_map_indexed(exec, game.states(), |l| Ok(lp_value(&auxiliary_game(game, lambda, u, l)?)?.value))
}

fn sup_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or_else(Rational::zero)
}

/// Output of [`value_iteration`]: `|values - v_λ|_∞ <= error_bound <= ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationOutcome {
    pub values: Vec<Rational>,
    pub error_bound: Rational,
    pub iterations: u64,
}

/// Iterates `Φ_λ` from zero until the certified distance to `v_λ` is at
/// most `eps`.
///
/// Every iterate is rounded to the dyadic grid of step `2^-p` with
/// `2^{-p-1} <= ελ²/16`, which keeps the numbers short. With rounding error
/// `δ` and step size `d = |u_{t+1} - u_t|`, the contraction gives
/// `|u_{t+1} - v_λ| <= (1-λ)(d + δ)/λ + δ`, and iteration stops once this is
/// at most `eps`.
pub fn value_iteration(game: &GameSpec, lambda: &Rational, eps: &Rational, exec: Execution) -> Result<IterationOutcome> {
    check_discount(lambda)?;
    if !eps.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let n = game.states();
    let zero = vec![Rational::zero(); n];
    if lambda.is_one() {
        let values = shapley_step(game, lambda, &zero, exec)?;
        return Ok(IterationOutcome { values, error_bound: Rational::zero(), iterations: 1 });
    }

    let target = eps * lambda * lambda / Rational::from_integer(16.into());
    let inv_target = (target.denom() / target.numer()).to_biguint().expect("positive") + 1u32;
    let p = ceil_log2(&inv_target);
    let delta = Rational::new(BigInt::one(), BigInt::one() << (p + 1) as usize);
    let inv_eps = (eps.denom() / eps.numer()).to_biguint().expect("positive") + 1u32;
    let cap_num = BigInt::from(60 + inv_eps.bits()) * lambda.denom();
    let cap: u64 = (cap_num / lambda.numer() + 1u32).try_into().unwrap_or(u64::MAX);
    let rest = Rational::one() - lambda;

    let mut u = zero;
    for t in 1..=cap {
        let next: Vec<Rational> = shapley_step(game, lambda, &u, exec)?
            .iter()
            .map(|x| Dyadic::round_rational(x, p).to_rational())
            .collect();
        let d = sup_distance(&next, &u);
        let error_bound = &rest * (d + &delta) / lambda + &delta;
        u = next;
        if error_bound <= *eps {
            return Ok(IterationOutcome { values: u, error_bound, iterations: t });
        }
        if t.is_multiple_of(4096) {
            log::debug!("value iteration: {t} steps, bound {error_bound}");
        }
    }
    Err(Error::IterationCap(cap))
}

/// Transposed adjugate pieces of a square matrix: `(1ᵀ adj A, adj A 1)`.
fn adjugate_sums(a: &[Vec<Rational>]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let m = a.len();
    if m == 1 {
        return Ok((vec![Rational::one()], vec![Rational::one()]));
    }
    // adj(A)[j][i] = (-1)^{i+j} det(A without row i, column j)
    let mut adj = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let minor: Vec<Vec<Rational>> = (0..m)
                .filter(|&r| r != i)
                .map(|r| (0..m).filter(|&c| c != j).map(|c| a[r][c].clone()).collect())
                .collect();
            let d = bareiss_det(&minor)?;
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    let col_sums = (0..m).map(|c| adj.iter().map(|row| &row[c]).sum()).collect();
    let row_sums = adj.iter().map(|row| row.iter().sum()).collect();
    Ok((col_sums, row_sums))
}

/// Largest matrix side accepted by [`brute_minimax`].
pub const BRUTE_MAX_DIM: usize = 3;

/// Value and optimal strategies by enumerating square submatrices.
///
/// Each square submatrix `A` with `S = 1ᵀ adj(A) 1 ≠ 0` proposes the
/// strategies `1ᵀ adj(A) / S` and `adj(A) 1 / S` with value `det A / S`. The
/// first proposal that passes the exact duality check is returned; one always
/// exists because some extreme optimal pair has this form.
pub fn brute_minimax_solution(m: &MatrixGame) -> Result<GameSolution> {
    if m.rows() > BRUTE_MAX_DIM || m.cols() > BRUTE_MAX_DIM {
        return Err(Error::DimensionTooLarge { rows: m.rows(), cols: m.cols(), max: BRUTE_MAX_DIM });
    }
    for size in 1..=m.rows().min(m.cols()) {
        for rows in subsets(m.rows(), size) {
            for cols in subsets(m.cols(), size) {
                let sub = m.submatrix(&rows, &cols);
                let s = cofactor_sum(&sub)?;
                if s.is_zero() {
                    continue;
                }
                let (xs, ys) = adjugate_sums(&sub)?;
                let mut x = vec![Rational::zero(); m.rows()];
                for (&r, v) in rows.iter().zip(xs) {
                    x[r] = v / &s;
                }
                let mut y = vec![Rational::zero(); m.cols()];
                for (&c, v) in cols.iter().zip(ys) {
                    y[c] = v / &s;
                }
                let candidate = GameSolution { value: bareiss_det(&sub)? / &s, x, y };
                if candidate.certifies(m) {
                    return Ok(candidate);
                }
            }
        }
    }
    Err(Error::BoundViolation("no square submatrix yields a certified solution".into()))
}

/// The value of a matrix game with at most three rows and columns.
pub fn brute_minimax(m: &MatrixGame) -> Result<Rational> {
    Ok(brute_minimax_solution(m)?.value)
}
