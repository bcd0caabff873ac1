//! The parameterized matrix game `W_λ^k(z)`.
//!
//! Rows and columns are indexed by pure stationary profiles; entry `[i, j]`
//! is `d^k_λ(i, j) - z · d^0_λ(i, j)`. The value of `W` is strictly
//! decreasing in `z` and vanishes exactly at `z = v^k_λ`, which is what the
//! solvers bisect on.
//!
//! For a fixed `(λ, k)` the determinants do not depend on `z`, so
//! [`ParamGame`] computes them once (in parallel across entries) and keeps
//! them as integers. Re-evaluating at a new `z` then costs one multiply and
//! one subtraction per entry plus the linear program.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::chain::{check_discount, det_integer};
use crate::error::Result;
use crate::exec::{map_indexed, Execution};
use crate::game::{enumerate_profiles, GameSpec, NormalizedGame, Player, PureProfile};
use crate::matgame::{lp_value, GameSolution, MatrixGame};
use crate::simplex;
use crate::Rational;

/// `W_λ^k(z)` at one rational point, with its profile labels.
#[derive(Clone, Debug)]
pub struct WMatrix {
    pub matrix: MatrixGame,
    pub lambda: Rational,
    pub z: Rational,
    /// 0-based state.
    pub state: usize,
    pub rows: Vec<PureProfile>,
    pub cols: Vec<PureProfile>,
}

/// Cached determinants `d^0`, `d^k` for every profile pair at fixed `(λ, k)`.
///
/// With `M = lcm(N, den λ)` every entry of `M²(Id - (1-λ)Q)` and of `M²λg`
/// is an integer, so `M^{2n} d^0` and `M^{2n} d^k` are integers. The cache
/// holds them divided by their common content `c`, so the stored integers
/// are `d · scale` with `scale = M^{2n} / c`. At tiny `λ` the content is a
/// large power of two and dropping it shortens every later computation.
#[derive(Clone, Debug)]
pub struct ParamGame {
    lambda: Rational,
    state: usize,
    rows: Vec<PureProfile>,
    cols: Vec<PureProfile>,
    d0: Vec<Vec<BigInt>>,
    dk: Vec<Vec<BigInt>>,
    denominator: BigUint,
    scale: Rational,
    exec: Execution,
}

fn integer_system(
    game: &GameSpec,
    i: &PureProfile,
    j: &PureProfile,
    m: &BigInt,
    lambda_m: &BigInt,
    k: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = game.states();
    let m2 = m * m;
    let keep = m - lambda_m;
    let to_int = |x: &Rational| -> BigInt {
        let (q, rem) = (x.numer() * m).div_rem(x.denom());
        debug_assert!(rem.is_zero(), "entry is not a multiple of 1/M");
        q
    };
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for l in 0..n {
        let row = game.transition(l, i.choice(l), j.choice(l));
        a.push(
            (0..n)
                .map(|c| {
                    let v = -(&keep * to_int(&row[c]));
                    if c == l {
                        v + &m2
                    } else {
                        v
                    }
                })
                .collect(),
        );
    }
    let mut b = a.clone();
    for (l, r) in b.iter_mut().enumerate() {
        r[k] = lambda_m * to_int(game.payoff(l, i.choice(l), j.choice(l)));
    }
    (a, b)
}

impl ParamGame {
    pub fn new(game: &NormalizedGame, lambda: &Rational, k: usize, exec: Execution) -> Result<Self> {
        check_discount(lambda)?;
        let spec = game.game();
        spec.check_state(k)?;
        let denominator = game.denominator().lcm(lambda.denom().magnitude());
        let m = BigInt::from(denominator.clone());
        let lambda_m = (lambda * Rational::from_integer(m.clone())).to_integer();
        let rows = enumerate_profiles(spec, Player::One);
        let cols = enumerate_profiles(spec, Player::Two);
        let q = cols.len();
        let dets = map_indexed(exec, rows.len() * q, |idx| {
            let (a, b) = integer_system(spec, &rows[idx / q], &cols[idx % q], &m, &lambda_m, k);
            (det_integer(a), det_integer(b))
        });
        let mut d0 = vec![Vec::with_capacity(q); rows.len()];
        let mut dk = vec![Vec::with_capacity(q); rows.len()];
        for (idx, (a, b)) in dets.into_iter().enumerate() {
            debug_assert!(a.is_positive(), "d0 must be positive");
            d0[idx / q].push(a);
            dk[idx / q].push(b);
        }
        let content = d0.iter().chain(&dk).flatten().fold(BigInt::zero(), |g, v| g.gcd(v));
        for v in d0.iter_mut().chain(dk.iter_mut()).flatten() {
            *v /= &content;
        }
        let scale = Rational::new(num_traits::pow(&m * &m, spec.states()), content);
        Ok(ParamGame { lambda: lambda.clone(), state: k, rows, cols, d0, dk, denominator, scale, exec })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn rows(&self) -> &[PureProfile] {
        &self.rows
    }

    pub fn cols(&self) -> &[PureProfile] {
        &self.cols
    }

    /// `M = lcm(N, den λ)`, the grid the cached integers live on.
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Cached integers are the determinants times this factor.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn d0(&self, i: usize, j: usize) -> Rational {
        Rational::from_integer(self.d0[i][j].clone()) / &self.scale
    }

    pub fn dk(&self, i: usize, j: usize) -> Rational {
        Rational::from_integer(self.dk[i][j].clone()) / &self.scale
    }

    /// `den(z) · scale · W(z)`, an integer matrix with the same value sign.
    pub fn scaled_matrix(&self, z: &Rational) -> Vec<Vec<BigInt>> {
        let (a, b) = (z.numer(), z.denom());
        let q = self.cols.len();
        let flat = map_indexed(self.exec, self.rows.len() * q, |idx| {
            let (i, j) = (idx / q, idx % q);
            b * &self.dk[i][j] - a * &self.d0[i][j]
        });
        let mut it = flat.into_iter();
        (0..self.rows.len()).map(|_| it.by_ref().take(q).collect()).collect()
    }

    /// Exact `W(z)` with labels.
    pub fn w_matrix(&self, z: &Rational) -> WMatrix {
        let denom = &self.scale * Rational::from_integer(z.denom().clone());
        let entries = self
            .scaled_matrix(z)
            .into_iter()
            .map(|row| row.into_iter().map(|v| Rational::from_integer(v) / &denom).collect())
            .collect();
        WMatrix {
            matrix: MatrixGame::new(entries).expect("profile sets are non-empty"),
            lambda: self.lambda.clone(),
            z: z.clone(),
            state: self.state,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
        }
    }

    /// Exact `val W(z)`.
    pub fn value_at(&self, z: &Rational) -> Result<Rational> {
        let sol = simplex::solve(&self.scaled_matrix(z))?;
        Ok(sol.value / (&self.scale * Rational::from_integer(z.denom().clone())))
    }

    /// Sign of `val W(z)` together with the largest bit-size among the
    /// integer entries that were fed to the linear program.
    pub fn sign_at(&self, z: &Rational) -> Result<(Ordering, u64)> {
        let m = self.scaled_matrix(z);
        let peak = m.iter().flatten().map(|v| v.bits()).max().unwrap_or(0);
        Ok((simplex::value_sign(&m)?, peak))
    }
}

pub fn build_w(game: &NormalizedGame, lambda: &Rational, z: &Rational, k: usize) -> Result<WMatrix> {
    Ok(ParamGame::new(game, lambda, k, Execution::default())?.w_matrix(z))
}

pub fn val_w(game: &NormalizedGame, lambda: &Rational, z: &Rational, k: usize) -> Result<Rational> {
    ParamGame::new(game, lambda, k, Execution::default())?.value_at(z)
}

/// Solves `W(z)` and returns value and optimal strategies in true units.
pub fn solve_w(w: &WMatrix) -> Result<GameSolution> {
    lp_value(&w.matrix)
}
