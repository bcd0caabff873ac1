#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stochval::{GameSpec, MatrixGame, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A probability vector of length `n` whose entries are multiples of `1/den`.
fn distribution(rng: &mut ChaCha8Rng, n: usize, den: i64) -> Vec<Rational> {
    let mut counts = vec![0i64; n];
    for _ in 0..den {
        counts[rng.gen_range(0..n)] += 1;
    }
    if rng.gen_bool(0.3) {
        // concentrate on one state now and then
        counts = vec![0; n];
        counts[rng.gen_range(0..n)] = den;
    }
    counts.into_iter().map(|c| r(c, den)).collect()
}

/// A random game in which every payoff and probability is a multiple of
/// `1/den` in `[0, 1]`.
pub fn random_game(rng: &mut ChaCha8Rng, max_states: usize, max_actions: usize, den: i64) -> GameSpec {
    let n = rng.gen_range(1..=max_states);
    let a1: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_actions)).collect();
    let a2: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_actions)).collect();
    let payoff = (0..n)
        .map(|l| (0..a1[l]).map(|_| (0..a2[l]).map(|_| r(rng.gen_range(0..=den), den)).collect()).collect())
        .collect();
    let transition = (0..n)
        .map(|l| (0..a1[l]).map(|_| (0..a2[l]).map(|_| distribution(rng, n, den)).collect()).collect())
        .collect();
    GameSpec::new(a1, a2, payoff, transition).expect("generated game is valid")
}

/// One-state game with the given payoff matrix.
pub fn one_state(m: Vec<Vec<Rational>>) -> GameSpec {
    let (p, q) = (m.len(), m[0].len());
    GameSpec::new(vec![p], vec![q], vec![m], vec![vec![vec![vec![r(1, 1)]; q]; p]]).expect("valid")
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, lo: i64, hi: i64, den: i64) -> MatrixGame {
    let p = rng.gen_range(1..=max_dim);
    let q = rng.gen_range(1..=max_dim);
    MatrixGame::new((0..p).map(|_| (0..q).map(|_| r(rng.gen_range(lo..=hi), den)).collect()).collect())
        .expect("non-empty")
}

pub fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items.choose(rng).expect("non-empty").clone()
}

pub fn corpus(name: &str) -> GameSpec {
    stochval::corpus::get(name).expect("bundled").expect("parses")
}
