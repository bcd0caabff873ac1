mod common;

use common::{corpus, r, random_game, rng};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use stochval::chain::{build_chain, gamma};
use stochval::oracle::{brute_minimax, shapley_step, value_iteration};
use stochval::rational::pow2_neg;
use stochval::{enumerate_profiles, Error, Execution, GameSpec, Player, Rational};

fn sup(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn shapley_operator_contracts(seed in any::<u64>(), lam in 1i64..=9) {
        let mut g = rng(seed);
        let game = random_game(&mut g, 3, 3, 6);
        let lambda = r(lam, 10);
        let n = game.states();
        let u: Vec<Rational> = (0..n).map(|_| r(g.gen_range(-10..=10), 7)).collect();
        let v: Vec<Rational> = (0..n).map(|_| r(g.gen_range(-10..=10), 5)).collect();
        let fu = shapley_step(&game, &lambda, &u, Execution::Parallel).unwrap();
        let fv = shapley_step(&game, &lambda, &v, Execution::Sequential).unwrap();
        prop_assert!(sup(&fu, &fv) <= (Rational::from_integer(1.into()) - &lambda) * sup(&u, &v));
    }

    #[test]
    fn fixed_point_residual(seed in any::<u64>(), lam in 1i64..=4) {
        let mut g = rng(seed);
        let game = random_game(&mut g, 3, 2, 4);
        let lambda = r(lam, 5);
        let eps = pow2_neg(20);
        let out = value_iteration(&game, &lambda, &eps, Execution::Parallel).unwrap();
        let next = shapley_step(&game, &lambda, &out.values, Execution::Parallel).unwrap();
        prop_assert!(sup(&next, &out.values) <= &eps * Rational::from_integer(2.into()));
    }
}

fn pure_game(seed: u64) -> GameSpec {
    let mut g = rng(seed);
    loop {
        let game = random_game(&mut g, 3, 1, 5);
        if game.actions(Player::One).iter().all(|&a| a == 1) && game.actions(Player::Two).iter().all(|&a| a == 1) {
            return game;
        }
    }
}

#[test]
fn pure_games_match_profile_evaluation() {
    for seed in 0..5 {
        let game = pure_game(seed);
        let lambda = r(1, 3);
        let eps = pow2_neg(60);
        let out = value_iteration(&game, &lambda, &eps, Execution::Sequential).unwrap();
        let p = &enumerate_profiles(&game, Player::One)[0];
        let q = &enumerate_profiles(&game, Player::Two)[0];
        let chain = build_chain(&game, p, q).unwrap();
        for k in 0..game.states() {
            assert!((gamma(&chain, &lambda, k).unwrap() - &out.values[k]).abs() <= eps);
        }
    }
}

#[test]
fn constant_game_is_a_fixed_point() {
    let game = common::one_state(vec![vec![r(2, 7), r(2, 7)], vec![r(2, 7), r(2, 7)]]);
    let c = vec![r(2, 7)];
    assert_eq!(shapley_step(&game, &r(1, 9), &c, Execution::Sequential).unwrap(), c);
    let once = value_iteration(&game, &r(1, 1), &pow2_neg(3), Execution::Sequential).unwrap();
    assert_eq!(once.values, c);
}

#[test]
fn big_match_discounted_value_is_one_half() {
    let out = value_iteration(&corpus("bigmatch"), &r(1, 4), &pow2_neg(30), Execution::Parallel).unwrap();
    assert!((&out.values[0] - r(1, 2)).abs() <= pow2_neg(30));
    assert!(out.values[2].is_zero());
}

#[test]
fn errors() {
    let game = corpus("pennies");
    assert!(matches!(value_iteration(&game, &r(1, 2), &r(-1, 2), Execution::Sequential), Err(Error::NonPositiveTolerance)));
    assert!(matches!(value_iteration(&game, &r(3, 2), &r(1, 2), Execution::Sequential), Err(Error::DiscountOutOfRange(_))));
    let m = stochval::MatrixGame::new(vec![vec![r(0, 1); 4]; 4]).unwrap();
    assert!(matches!(brute_minimax(&m), Err(Error::DimensionTooLarge { .. })));
}
