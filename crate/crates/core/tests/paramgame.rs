mod common;

use num_traits::One;
use rand::Rng;

use common::{corpus, r, random_game, rng};
use proptest::prelude::*;
use stochval::chain::{build_chain, d0, dk};
use stochval::discounted::exact_value;
use stochval::paramgame::{build_w, solve_w, val_w};
use stochval::{enumerate_profiles, normalize, Execution, ParamGame, Player, Rational, SolveOptions};

/// The four-state example's state-1 matrix with the `(3,3)` entry worked out
/// from its chain: profile `(2,2)` against `(2,2)` moves from state 1 to the
/// absorbing payoff-1 state, so `d^1 = λ³(1-λ)` and `d^0 = λ³`.
fn corrected_matrix(l: &Rational, z: &Rational) -> Vec<Vec<Rational>> {
    let one = Rational::one();
    let l2 = l * l;
    let a = l * (&one - z);
    let b = -(l * (&one - l)) - l * z;
    let c = -((l * r(2, 1) - &l2) * z);
    let d = -((&one - l) * (&one - l)) - z;
    let e = &one - l - z;
    let m = vec![
        vec![&l2 * (&one - z), a.clone(), b.clone(), c.clone()],
        vec![a.clone(), a.clone(), c.clone(), d.clone()],
        vec![b, c.clone(), l * (&one - l - z), e.clone()],
        vec![c, d, e.clone(), e],
    ];
    m.into_iter().map(|row| row.into_iter().map(|v| &l2 * v).collect()).collect()
}

#[test]
fn four_state_example_matches_the_worked_matrix() {
    let ng = normalize(&corpus("kohlberg"));
    let aff = ng.affine().clone();
    assert_eq!((aff.scale.clone(), aff.offset.clone()), (r(1, 2), r(1, 2)));
    for (l, z) in [(r(1, 2), r(1, 3)), (r(1, 5), r(-2, 7)), (r(3, 4), r(5, 2)), (r(1, 9), r(0, 1))] {
        let w = build_w(&ng, &l, &aff.apply(&z), 0).unwrap();
        let expected = corrected_matrix(&l, &z);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(w.matrix.entry(i, j) / &aff.scale, expected[i][j], "entry ({}, {})", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn entries_agree_with_profile_evaluation() {
    let mut g = rng(21);
    for _ in 0..20 {
        let den = g.gen_range(1..=6);
        let ng = normalize(&random_game(&mut g, 3, 2, den));
        let lambda = r(1, 3);
        let z = r(2, 5);
        let w = build_w(&ng, &lambda, &z, 0).unwrap();
        let rows = enumerate_profiles(ng.game(), Player::One);
        let cols = enumerate_profiles(ng.game(), Player::Two);
        for (i, p) in rows.iter().enumerate() {
            for (j, q) in cols.iter().enumerate() {
                let chain = build_chain(ng.game(), p, q).unwrap();
                let want = dk(&chain, &lambda, 0).unwrap() - &z * d0(&chain, &lambda).unwrap();
                assert_eq!(w.matrix.entry(i, j), &want);
            }
        }
    }
}

#[test]
fn value_vanishes_at_the_discounted_value() {
    let ng = normalize(&corpus("golden"));
    let half = r(1, 2);
    let v = exact_value(&ng, &half, 0, &SolveOptions::default()).unwrap();
    assert_eq!(v.number.poly().to_string(), "z^2 + z - 1");
    // an irrational root: val W changes sign across the isolating interval
    let (lo, hi) = v.number.interval();
    assert!(val_w(&ng, &half, &lo.to_rational(), 0).unwrap() > r(0, 1));
    assert!(val_w(&ng, &half, &hi.to_rational(), 0).unwrap() < r(0, 1));
    let pennies = normalize(&corpus("pennies"));
    assert_eq!(val_w(&pennies, &r(1, 4), &half, 0).unwrap(), r(0, 1));
    let w = build_w(&pennies, &r(1, 4), &half, 0).unwrap();
    assert!(solve_w(&w).unwrap().certifies(&w.matrix));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn val_w_is_strictly_decreasing(seed in any::<u64>(), lam in 1i64..=8) {
        let mut g = rng(seed);
        let den = g.gen_range(1..=6);
        let ng = normalize(&random_game(&mut g, 2, 3, den));
        let pg = ParamGame::new(&ng, &r(lam, 8), 0, Execution::Parallel).unwrap();
        let vals: Vec<Rational> = (0..=8).map(|i| pg.value_at(&r(i, 8)).unwrap()).collect();
        prop_assert!(vals.windows(2).all(|w| w[0] > w[1]));
        prop_assert!(vals[0] >= r(0, 1) && vals[8] <= r(0, 1));
    }

    #[test]
    fn execution_modes_agree(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ng = normalize(&random_game(&mut g, 3, 2, 4));
        let z = r(3, 7);
        let s = ParamGame::new(&ng, &r(1, 2), 0, Execution::Sequential).unwrap();
        let p = ParamGame::new(&ng, &r(1, 2), 0, Execution::Parallel).unwrap();
        prop_assert_eq!(s.scaled_matrix(&z), p.scaled_matrix(&z));
    }
}
