use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use stochval::discounted::approx_value;
use stochval::oracle::shapley_step;
use stochval::{normalize, Execution, GameSpec, NormalizedGame, ParamGame, Rational, SolveOptions};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Three states with three actions per player: 27 × 27 profile pairs.
/// Payoffs and moves follow a fixed arithmetic pattern so runs are
/// comparable.
fn dense_game() -> NormalizedGame {
    let n = 3;
    let a = 3;
    let payoff = (0..n)
        .map(|l| (0..a).map(|i| (0..a).map(|j| r(((l + 2 * i + 3 * j) % 7) as i64, 6)).collect()).collect())
        .collect();
    let transition = (0..n)
        .map(|l| {
            (0..a)
                .map(|i| {
                    (0..a)
                        .map(|j| {
                            let mut row = vec![r(0, 1); n];
                            row[(l + i) % n] += r(1, 2);
                            row[(l + j + 1) % n] += r(1, 3);
                            row[(i + j) % n] += r(1, 6);
                            row
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    normalize(&GameSpec::new(vec![a; n], vec![a; n], payoff, transition).expect("valid"))
}

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn bench_param_game(c: &mut Criterion) {
    let game = dense_game();
    let lambda = r(1, 7);
    let mut group = c.benchmark_group("param_game_build");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ParamGame::new(black_box(&game), &lambda, 0, exec).expect("valid"))
        });
    }
    group.finish();
}

fn bench_approx(c: &mut Criterion) {
    let game = dense_game();
    let lambda = r(1, 7);
    let mut group = c.benchmark_group("approx_value_r16");
    group.sample_size(10);
    for (name, exec) in modes() {
        let opts = SolveOptions { exec, ..SolveOptions::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| approx_value(black_box(&game), &lambda, 0, 16, &opts).expect("valid"))
        });
    }
    group.finish();
}

fn bench_shapley(c: &mut Criterion) {
    let game = dense_game();
    let lambda = r(1, 7);
    let u = vec![r(1, 3), r(1, 2), r(2, 3)];
    let mut group = c.benchmark_group("shapley_step");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| shapley_step(black_box(game.game()), &lambda, &u, exec).expect("valid"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_param_game, bench_approx, bench_shapley);
criterion_main!(benches);
