//! Exact values of finite two-player zero-sum stochastic games.
//!
//! The discounted value `v^k_λ` from state `k` is the unique root in `z` of
//! `val W^k_λ(z)`, the value of a matrix game indexed by pure stationary
//! profiles. Bisection on the sign of that value yields certified dyadic
//! brackets ([`discounted::approx_value`]); lattice reduction turns a fine
//! enough bracket into the minimal polynomial ([`discounted::exact_value`]).
//! The same machinery at a tiny discount factor brackets and reconstructs the
//! limit value ([`limit`]).
//!
//! All arithmetic is exact. Independent reference implementations live in
//! [`oracle`].

pub mod algnum;
pub mod chain;
pub mod corpus;
pub mod discounted;
pub mod dyadic;
pub mod error;
pub mod exec;
pub mod format;
pub mod game;
pub mod limit;
pub mod matgame;
pub mod options;
pub mod oracle;
pub mod paramgame;
pub mod rational;
mod simplex;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use exec::Execution;
pub use game::{enumerate_profiles, normalize, Affine, GameSpec, NormalizedGame, Player, PureProfile};
pub use matgame::{GameSolution, MatrixGame};
pub use options::{DegreeBound, SolveOptions, ThresholdMode};
pub use paramgame::{ParamGame, WMatrix};
pub use rational::Rational;
