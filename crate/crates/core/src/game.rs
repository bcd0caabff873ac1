//! The stochastic game model, payoff normalization and pure stationary
//! profiles.
//!
//! States and actions are 0-based in the API and 1-based in every message a
//! user can see (files, diagnostics, `Display`).

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, lcm_denominators};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("game has no states")]
    NoStates,
    #[error("state {state}: player {player} has no actions")]
    NoActions { state: usize, player: u8 },
    #[error("{what}: expected {expected} entries, found {found}")]
    Ragged { what: String, expected: usize, found: usize },
    #[error("state {state}, actions ({i}, {j}): negative transition probability {value}")]
    NegativeProbability { state: usize, i: usize, j: usize, value: String },
    #[error("state {state}, actions ({i}, {j}): row sum ≠ 1 (sum is {sum})")]
    RowSum { state: usize, i: usize, j: usize, sum: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

/// A finite two-player zero-sum stochastic game.
///
/// `payoff[l][i][j]` is the stage reward to player 1 and
/// `transition[l][i][j][l2]` the probability of moving to `l2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    actions1: Vec<usize>,
    actions2: Vec<usize>,
    payoff: Vec<Vec<Vec<Rational>>>,
    transition: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl GameSpec {
    pub fn new(
        actions1: Vec<usize>,
        actions2: Vec<usize>,
        payoff: Vec<Vec<Vec<Rational>>>,
        transition: Vec<Vec<Vec<Vec<Rational>>>>,
    ) -> std::result::Result<Self, GameError> {
        let n = actions1.len();
        if n == 0 {
            return Err(GameError::NoStates);
        }
        let ragged = |what: String, expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(GameError::Ragged { what, expected, found })
            }
        };
        ragged("actions2".into(), n, actions2.len())?;
        ragged("payoff".into(), n, payoff.len())?;
        ragged("transition".into(), n, transition.len())?;
        for l in 0..n {
            let (p, q) = (actions1[l], actions2[l]);
            if p == 0 {
                return Err(GameError::NoActions { state: l + 1, player: 1 });
            }
            if q == 0 {
                return Err(GameError::NoActions { state: l + 1, player: 2 });
            }
            ragged(format!("payoff[{}]", l + 1), p, payoff[l].len())?;
            ragged(format!("transition[{}]", l + 1), p, transition[l].len())?;
            for i in 0..p {
                ragged(format!("payoff[{}][{}]", l + 1, i + 1), q, payoff[l][i].len())?;
                ragged(format!("transition[{}][{}]", l + 1, i + 1), q, transition[l][i].len())?;
                for j in 0..q {
                    let row = &transition[l][i][j];
                    ragged(format!("transition[{}][{}][{}]", l + 1, i + 1, j + 1), n, row.len())?;
                    if let Some(neg) = row.iter().find(|x| x.is_negative()) {
                        return Err(GameError::NegativeProbability {
                            state: l + 1,
                            i: i + 1,
                            j: j + 1,
                            value: format_rational(neg),
                        });
                    }
                    let sum: Rational = row.iter().sum();
                    if !sum.is_one() {
                        return Err(GameError::RowSum {
                            state: l + 1,
                            i: i + 1,
                            j: j + 1,
                            sum: format_rational(&sum),
                        });
                    }
                }
            }
        }
        Ok(GameSpec { actions1, actions2, payoff, transition })
    }

    pub fn states(&self) -> usize {
        self.actions1.len()
    }

    pub fn actions(&self, player: Player) -> &[usize] {
        match player {
            Player::One => &self.actions1,
            Player::Two => &self.actions2,
        }
    }

    pub fn payoff(&self, state: usize, i: usize, j: usize) -> &Rational {
        &self.payoff[state][i][j]
    }

    pub fn transition(&self, state: usize, i: usize, j: usize) -> &[Rational] {
        &self.transition[state][i][j]
    }

    pub fn payoffs(&self) -> &[Vec<Vec<Rational>>] {
        &self.payoff
    }

    pub fn transitions(&self) -> &[Vec<Vec<Vec<Rational>>>] {
        &self.transition
    }

    fn all_payoffs(&self) -> impl Iterator<Item = &Rational> {
        self.payoff.iter().flatten().flatten()
    }

    fn all_probabilities(&self) -> impl Iterator<Item = &Rational> {
        self.transition.iter().flatten().flatten().flatten()
    }

    /// `(C-, C+)`: the smallest and largest stage payoff.
    pub fn payoff_range(&self) -> (Rational, Rational) {
        let mut it = self.all_payoffs();
        let first = it.next().expect("validated game has a payoff").clone();
        it.fold((first.clone(), first), |(lo, hi), g| {
            (if *g < lo { g.clone() } else { lo }, if *g > hi { g.clone() } else { hi })
        })
    }

    /// Least common multiple of every payoff and probability denominator.
    pub fn denominator_lcm(&self) -> BigUint {
        lcm_denominators(self.all_payoffs().chain(self.all_probabilities()))
    }

    /// Number of pure stationary strategies `|I|` or `|J|`.
    pub fn profile_count(&self, player: Player) -> usize {
        self.actions(player).iter().product()
    }

    pub fn check_state(&self, state: usize) -> Result<()> {
        if state < self.states() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { state: state + 1, states: self.states() })
        }
    }

    fn map_payoffs(&self, f: impl Fn(&Rational) -> Rational) -> GameSpec {
        let payoff = self
            .payoff
            .iter()
            .map(|rows| rows.iter().map(|row| row.iter().map(&f).collect()).collect())
            .collect();
        GameSpec { payoff, ..self.clone() }
    }
}

/// One pure stationary strategy: an action (0-based) for every state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    choices: Vec<usize>,
}

impl PureProfile {
    pub fn new(game: &GameSpec, player: Player, choices: Vec<usize>) -> Result<Self> {
        let actions = game.actions(player);
        if choices.len() != actions.len() || choices.iter().zip(actions).any(|(c, a)| c >= a) {
            let shown = PureProfile { choices };
            return Err(Error::InvalidProfile(shown.to_string()));
        }
        Ok(PureProfile { choices })
    }

    pub fn choice(&self, state: usize) -> usize {
        self.choices[state]
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    /// The choices in the 1-based numbering used by files and reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.choices.iter().map(|c| c + 1).collect()
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All pure stationary strategies of `player`, in lexicographic order of
/// `(choice at state 1, ..., choice at state n)`.
pub fn enumerate_profiles(game: &GameSpec, player: Player) -> Vec<PureProfile> {
    let actions = game.actions(player);
    let total: usize = actions.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0usize; actions.len()];
    for _ in 0..total {
        out.push(PureProfile { choices: cur.clone() });
        for l in (0..actions.len()).rev() {
            cur[l] += 1;
            if cur[l] < actions[l] {
                break;
            }
            cur[l] = 0;
        }
    }
    out
}

/// `normalized = scale * original + offset`, with `scale > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub scale: Rational,
    pub offset: Rational,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { scale: Rational::one(), offset: Rational::zero() }
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.offset.is_zero()
    }

    pub fn apply(&self, original: &Rational) -> Rational {
        &self.scale * original + &self.offset
    }

    /// Maps a normalized value back to original payoff units.
    pub fn invert(&self, normalized: &Rational) -> Rational {
        (normalized - &self.offset) / &self.scale
    }
}

/// A game on the grid `1/N`: every payoff and transition probability is a
/// multiple of `1/N` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedGame {
    original: GameSpec,
    game: GameSpec,
    denominator: BigUint,
    affine: Affine,
    degenerate: bool,
}

/// Brings `game` onto a `1/N` grid inside `[0, 1]`.
///
/// Games whose payoffs already lie in `[0, 1]` are kept as they are. Other
/// games are mapped by `g' = (g - C-) / (C+ - C-)`, or sent to the constant 0
/// when all payoffs coincide. `N` is the least common multiple of all
/// denominators after the map.
pub fn normalize(game: &GameSpec) -> NormalizedGame {
    let (lo, hi) = game.payoff_range();
    let in_unit = !lo.is_negative() && hi <= Rational::one();
    let affine = if in_unit {
        Affine::identity()
    } else if lo == hi {
        Affine { scale: Rational::one(), offset: -lo.clone() }
    } else {
        let scale = (&hi - &lo).recip();
        let offset = -(&lo * &scale);
        Affine { scale, offset }
    };
    let normalized = if affine.is_identity() { game.clone() } else { game.map_payoffs(|g| affine.apply(g)) };
    let denominator = normalized.denominator_lcm();
    NormalizedGame { original: game.clone(), game: normalized, denominator, affine, degenerate: lo == hi }
}

impl NormalizedGame {
    /// The normalized game the solvers work on.
    pub fn game(&self) -> &GameSpec {
        &self.game
    }

    pub fn original(&self) -> &GameSpec {
        &self.original
    }

    /// The grid denominator `N`.
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn affine(&self) -> &Affine {
        &self.affine
    }

    /// All payoffs coincide, so every value equals that payoff.
    pub fn constant_value(&self) -> Option<&Rational> {
        self.degenerate.then(|| self.original.payoff(0, 0, 0))
    }

    /// The same game viewed on the finer grid `1/M` for a multiple `M` of `N`.
    pub fn with_denominator(&self, multiple: BigUint) -> Result<NormalizedGame> {
        if multiple.is_zero() || !(&multiple % &self.denominator).is_zero() {
            return Err(Error::DenominatorMismatch { multiple, denominator: self.denominator.clone() });
        }
        Ok(NormalizedGame { denominator: multiple, ..self.clone() })
    }

    /// Smallest grid `1/M` with `lambda * M` integral.
    pub fn admit_discount(&self, lambda: &Rational) -> NormalizedGame {
        let m = self.denominator.lcm(lambda.denom().magnitude());
        NormalizedGame { denominator: m, ..self.clone() }
    }

    pub fn states(&self) -> usize {
        self.game.states()
    }
}
