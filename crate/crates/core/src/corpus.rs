//! Bundled instance files.
//!
//! | name | states | notes |
//! |------|--------|-------|
//! | `absorbing1` | 1 | one action each, payoff 1 |
//! | `pennies` | 1 | identity 2×2, value 1/2 |
//! | `rps` | 1 | rock-paper-scissors shifted into `[0, 1]`, value 1/2 |
//! | `bigmatch` | 3 | Blackwell–Ferguson; `v_λ = 1/2` for every `λ` |
//! | `golden` | 2 | `v_{1/2} = (√5 - 1)/2`, limit 1/2 |
//! | `kohlberg` | 4 | payoffs in `{-1, 0, 1}`; normalization maps them to `{0, 1/2, 1}` |

use crate::error::Result;
use crate::format::parse_game;
use crate::game::GameSpec;

const ENTRIES: &[(&str, &str)] = &[
    ("absorbing1", include_str!("../corpus/absorbing1.json")),
    ("bigmatch", include_str!("../corpus/bigmatch.json")),
    ("golden", include_str!("../corpus/golden.json")),
    ("kohlberg", include_str!("../corpus/kohlberg.json")),
    ("pennies", include_str!("../corpus/pennies.json")),
    ("rps", include_str!("../corpus/rps.json")),
];

/// Names of the bundled games, sorted.
pub fn list() -> Vec<&'static str> {
    ENTRIES.iter().map(|(name, _)| *name).collect()
}

/// The instance file as shipped.
pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Parses a bundled game; `None` for an unknown name.
pub fn get(name: &str) -> Option<Result<GameSpec>> {
    source(name).map(|text| parse_game(text).map_err(Into::into))
}
