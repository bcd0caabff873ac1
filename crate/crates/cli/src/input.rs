use std::fmt;
use std::path::Path;

use stochval::format::parse_game;
use stochval::rational::{parse_rational, pow2_neg};
use stochval::{corpus, GameSpec, Rational};

/// Why a run stopped; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable files, malformed games or out-of-range values.
    Input(String),
    /// A certified bound was not honoured by the computation.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) => write!(f, "invalid input: {msg}"),
            Failure::Internal(msg) => write!(f, "internal bound violated: {msg}"),
        }
    }
}

impl From<stochval::Error> for Failure {
    fn from(e: stochval::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// A game together with the label it was loaded under.
pub struct LoadedGame {
    pub label: String,
    pub spec: GameSpec,
}

fn corpus_name(arg: &str) -> &str {
    let name = arg.strip_prefix("corpus:").unwrap_or(arg);
    name.strip_suffix(".json").unwrap_or(name)
}

/// Reads `arg` as a file when it exists, otherwise as the name of a bundled
/// game (`corpus:NAME`, `NAME` or `NAME.json`).
pub fn load_game(arg: &str) -> Result<LoadedGame, Failure> {
    let path = Path::new(arg);
    if !arg.starts_with("corpus:") && path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?;
        let spec = parse_game(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
        return Ok(LoadedGame { label: arg.to_string(), spec });
    }
    let name = corpus_name(arg);
    match corpus::get(name) {
        Some(parsed) => Ok(LoadedGame { label: format!("corpus:{name}"), spec: parsed? }),
        None => Err(Failure::Input(format!(
            "no file {arg:?} and no bundled game {name:?} (bundled: {})",
            corpus::list().join(", ")
        ))),
    }
}

/// Converts a 1-based state number to an index.
pub fn state_index(state: usize, game: &GameSpec) -> Result<usize, Failure> {
    if state == 0 || state > game.states() {
        return Err(Failure::Input(format!("state {state} is outside 1..={}", game.states())));
    }
    Ok(state - 1)
}

pub fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| format!("{text:?}: {e}"))
}

/// A tolerance given as `2^-t` or as a rational.
pub fn tolerance_arg(text: &str) -> Result<Rational, String> {
    match text.trim().strip_prefix("2^-") {
        Some(t) => t.parse::<u64>().map(pow2_neg).map_err(|_| format!("{text:?}: exponent must be a non-negative integer")),
        None => rational_arg(text),
    }
}

/// Matrix entries, row by row.
#[derive(Clone, Debug)]
pub struct Matrix(pub Vec<Vec<Rational>>);

/// A matrix written as rows separated by `;` and entries by `,`.
pub fn matrix_arg(text: &str) -> Result<Matrix, String> {
    text.split(';')
        .map(|row| row.split(',').map(rational_arg).collect())
        .collect::<Result<_, _>>()
        .map(Matrix)
}

/// A matrix file: a JSON array of rows whose entries are numbers or strings
/// such as `"3/4"`.
pub fn read_matrix(path: &str) -> Result<Vec<Vec<Rational>>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let bad = |what: &str| Failure::Input(format!("{path}: {what}"));
    let rows = value.as_array().ok_or_else(|| bad("expected an array of rows"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("every row must be an array"))?
                .iter()
                .map(|entry| {
                    let text = match entry {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                        _ => return Err(bad("entries must be integers or rational strings")),
                    };
                    rational_arg(&text).map_err(|e| bad(&e))
                })
                .collect()
        })
        .collect()
}
