//! Game files: JSON with rationals written as `"a/b"` strings.
//!
//! ```json
//! {
//!   "n": 1,
//!   "actions1": [1],
//!   "actions2": [1],
//!   "payoff": [[["1/2"]]],
//!   "transition": [[[["1"]]]]
//! }
//! ```
//!
//! Plain JSON integers are accepted wherever a rational is expected.

use std::fmt::Write as _;

use serde_json::Value;

use crate::game::{GameError, GameSpec};
use crate::rational::{format_rational, parse_rational, RationalParseError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("{path}: expected {expected}")]
    WrongType { path: String, expected: &'static str },
    #[error("{path}: malformed number: {source}")]
    MalformedNumber { path: String, source: RationalParseError },
    #[error("field `n` is {n} but `{field}` lists {found} states")]
    StateCount { n: usize, field: &'static str, found: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, name: &'static str) -> Result<&'a Value, ParseError> {
    obj.get(name).ok_or(ParseError::MissingField(name))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| ParseError::WrongType { path: path.to_string(), expected: "an array" })
}

fn count(v: &Value, path: &str) -> Result<usize, ParseError> {
    v.as_u64()
        .and_then(|c| usize::try_from(c).ok())
        .ok_or_else(|| ParseError::WrongType { path: path.to_string(), expected: "a nonnegative integer" })
}

fn number(v: &Value, path: &str) -> Result<Rational, ParseError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(ParseError::WrongType { path: path.to_string(), expected: "a rational string \"a/b\"" }),
    };
    parse_rational(&text).map_err(|source| ParseError::MalformedNumber { path: path.to_string(), source })
}

/// Nested arrays of rationals of fixed depth, with 1-based paths in errors.
fn tensor(v: &Value, path: &str, depth: usize) -> Result<Tensor, ParseError> {
    if depth == 0 {
        return number(v, path).map(Tensor::Leaf);
    }
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| tensor(x, &format!("{path}[{}]", i + 1), depth - 1))
        .collect::<Result<_, _>>()
        .map(Tensor::Node)
}

enum Tensor {
    Leaf(Rational),
    Node(Vec<Tensor>),
}

impl Tensor {
    fn nodes(self) -> Vec<Tensor> {
        match self {
            Tensor::Node(v) => v,
            Tensor::Leaf(_) => unreachable!("depth is fixed by the caller"),
        }
    }

    fn leaf(self) -> Rational {
        match self {
            Tensor::Leaf(x) => x,
            Tensor::Node(_) => unreachable!("depth is fixed by the caller"),
        }
    }
}

pub fn parse_game(text: &str) -> Result<GameSpec, ParseError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or(ParseError::WrongType { path: "game".into(), expected: "an object" })?;
    let n = count(field(obj, "n")?, "n")?;
    let counts = |name: &'static str| -> Result<Vec<usize>, ParseError> {
        let items = array(field(obj, name)?, name)?;
        items.iter().enumerate().map(|(i, v)| count(v, &format!("{name}[{}]", i + 1))).collect()
    };
    let actions1 = counts("actions1")?;
    let actions2 = counts("actions2")?;
    let payoff = tensor(field(obj, "payoff")?, "payoff", 3)?;
    let transition = tensor(field(obj, "transition")?, "transition", 4)?;

    let payoff: Vec<Vec<Vec<Rational>>> = payoff
        .nodes()
        .into_iter()
        .map(|s| s.nodes().into_iter().map(|r| r.nodes().into_iter().map(Tensor::leaf).collect()).collect())
        .collect();
    let transition: Vec<Vec<Vec<Vec<Rational>>>> = transition
        .nodes()
        .into_iter()
        .map(|s| {
            s.nodes()
                .into_iter()
                .map(|r| r.nodes().into_iter().map(|c| c.nodes().into_iter().map(Tensor::leaf).collect()).collect())
                .collect()
        })
        .collect();

    for (name, found) in [
        ("actions1", actions1.len()),
        ("actions2", actions2.len()),
        ("payoff", payoff.len()),
        ("transition", transition.len()),
    ] {
        if found != n {
            return Err(ParseError::StateCount { n, field: name, found });
        }
    }
    Ok(GameSpec::new(actions1, actions2, payoff, transition)?)
}

fn row(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(|x| format!("\"{}\"", format_rational(x))).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical text form; `parse_game(&render_game(g)) == g`.
pub fn render_game(game: &GameSpec) -> String {
    let list = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"n\": {},", game.states());
    let _ = writeln!(out, "  \"actions1\": [{}],", list(game.actions(crate::Player::One)));
    let _ = writeln!(out, "  \"actions2\": [{}],", list(game.actions(crate::Player::Two)));

    let states: Vec<String> = game
        .payoffs()
        .iter()
        .map(|rows| {
            let rows: Vec<String> = rows.iter().map(|r| row(r)).collect();
            format!("    [{}]", rows.join(", "))
        })
        .collect();
    let _ = writeln!(out, "  \"payoff\": [\n{}\n  ],", states.join(",\n"));

    let states: Vec<String> = game
        .transitions()
        .iter()
        .map(|rows| {
            let rows: Vec<String> = rows
                .iter()
                .map(|cells| {
                    let cells: Vec<String> = cells.iter().map(|c| row(c)).collect();
                    format!("      [{}]", cells.join(", "))
                })
                .collect();
            format!("    [\n{}\n    ]", rows.join(",\n"))
        })
        .collect();
    let _ = writeln!(out, "  \"transition\": [\n{}\n  ]", states.join(",\n"));
    out.push_str("}\n");
    out
}
