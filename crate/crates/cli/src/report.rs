//! The JSON record printed by every command.
//!
//! ```text
//! {
//!   "schema":  "stochval.report/v1",
//!   "command": "solve-discounted",
//!   "input":   { ... },   echo of the parsed arguments
//!   "result":  { ... },   the answer
//!   "bounds":  { ... },   a-priori quantities (C, s, r, threshold exponents)
//!   "audit":   { ... },   iteration counts and observed bit-sizes
//!   "timing":  { ... }    wall clock; omitted with --deterministic
//! }
//! ```
//!
//! Everything except `timing` is a function of the input alone, so two runs
//! with the same arguments print the same bytes once `timing` is dropped.
//! Rationals are strings `"a/b"` and dyadics are strings `"m/2^e"`.

use serde_json::{json, Map, Value};
use stochval::algnum::AlgebraicNumber;
use stochval::discounted::ApproxOutcome;
use stochval::rational::format_rational;
use stochval::{Affine, NormalizedGame, Rational};

pub const SCHEMA: &str = "stochval.report/v1";

pub struct Report {
    command: &'static str,
    sections: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, sections: Map::new() }
    }

    pub fn section(mut self, name: &str, value: Value) -> Self {
        self.sections.insert(name.to_string(), value);
        self
    }

    pub fn render(self, elapsed: Option<std::time::Duration>) -> String {
        let mut root = Map::new();
        root.insert("schema".into(), json!(SCHEMA));
        root.insert("command".into(), json!(self.command));
        root.extend(self.sections);
        if let Some(d) = elapsed {
            root.insert("timing".into(), json!({ "elapsed_ms": d.as_secs_f64() * 1e3 }));
        }
        serde_json::to_string_pretty(&Value::Object(root)).expect("values are plain JSON")
    }
}

pub fn rat(x: &Rational) -> Value {
    json!(format_rational(x))
}

pub fn rats(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn affine(a: &Affine) -> Value {
    json!({ "scale": rat(&a.scale), "offset": rat(&a.offset) })
}

/// Shape and normalization of a game.
pub fn game_summary(label: &str, game: &NormalizedGame) -> Value {
    let spec = game.original();
    let (lo, hi) = spec.payoff_range();
    json!({
        "game": label,
        "states": spec.states(),
        "actions1": spec.actions(stochval::Player::One),
        "actions2": spec.actions(stochval::Player::Two),
        "payoff_range": [rat(&lo), rat(&hi)],
        "normalization": affine(game.affine()),
        "denominator": game.denominator().to_string(),
    })
}

/// `[lo, hi]` in normalized units, plus the same interval in the units of the
/// input file when the two differ.
pub fn interval(lo: &Rational, hi: &Rational, map: &Affine) -> Value {
    let mut v = json!({ "lower": rat(lo), "upper": rat(hi) });
    if !map.is_identity() {
        v["original"] = json!({ "lower": rat(&map.invert(lo)), "upper": rat(&map.invert(hi)) });
    }
    v
}

pub fn approx(out: &ApproxOutcome, map: &Affine) -> Value {
    let mut v = json!({
        "u": out.u.to_string(),
        "bits": out.bits,
        "lower": out.lower(),
        "upper": out.upper(),
    });
    v["interval"] = interval(&out.lower().to_rational(), &out.upper().to_rational(), map);
    v
}

pub fn approx_audit(out: &ApproxOutcome) -> Value {
    json!({
        "iterations": out.iterations,
        "peak_entry_bits": out.peak_entry_bits,
        "entry_bit_bound": out.entry_bit_bound,
    })
}

/// Minimal polynomial (ascending coefficients) and isolating interval.
pub fn algebraic(a: &AlgebraicNumber, map: &Affine) -> Value {
    let (lo, hi) = a.interval();
    let coeffs: Vec<String> = a.poly().coeffs().iter().map(ToString::to_string).collect();
    let mut v = json!({
        "polynomial": coeffs,
        "degree": a.poly().degree(),
        "isolating_interval": [lo, hi],
    });
    if let Some(q) = a.as_rational() {
        v["rational"] = rat(&q);
        if !map.is_identity() {
            v["original_rational"] = rat(&map.invert(&q));
        }
    }
    v
}
