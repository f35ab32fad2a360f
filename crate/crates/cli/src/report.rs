//! Text and JSON rendering shared by the commands.

use declat_core::acts::{Failure, Verdict};
use declat_core::rational::{format_decimal, format_exact};
use declat_core::{Act, Lattice, Rational};
use serde_json::{json, Value};

/// Number formatting: always exact, optionally followed by a rounded
/// decimal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Fmt {
    pub decimal: Option<usize>,
}

impl Fmt {
    pub fn text(&self, r: &Rational) -> String {
        match self.decimal {
            Some(d) if !r.is_integer() => format!("{} (≈{} rounded)", format_exact(r), format_decimal(r, d)),
            _ => format_exact(r),
        }
    }

    pub fn json(&self, r: &Rational) -> Value {
        match self.decimal {
            Some(d) => json!({ "exact": format_exact(r), "rounded": format_decimal(r, d) }),
            None => Value::String(format_exact(r)),
        }
    }
}

/// A command's result in both renderings.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// `{a}: 3, {b,c}: 1/2`
pub fn act_text(act: &Act, fmt: Fmt) -> String {
    let lattice = act.lattice();
    act.iter()
        .map(|(b, x)| format!("{}: {}", lattice.describe(b), fmt.text(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn act_json(act: &Act, fmt: Fmt) -> Value {
    let lattice = act.lattice();
    Value::Array(
        act.iter()
            .map(|(b, x)| json!({ "block": block_names(lattice, b), "payoff": fmt.json(x) }))
            .collect(),
    )
}

pub fn block_names(lattice: &Lattice, e: declat_core::Element) -> Vec<String> {
    lattice
        .names_of(e)
        .expect("same lattice")
        .into_iter()
        .map(String::from)
        .collect()
}

/// `joiner` links the witness blocks, e.g. ` ∧ ` for a nonzero meet.
pub fn verdict_text(v: &Verdict, lattice: &Lattice, fmt: Fmt, joiner: &str) -> String {
    match v {
        Verdict::Holds => "true".into(),
        Verdict::Fails(Failure::NotARefinement) => "false (domains not refined)".into(),
        Verdict::Fails(Failure::Blocks { blocks, lhs, rhs }) => {
            let at: Vec<String> = blocks.iter().map(|&b| lattice.describe(b)).collect();
            format!("false (at {}: {} > {})", at.join(joiner), fmt.text(lhs), fmt.text(rhs))
        }
        Verdict::Undefined(e) => format!("undefined ({e})"),
    }
}

pub fn verdict_json(v: &Verdict, lattice: &Lattice, fmt: Fmt) -> Value {
    match v {
        Verdict::Holds => json!({ "holds": true }),
        Verdict::Fails(Failure::NotARefinement) => json!({ "holds": false, "reason": "domains not refined" }),
        Verdict::Fails(Failure::Blocks { blocks, lhs, rhs }) => json!({
            "holds": false,
            "blocks": blocks.iter().map(|&b| block_names(lattice, b)).collect::<Vec<_>>(),
            "lhs": fmt.json(lhs),
            "rhs": fmt.json(rhs),
        }),
        Verdict::Undefined(e) => json!({ "holds": null, "undefined": e.to_string() }),
    }
}
