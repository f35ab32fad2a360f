//! Problem documents: one lattice plus named valuations, partitions, acts and
//! lotteries, written as JSON.
//!
//! ```json
//! {
//!   "lattice": { "atoms": ["e1", "e2", "e3"] },
//!   "valuations": { "p": { "weights": { "e1": "1/100", "e2": 0.1, "e3": "89/100" } } },
//!   "partitions": { "E": [["e1"], ["e2"], ["e3"]] },
//!   "acts": { "alpha": { "partition": "E", "payoffs": [500000, 500000, 500000] } },
//!   "lotteries": { "l": [[0, "1/100"], [2500000, "1/10"], [500000, "89/100"]] }
//! }
//! ```
//!
//! A lattice is either `{"atoms": [...]}` or
//! `{"poset": {"points": [...], "covers": [[p, q], ...]}}` with `p < q`, and
//! may carry `"max_points"` to lift the default size cap. A block is a list of
//! point names and stands for the join of their down-closures. Element keys
//! (in `"values"` and keyed payoffs) are comma-separated point names, `""`
//! for the bottom. Rationals are strings (`"1/3"`, `"0.89"`) or JSON numbers,
//! read exactly. A top-level `"description"` string is allowed and ignored.

use std::fmt;
use std::marker::PhantomData;

use declat_core::{Act, Element, Lattice, LatticeOptions, Lottery, Partition, Rational, Valuation};
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// A JSON object read in order, rejecting repeated keys.
#[derive(Debug)]
struct Named<T>(Vec<(String, T)>);

impl<T> Default for Named<T> {
    fn default() -> Self {
        Named(Vec::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Named<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object of named entries")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Named<T>, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.iter().any(|(name, _)| *name == k) {
                        return Err(de::Error::custom(format!("duplicate name `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(Named(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

/// A rational literal as written: a string or the exact text of a number.
#[derive(Debug, Clone)]
struct Num(String);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Ok(Num(s)),
            Value::Number(n) => Ok(Num(n.to_string())),
            other => Err(de::Error::custom(format!("expected a rational, found {other}"))),
        }
    }
}

fn num_of(v: &Value) -> Option<Num> {
    match v {
        Value::String(s) => Some(Num(s.clone())),
        Value::Number(n) => Some(Num(n.to_string())),
        _ => None,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    /// Free text, ignored.
    #[serde(default, rename = "description")]
    _description: Option<String>,
    lattice: RawLattice,
    #[serde(default)]
    valuations: Named<RawValuation>,
    #[serde(default)]
    partitions: Named<Vec<Vec<String>>>,
    #[serde(default)]
    acts: Acts,
    #[serde(default)]
    lotteries: Named<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    atoms: Option<Vec<String>>,
    poset: Option<RawPoset>,
    max_points: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    points: Vec<String>,
    #[serde(default)]
    covers: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValuation {
    weights: Option<Named<Num>>,
    values: Option<Named<Num>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAct {
    name: Option<String>,
    partition: Value,
    payoffs: Value,
}

/// Acts keyed by name, or a list of acts each carrying `"name"`.
#[derive(Default)]
struct Acts(Vec<(String, RawAct)>);

impl<'de> Deserialize<'de> for Acts {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Acts;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object of named acts or a list of acts with names")
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Acts, A::Error> {
                let named = Named::<RawAct>::deserialize(de::value::MapAccessDeserializer::new(map))?;
                for (key, act) in &named.0 {
                    if act.name.as_ref().is_some_and(|n| n != key) {
                        return Err(de::Error::custom(format!("act `{key}` carries a different name")));
                    }
                }
                Ok(Acts(named.0))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Acts, A::Error> {
                let mut out: Vec<(String, RawAct)> = Vec::new();
                while let Some(act) = seq.next_element::<RawAct>()? {
                    let name = act.name.clone().ok_or_else(|| de::Error::missing_field("name"))?;
                    if out.iter().any(|(n, _)| *n == name) {
                        return Err(de::Error::custom(format!("duplicate name `{name}`")));
                    }
                    out.push((name, act));
                }
                Ok(Acts(out))
            }
        }
        d.deserialize_any(V)
    }
}

/// A partition with its blocks in the order the document listed them.
#[derive(Debug, Clone)]
pub struct NamedPartition {
    pub partition: Partition,
    pub listed: Vec<Element>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Problem {
    pub lattice: Lattice,
    pub valuations: Vec<(String, Valuation)>,
    pub partitions: Vec<(String, NamedPartition)>,
    pub acts: Vec<(String, Act)>,
    pub lotteries: Vec<(String, Lottery)>,
}

pub fn rational(text: &str, context: impl FnOnce() -> String) -> Result<Rational, CliError> {
    declat_core::parse_rational(text).map_err(|e| CliError::invalid(context(), e))
}

/// Parses and validates a whole document.
pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let raw: RawDoc = serde_json::from_str(text)?;
    let lattice = build_lattice(&raw.lattice)?;

    let mut valuations = Vec::new();
    for (name, rv) in raw.valuations.0 {
        let ctx = format!("valuation `{name}`");
        let v = match (rv.weights, rv.values) {
            (Some(w), None) => {
                let mut weights = Vec::new();
                for (key, num) in w.0 {
                    let atom = element(&lattice, &key).map_err(|e| CliError::invalid(&ctx, e))?;
                    weights.push((atom, rational(&num.0, || format!("{ctx}, weight of `{key}`"))?));
                }
                Valuation::from_atom_weights(&lattice, weights)
            }
            (None, Some(vals)) => {
                let mut values = Vec::new();
                for (key, num) in vals.0 {
                    let e = element(&lattice, &key).map_err(|e| CliError::invalid(&ctx, e))?;
                    values.push((e, rational(&num.0, || format!("{ctx}, value of `{key}`"))?));
                }
                Valuation::new(&lattice, values)
            }
            _ => return Err(CliError::invalid(ctx, "give exactly one of `weights` or `values`")),
        };
        valuations.push((name, v.map_err(|e| CliError::invalid(&ctx, e))?));
    }

    let mut partitions: Vec<(String, NamedPartition)> = Vec::new();
    for (name, blocks) in raw.partitions.0 {
        let p = build_partition(&lattice, &blocks).map_err(|e| CliError::invalid(format!("partition `{name}`"), e))?;
        partitions.push((name, p));
    }

    let mut acts = Vec::new();
    for (name, ra) in raw.acts.0 {
        let ctx = format!("act `{name}`");
        let np = match &ra.partition {
            Value::String(p) => partitions
                .iter()
                .find(|(n, _)| n == p)
                .map(|(_, np)| np.clone())
                .ok_or_else(|| CliError::UnknownName {
                    kind: "partition",
                    name: p.clone(),
                })?,
            Value::Array(_) => {
                let blocks: Vec<Vec<String>> =
                    serde_json::from_value(ra.partition.clone()).map_err(|e| CliError::invalid(&ctx, e))?;
                build_partition(&lattice, &blocks).map_err(|e| CliError::invalid(&ctx, e))?
            }
            _ => return Err(CliError::invalid(ctx, "`partition` must be a name or a list of blocks")),
        };
        let pairs: Vec<(Element, Rational)> = match &ra.payoffs {
            Value::Array(items) => {
                if items.len() != np.listed.len() {
                    return Err(CliError::invalid(
                        ctx,
                        format!("{} payoffs for {} blocks", items.len(), np.listed.len()),
                    ));
                }
                let mut out = Vec::new();
                for (i, (item, &block)) in items.iter().zip(&np.listed).enumerate() {
                    let num =
                        num_of(item).ok_or_else(|| CliError::invalid(&ctx, format!("payoff {i} is not a rational")))?;
                    out.push((block, rational(&num.0, || format!("{ctx}, payoff {i}"))?));
                }
                out
            }
            Value::Object(map) => {
                let mut out = Vec::new();
                for (key, item) in map {
                    let block = element(&lattice, key).map_err(|e| CliError::invalid(&ctx, e))?;
                    let num = num_of(item)
                        .ok_or_else(|| CliError::invalid(&ctx, format!("payoff of `{key}` is not a rational")))?;
                    out.push((block, rational(&num.0, || format!("{ctx}, payoff of `{key}`"))?));
                }
                out
            }
            _ => return Err(CliError::invalid(ctx, "`payoffs` must be a list or an object")),
        };
        let act = Act::from_blocks(np.partition, pairs).map_err(|e| CliError::invalid(&ctx, e))?;
        acts.push((name, act));
    }

    let mut lotteries = Vec::new();
    for (name, raw) in raw.lotteries.0 {
        let ctx = format!("lottery `{name}`");
        let mut parsed = Vec::new();
        for (i, (reward, p)) in lottery_entries(&raw)
            .map_err(|e| CliError::invalid(&ctx, e))?
            .into_iter()
            .enumerate()
        {
            parsed.push((
                rational(&reward.0, || format!("{ctx}, reward {i}"))?,
                rational(&p.0, || format!("{ctx}, probability {i}"))?,
            ));
        }
        lotteries.push((name, Lottery::new(parsed).map_err(|e| CliError::invalid(&ctx, e))?));
    }

    Ok(Problem {
        lattice,
        valuations,
        partitions,
        acts,
        lotteries,
    })
}

/// `[[reward, p], ...]`, `{"reward": p, ...}` or `{"lottery": {...}}`.
fn lottery_entries(raw: &Value) -> Result<Vec<(Num, Num)>, String> {
    const SHAPE: &str = "expected [[reward, probability], ...] or an object of reward: probability";
    match raw {
        Value::Array(items) => items
            .iter()
            .map(|item| match item.as_array().map(Vec::as_slice) {
                Some([r, p]) => num_of(r).zip(num_of(p)).ok_or_else(|| SHAPE.to_string()),
                _ => Err(SHAPE.to_string()),
            })
            .collect(),
        Value::Object(map) => match map.get("lottery") {
            Some(inner @ Value::Object(_)) if map.len() == 1 => lottery_entries(inner),
            _ => map
                .iter()
                .map(|(k, p)| num_of(p).map(|p| (Num(k.clone()), p)).ok_or_else(|| SHAPE.to_string()))
                .collect(),
        },
        _ => Err(SHAPE.to_string()),
    }
}

fn build_lattice(raw: &RawLattice) -> Result<Lattice, CliError> {
    let mut opts = LatticeOptions::default();
    if let Some(cap) = raw.max_points {
        opts.max_points = cap;
    }
    let built = match (&raw.atoms, &raw.poset) {
        (Some(atoms), None) => Lattice::boolean_with(atoms, opts),
        (None, Some(p)) => Lattice::from_poset_with(&p.points, &p.covers, opts),
        _ => return Err(CliError::invalid("lattice", "give exactly one of `atoms` or `poset`")),
    };
    built.map_err(|e| CliError::invalid("lattice", e))
}

fn build_partition(lattice: &Lattice, blocks: &[Vec<String>]) -> Result<NamedPartition, declat_core::Error> {
    let listed = blocks
        .iter()
        .map(|names| lattice.element_from_names(names))
        .collect::<Result<Vec<_>, _>>()?;
    let partition = Partition::new(lattice, listed.iter().copied())?;
    Ok(NamedPartition { partition, listed })
}

/// `"a,c"` to the join of `↓a` and `↓c`; `""` to the bottom.
pub fn element(lattice: &Lattice, key: &str) -> Result<Element, declat_core::Error> {
    let names: Vec<&str> = key.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    lattice.element_from_names(&names)
}

impl Problem {
    /// The named valuation, or the only one when no name is given.
    pub fn valuation(&self, name: Option<&str>) -> Result<(&str, &Valuation), CliError> {
        match name {
            Some(n) => find(&self.valuations, n, "valuation"),
            None => match self.valuations.as_slice() {
                [(n, v)] => Ok((n.as_str(), v)),
                [] => Err(CliError::Usage("the document defines no valuation".into())),
                _ => Err(CliError::Usage(
                    "the document defines several valuations; name one".into(),
                )),
            },
        }
    }

    pub fn partition(&self, name: &str) -> Result<&Partition, CliError> {
        find(&self.partitions, name, "partition").map(|(_, np)| &np.partition)
    }

    pub fn act(&self, name: &str) -> Result<&Act, CliError> {
        find(&self.acts, name, "act").map(|(_, a)| a)
    }

    pub fn lottery(&self, name: &str) -> Result<&Lottery, CliError> {
        find(&self.lotteries, name, "lottery").map(|(_, l)| l)
    }
}

fn find<'a, T>(items: &'a [(String, T)], name: &str, kind: &'static str) -> Result<(&'a str, &'a T), CliError> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(n, t)| (n.as_str(), t))
        .ok_or_else(|| CliError::UnknownName {
            kind,
            name: name.to_string(),
        })
}
