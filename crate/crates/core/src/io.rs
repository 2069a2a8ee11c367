//! File formats: groupoid and action JSON, and the sparse element text form.
//!
//! A groupoid file is either the raw tables
//! `{"elements", "units", "r", "s", "inv", "mul"}`, a preset string such as
//! `"pair:3"`, `"group:S3"`, `"trivial:2"`, `"bundle:Z2,Z3"`, or
//! `{"preset": "disjoint_union", "parts": [...]}`.
//!
//! An action file is `{"group": {"order", "table"} | {"preset"}, "space", "act"}`
//! where `act[g][q]` is the image of `q` under the `g`-th group element.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, RawGroupoid};
use crate::transformation::{GroupAction, TransformationGroupoid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { order: usize, table: Vec<Vec<usize>> },
    Preset { preset: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub group: GroupSpec,
    pub space: usize,
    pub act: Vec<Vec<usize>>,
}

/// What a spec file describes.
#[derive(Debug, Clone)]
pub enum Loaded {
    Groupoid(FiniteGroupoid),
    Action(TransformationGroupoid),
}

impl Loaded {
    pub fn groupoid(&self) -> &FiniteGroupoid {
        match self {
            Loaded::Groupoid(g) => g,
            Loaded::Action(t) => t.groupoid(),
        }
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Preset { preset } => FiniteGroup::preset(preset),
            GroupSpec::Table { order, table } => {
                if table.len() != *order {
                    return Err(Error::InvalidGroup(format!("order {order} but {} table rows", table.len())));
                }
                FiniteGroup::from_table(format!("G{order}"), table.clone())
            }
        }
    }
}

impl ActionSpec {
    pub fn build(&self) -> Result<GroupAction> {
        GroupAction::new(self.group.build()?, self.space, self.act.clone())
    }

    pub fn from_action(a: &GroupAction) -> Self {
        ActionSpec {
            group: GroupSpec::Table { order: a.group().order(), table: a.group().table().to_vec() },
            space: a.space(),
            act: a.table().to_vec(),
        }
    }
}

fn preset_groupoid(name: &str) -> Result<FiniteGroupoid> {
    let bad = || Error::Parse(format!("unknown groupoid preset `{name}`"));
    let (kind, arg) = name.split_once(':').ok_or_else(bad)?;
    let count = || arg.trim().parse::<usize>().map_err(|_| bad());
    match kind.trim() {
        "pair" => Ok(FiniteGroupoid::pair(count()?)),
        "trivial" => Ok(FiniteGroupoid::trivial(count()?)),
        "group" => Ok(FiniteGroupoid::from_group(&FiniteGroup::preset(arg.trim())?)),
        "bundle" => {
            let fibers = arg.split(',').map(|s| FiniteGroup::preset(s.trim())).collect::<Result<Vec<_>>>()?;
            Ok(FiniteGroupoid::group_bundle(&fibers))
        }
        _ => Err(bad()),
    }
}

fn groupoid_from_value(v: &Value) -> Result<FiniteGroupoid> {
    match v {
        Value::String(s) => preset_groupoid(s),
        Value::Object(map) => match map.get("preset").and_then(Value::as_str) {
            Some("disjoint_union") => {
                let parts = map
                    .get("parts")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("disjoint_union needs a `parts` array".into()))?;
                let mut built = parts.iter().map(groupoid_from_value);
                let first = built.next().ok_or_else(|| Error::Parse("disjoint_union with no parts".into()))??;
                built.try_fold(first, |acc, next| Ok(FiniteGroupoid::disjoint_union(&acc, &next?)))
            }
            Some(name) => preset_groupoid(name),
            None => FiniteGroupoid::build(serde_json::from_value::<RawGroupoid>(v.clone())?),
        },
        _ => Err(Error::Parse("expected a groupoid object or preset string".into())),
    }
}

pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid> {
    groupoid_from_value(&serde_json::from_str(text)?)
}

pub fn parse_action(text: &str) -> Result<GroupAction> {
    serde_json::from_str::<ActionSpec>(text)?.build()
}

/// Groupoid or action, told apart by the `group` key.
pub fn parse_spec(text: &str) -> Result<Loaded> {
    let v: Value = serde_json::from_str(text)?;
    if v.get("group").is_some() {
        let spec: ActionSpec = serde_json::from_value(v)?;
        return Ok(Loaded::Action(TransformationGroupoid::new(spec.build()?)));
    }
    groupoid_from_value(&v).map(Loaded::Groupoid)
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<Loaded> {
    parse_spec(&std::fs::read_to_string(path)?)
}

pub fn groupoid_to_json(g: &FiniteGroupoid) -> String {
    serde_json::to_string_pretty(&g.to_raw()).expect("plain data")
}

pub fn action_to_json(a: &GroupAction) -> String {
    serde_json::to_string_pretty(&ActionSpec::from_action(a)).expect("plain data")
}

/// Reads `id re [im]` lines; blank lines and `#` comments are skipped and
/// repeated ids accumulate.
pub fn parse_element(text: &str, n: usize) -> Result<AlgebraElement> {
    let mut f = AlgebraElement::zeros(n);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}: `{line}`", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(bad("expected `id re [im]`"));
        }
        let id: usize = fields[0].parse().map_err(|_| bad("bad element id"))?;
        let re: f64 = fields[1].parse().map_err(|_| bad("bad real part"))?;
        let im: f64 = fields.get(2).map_or(Ok(0.0), |s| s.parse()).map_err(|_| bad("bad imaginary part"))?;
        if id >= n {
            return Err(Error::IndexError { what: "element", index: id, size: n });
        }
        f[id] += Complex64::new(re, im);
    }
    Ok(f)
}

pub fn load_element(path: impl AsRef<Path>, n: usize) -> Result<AlgebraElement> {
    parse_element(&std::fs::read_to_string(path)?, n)
}

/// Nonzero coefficients in `id re im` form.
pub fn format_element(f: &AlgebraElement) -> String {
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if *c != Complex64::new(0.0, 0.0) {
            writeln!(out, "{i} {} {}", c.re, c.im).expect("string write");
        }
    }
    out
}
