//! JSON documents: elements, tuples, points, fixed sets, descriptors, obstructions.
//!
//! Numbers are always fraction strings. Objects go through `serde_json::Map`, which keeps keys
//! sorted, so the same value always serializes to the same bytes.

use plconj_core::central::{CentralizerDesc, CentralizerFactor, FactorKind};
use plconj_core::fixtures::parse_word;
use plconj_core::obstruction::Obstruction;
use plconj_core::plmap::{Component, FixedSet};
use plconj_core::{Dyadic, Interval, PLMap, Rat};
use serde_json::{json, Map, Value};

use crate::InputError;

type Res<T> = Result<T, InputError>;

fn bad(what: &str, v: &Value) -> InputError {
    InputError(format!("expected {what}, got {v}"))
}

/// Reads a command-line token: JSON if it parses as JSON, otherwise a bare string.
pub fn token(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

pub fn parse_element_text(text: &str) -> Res<PLMap> {
    let v: Value = serde_json::from_str(text.trim()).or_else(|e| {
        if text.trim_start().starts_with(['[', '{']) {
            Err(InputError(format!("parse error at line {} column {}: {e}", e.line(), e.column())))
        } else {
            Ok(Value::String(text.to_string()))
        }
    })?;
    element(&v)
}

/// A node list, a word over the generators, or `{"nodes": …}` / `{"word": …}`.
pub fn element(v: &Value) -> Res<PLMap> {
    match v {
        Value::String(w) => word(w),
        Value::Array(_) => nodes(v),
        Value::Object(o) => match (o.get("nodes"), o.get("word")) {
            (Some(n), None) => nodes(n),
            (None, Some(Value::String(w))) => word(w),
            _ => Err(bad("an element document", v)),
        },
        _ => Err(bad("an element", v)),
    }
}

fn word(w: &str) -> Res<PLMap> {
    let w = w.trim();
    if w == "id" || w == "1" {
        return Ok(PLMap::identity_unit());
    }
    Ok(parse_word(w)?)
}

fn nodes(v: &Value) -> Res<PLMap> {
    let items = v.as_array().ok_or_else(|| bad("a node list", v))?;
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match item.as_array().map(Vec::as_slice) {
            Some([a, b]) => {
                let at = |e: InputError| InputError(format!("node {i}: {e}"));
                out.push((dyadic(a).map_err(at)?, dyadic(b).map_err(at)?));
            }
            _ => return Err(InputError(format!("node {i}: expected a coordinate pair, got {item}"))),
        }
    }
    Ok(PLMap::new(out)?)
}

pub fn dyadic(v: &Value) -> Res<Dyadic> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        Value::Number(n) if n.is_i64() => Ok(Dyadic::from_int(n.as_i64().unwrap())),
        _ => Err(bad("a dyadic fraction string", v)),
    }
}

pub fn rat(v: &Value) -> Res<Rat> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_int(n.as_i64().unwrap())),
        _ => Err(bad("a rational fraction string", v)),
    }
}

pub fn integer(v: &Value) -> Res<i64> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| bad("an integer", v)),
        Value::String(s) => s.trim().parse().map_err(|_| bad("an integer", v)),
        _ => Err(bad("an integer", v)),
    }
}

/// A JSON array of elements, or a comma-separated list of words.
pub fn tuple(v: &Value) -> Res<Vec<PLMap>> {
    match v {
        Value::Array(items) => items.iter().map(element).collect(),
        Value::String(s) => s.split(',').map(word).collect(),
        _ => Err(bad("a tuple of elements", v)),
    }
}

pub fn element_json(f: &PLMap) -> Value {
    Value::Array(f.nodes().iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect())
}

pub fn tuple_json(fs: &[PLMap]) -> Value {
    Value::Array(fs.iter().map(element_json).collect())
}

fn interval_json(j: &Interval) -> Value {
    json!([j.lo().to_string(), j.hi().to_string()])
}

fn interval(v: &Value) -> Res<Interval> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok(Interval::new(dyadic(a)?, dyadic(b)?)?),
        _ => Err(bad("an interval [lo, hi]", v)),
    }
}

pub fn fixed_set_json(d: &FixedSet) -> Value {
    let comps = d
        .components()
        .iter()
        .map(|c| match c {
            Component::Point(p) => json!({ "point": p.to_string() }),
            Component::Interval(a, b) => json!({ "interval": [a.to_string(), b.to_string()] }),
        })
        .collect();
    Value::Array(comps)
}

/// Cells with their kind; cyclic generators are written restricted to their cell.
pub fn descriptor_json(d: &CentralizerDesc) -> Value {
    let cells: Vec<Value> = d
        .factors()
        .iter()
        .map(|f| {
            let mut o = Map::new();
            o.insert("interval".into(), interval_json(&f.interval));
            o.insert("kind".into(), f.kind.name().into());
            if let FactorKind::Cyclic(g) = &f.kind {
                let on = g.restrict(&f.interval).expect("generator preserves its cell");
                o.insert("generator".into(), element_json(&on));
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "domain": interval_json(d.domain()),
        "partition": d.partition().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "cells": cells,
        "m": d.m(),
        "n": d.n(),
    })
}

pub fn descriptor(v: &Value) -> Res<CentralizerDesc> {
    let o = v.as_object().ok_or_else(|| bad("a descriptor", v))?;
    let domain = interval(o.get("domain").ok_or_else(|| bad("a descriptor with a domain", v))?)?;
    let cells = o.get("cells").and_then(Value::as_array).ok_or_else(|| bad("a descriptor with cells", v))?;
    let mut factors = Vec::with_capacity(cells.len());
    for c in cells {
        let iv = interval(c.get("interval").unwrap_or(&Value::Null))?;
        let kind = match c.get("kind").and_then(Value::as_str) {
            Some("trivial") => FactorKind::Trivial,
            Some("full") => FactorKind::Full,
            Some("cyclic") => {
                let g = element(c.get("generator").ok_or_else(|| bad("a cyclic cell with a generator", c))?)?;
                FactorKind::Cyclic(g.extend_to(&domain)?)
            }
            _ => return Err(bad("a cell kind (trivial, cyclic, full)", c)),
        };
        factors.push(CentralizerFactor { interval: iv, kind });
    }
    Ok(CentralizerDesc::new(domain, factors)?)
}

pub fn obstruction_json(o: &Obstruction) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), o.kind().into());
    m.insert("message".into(), o.to_string().into());
    match o {
        Obstruction::Constrained { index } => {
            m.insert("index".into(), (*index).into());
        }
        Obstruction::Coordinate { index, inner } => {
            m.insert("index".into(), (*index).into());
            m.insert("inner".into(), obstruction_json(inner));
        }
        _ => {}
    }
    Value::Object(m)
}
