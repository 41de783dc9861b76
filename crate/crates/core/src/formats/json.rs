//! JSON document for graphs. Arrays are indexed by level or gap; level
//! values are decimal strings so rationals survive exactly. Keys are written
//! sorted and pretty-printed, so output is stable under diffing.
//!
//! ```text
//! { "levels": ["0", "1/3"], "vertices": [["a"], ["b"]],
//!   "edges": [[{"id": "e", "down": "a", "up": "b"}]],
//!   "vertex_orders": [[["lo", "hi"]], []], "edge_orders": [[]],
//!   "labels": [{"e": "x"}], "leaf_ranks": {"a": 1} }
//! ```
//!
//! Reading checks the shape only. Graph invariants are left to
//! [`ReebGraph::validate`].

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::FormatError;
use crate::graph::{Edge, LevelPoset, ReebGraph};
use crate::scalar::Scalar;

fn schema(pointer: &str, message: impl Into<String>) -> FormatError {
    FormatError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn array<'v>(v: &'v Value, pointer: &str) -> Result<&'v Vec<Value>, FormatError> {
    v.as_array()
        .ok_or_else(|| schema(pointer, "expected an array"))
}

fn string<'v>(v: &'v Value, pointer: &str) -> Result<&'v str, FormatError> {
    v.as_str()
        .ok_or_else(|| schema(pointer, "expected a string"))
}

fn sized<'v>(
    root: &'v Map<String, Value>,
    key: &str,
    len: usize,
) -> Result<Option<&'v Vec<Value>>, FormatError> {
    let pointer = format!("/{key}");
    match root.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let items = array(v, &pointer)?;
            if items.len() != len {
                return Err(schema(
                    &pointer,
                    format!("expected {len} entries, found {}", items.len()),
                ));
            }
            Ok(Some(items))
        }
    }
}

fn poset(v: &Value, pointer: &str) -> Result<LevelPoset, FormatError> {
    let mut p = LevelPoset::trivial();
    for (j, pair) in array(v, pointer)?.iter().enumerate() {
        let at = format!("{pointer}/{j}");
        match array(pair, &at)?.as_slice() {
            [lo, hi] => p.add_cover(
                string(lo, &format!("{at}/0"))?,
                string(hi, &format!("{at}/1"))?,
            ),
            _ => return Err(schema(&at, "expected a [lo, hi] pair")),
        }
    }
    Ok(p)
}

pub fn read_reeb_json<T: Scalar>(bytes: &[u8]) -> Result<ReebGraph<T>, FormatError> {
    let doc: Value =
        serde_json::from_slice(bytes).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
    let root = doc
        .as_object()
        .ok_or_else(|| schema("", "expected an object"))?;
    let known: BTreeSet<&str> = [
        "levels",
        "vertices",
        "edges",
        "vertex_orders",
        "edge_orders",
        "labels",
        "leaf_ranks",
    ]
    .into();
    if let Some(k) = root.keys().find(|k| !known.contains(k.as_str())) {
        return Err(schema(&format!("/{k}"), "unknown key"));
    }

    let levels_raw = array(
        root.get("levels")
            .ok_or_else(|| schema("/levels", "missing"))?,
        "/levels",
    )?;
    let mut levels = Vec::with_capacity(levels_raw.len());
    for (i, v) in levels_raw.iter().enumerate() {
        let at = format!("/levels/{i}");
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            _ => return Err(schema(&at, "expected a decimal string")),
        };
        levels.push(
            T::parse_decimal(&text)
                .ok_or_else(|| schema(&at, format!("not a level value: '{text}'")))?,
        );
    }
    let k = levels.len();
    let gaps = k.saturating_sub(1);
    let mut g: ReebGraph<T> = ReebGraph::empty(levels);

    let mut seen: BTreeSet<String> = BTreeSet::new();
    let vertices = sized(root, "vertices", k)?.ok_or_else(|| schema("/vertices", "missing"))?;
    for (i, level) in vertices.iter().enumerate() {
        for (j, v) in array(level, &format!("/vertices/{i}"))?.iter().enumerate() {
            let at = format!("/vertices/{i}/{j}");
            let id = string(v, &at)?;
            if !seen.insert(id.to_string()) {
                return Err(schema(&at, format!("duplicate vertex id '{id}'")));
            }
            g.vertices[i].push(id.to_string());
        }
    }

    let mut edge_ids: BTreeSet<String> = BTreeSet::new();
    let edges = sized(root, "edges", gaps)?.ok_or_else(|| schema("/edges", "missing"))?;
    for (i, gap) in edges.iter().enumerate() {
        for (j, e) in array(gap, &format!("/edges/{i}"))?.iter().enumerate() {
            let at = format!("/edges/{i}/{j}");
            let obj = e
                .as_object()
                .ok_or_else(|| schema(&at, "expected an object"))?;
            let field = |name: &str| -> Result<&str, FormatError> {
                let p = format!("{at}/{name}");
                string(obj.get(name).ok_or_else(|| schema(&p, "missing"))?, &p)
            };
            let (id, down, up) = (field("id")?, field("down")?, field("up")?);
            if let Some(extra) = obj
                .keys()
                .find(|k| !["id", "down", "up"].contains(&k.as_str()))
            {
                return Err(schema(&format!("{at}/{extra}"), "unknown key"));
            }
            if !edge_ids.insert(id.to_string()) {
                return Err(schema(
                    &format!("{at}/id"),
                    format!("duplicate edge id '{id}'"),
                ));
            }
            g.edges[i].push(Edge::new(id, down, up));
        }
    }

    if let Some(orders) = sized(root, "vertex_orders", k)? {
        for (i, p) in orders.iter().enumerate() {
            g.vertex_orders[i] = poset(p, &format!("/vertex_orders/{i}"))?;
        }
    }
    if let Some(orders) = sized(root, "edge_orders", gaps)? {
        for (i, p) in orders.iter().enumerate() {
            g.edge_orders[i] = poset(p, &format!("/edge_orders/{i}"))?;
        }
    }
    if let Some(labels) = sized(root, "labels", gaps)? {
        let mut out = Vec::with_capacity(gaps);
        for (i, m) in labels.iter().enumerate() {
            let at = format!("/labels/{i}");
            let obj = m
                .as_object()
                .ok_or_else(|| schema(&at, "expected an object"))?;
            let mut gap = BTreeMap::new();
            for (e, l) in obj {
                gap.insert(e.clone(), string(l, &format!("{at}/{e}"))?.to_string());
            }
            out.push(gap);
        }
        g.labels = Some(out);
    }
    match root.get("leaf_ranks") {
        None | Some(Value::Null) => {}
        Some(v) => {
            let obj = v
                .as_object()
                .ok_or_else(|| schema("/leaf_ranks", "expected an object"))?;
            for (id, r) in obj {
                let rank = r.as_u64().ok_or_else(|| {
                    schema(
                        &format!("/leaf_ranks/{id}"),
                        "expected a non-negative integer",
                    )
                })?;
                g.leaf_ranks.insert(id.clone(), rank);
            }
        }
    }
    Ok(g.canonicalize())
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn write_reeb_json<T: Scalar>(graph: &ReebGraph<T>) -> Vec<u8> {
    let g = graph.clone().canonicalize();
    let pairs =
        |p: &LevelPoset| -> Value { p.covers.iter().map(|(lo, hi)| json!([lo, hi])).collect() };
    let mut doc = Map::new();
    doc.insert(
        "levels".into(),
        g.levels
            .iter()
            .map(|l| Value::String(l.to_decimal()))
            .collect(),
    );
    doc.insert("vertices".into(), json!(g.vertices));
    doc.insert(
        "edges".into(),
        g.edges
            .iter()
            .map(|es| {
                es.iter()
                    .map(|e| json!({"id": e.id, "down": e.down, "up": e.up}))
                    .collect::<Value>()
            })
            .collect(),
    );
    doc.insert(
        "vertex_orders".into(),
        g.vertex_orders.iter().map(pairs).collect(),
    );
    doc.insert(
        "edge_orders".into(),
        g.edge_orders.iter().map(pairs).collect(),
    );
    if let Some(labels) = &g.labels {
        doc.insert("labels".into(), json!(labels));
    }
    doc.insert("leaf_ranks".into(), json!(g.leaf_ranks));
    let mut out = serde_json::to_vec_pretty(&Value::Object(doc)).expect("serializable");
    out.push(b'\n');
    out
}
