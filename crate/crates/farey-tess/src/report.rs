//! Machine-readable reports.
//!
//! JSON reports follow the fixed shape
//! `{command, params, results, invariant_ledger?}` with insertion-ordered
//! keys, so parsing and re-emitting a report is byte-identical. Rationals
//! are serialized as `num/den` strings, never as floats; CSV rows carry a
//! chain as one quoted comma-separated field plus its norm.

use serde_json::{json, Map, Value};

use crate::continuants::ValenceChain;
use crate::enumeration::{CountReport, Stabilization};
use crate::error::Result;
use crate::farey::FareyFraction;
use crate::geometry::Point;
use crate::rational::rat_str;
use crate::tiles::ConvexTile;
use crate::verify::CheckOutcome;

/// Assemble the fixed report envelope.
pub fn envelope(command: &str, params: Value, results: Value) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("params".into(), params);
    map.insert("results".into(), results);
    Value::Object(map)
}

/// Envelope plus the pass/fail ledger of a verification run.
pub fn envelope_with_ledger(
    command: &str,
    params: Value,
    results: Value,
    ledger: &[CheckOutcome],
) -> Value {
    let mut value = envelope(command, params, results);
    let entries: Vec<Value> = ledger
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })
        })
        .collect();
    value
        .as_object_mut()
        .expect("envelope is an object")
        .insert("invariant_ledger".into(), Value::Array(entries));
    value
}

/// Render a report; the exact byte shape the CLI writes.
pub fn to_json_string(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serialization");
    out.push('\n');
    out
}

pub fn point_json(p: &Point) -> Value {
    json!([rat_str(&p.x), rat_str(&p.y)])
}

pub fn chain_json(chain: &ValenceChain) -> Value {
    Value::Array(chain.values().iter().map(|&k| json!(k)).collect())
}

pub fn tile_json(tile: &ConvexTile) -> Value {
    json!({
        "chain": chain_json(tile.chain()),
        "status": tile.status().to_string(),
        "vertices": tile
            .closure_vertices()
            .iter()
            .map(point_json)
            .collect::<Vec<Value>>(),
    })
}

pub fn count_json(report: &CountReport) -> Value {
    let mut map = Map::new();
    map.insert("count".into(), json!(report.count));
    map.insert("delta".into(), json!(report.delta));
    if let Some(n) = report.stabilized_at {
        map.insert("stabilized_at".into(), json!(n));
    }
    Value::Object(map)
}

pub fn stabilization_json(s: &Stabilization, reference: Option<i64>) -> Value {
    json!({
        "r": s.r,
        "c": s.constant,
        "stabilized_at": s.stabilized_at,
        "reference": reference,
        "matches_reference": reference.map(|v| v == s.constant),
    })
}

/// CSV with one chain per row: the components inside one quoted field,
/// then the norm.
pub fn chains_csv(chains: &[ValenceChain]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["chain", "norm"])?;
    for c in chains {
        let field = c
            .values()
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",");
        w.write_record([field, c.norm().unwrap_or(0).to_string()])?;
    }
    finish_csv(w)
}

pub fn fractions_csv(fractions: &[FareyFraction]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "q"])?;
    for f in fractions {
        w.write_record([f.a.to_string(), f.q.to_string()])?;
    }
    finish_csv(w)
}

pub fn constants_csv(rows: &[(Stabilization, Option<i64>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["r", "c", "stabilized_at", "reference"])?;
    for (s, reference) in rows {
        w.write_record([
            s.r.to_string(),
            s.constant.to_string(),
            s.stabilized_at.to_string(),
            reference.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| crate::error::Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
