//! JSON and CSV encodings.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! that every `f64` round-trips exactly and output is byte-stable. Complex
//! numbers are `[re, im]` pairs. CSV files have no header and use `,` and `.`.

use crate::equivalence::CyclicRoot;
use crate::frame::{GramMatrix, Method, TightnessReport};
use crate::lattice::TFSubgroup;
use crate::sequences::{Family, Params, Sequence};
use crate::tf::DpafMatrix;
use crate::{Error, Result, C64};
use serde_json::{json, Map, Value};
use std::fmt::Write as _;

/// `x` as a JSON number with 17 significant digits; non-finite values
/// become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(sig17(x).parse().expect("formatted float is a JSON number"))
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex(z: C64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

fn complex_list(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("`{what}` must be a non-negative integer")))
}

fn parse_complex(v: &Value) -> Result<C64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(bad("complex components must be numbers")),
        },
        _ => Err(bad("complex values are [re, im] pairs")),
    }
}

fn parse_complex_list(v: &Value, what: &str) -> Result<Vec<C64>> {
    v.as_array()
        .ok_or_else(|| bad(format!("`{what}` must be an array")))?
        .iter()
        .map(parse_complex)
        .collect()
}

fn params_json(p: &Params) -> Value {
    match p {
        Params::None => json!({}),
        Params::Wiener { s } => json!({ "s": s }),
        Params::Bjorck { p } => json!({ "p": p }),
        Params::BjorckSaffariSq { c, sigma } => json!({ "c": complex_list(c), "sigma": sigma }),
        Params::Milewski { v, m, n } => json!({ "v": complex_list(v), "m": m, "n": n }),
        Params::Kronecker { u, v } => json!({ "u": complex_list(u), "v": complex_list(v) }),
    }
}

fn parse_params(family: Family, v: Option<&Value>) -> Result<Params> {
    let empty = json!({});
    let v = v.unwrap_or(&empty);
    Ok(match family {
        Family::Chu | Family::P4 | Family::Custom => Params::None,
        Family::Wiener => Params::Wiener {
            s: field(v, "s")?
                .as_i64()
                .ok_or_else(|| bad("`s` must be an integer"))?,
        },
        Family::Bjorck => Params::Bjorck {
            p: field(v, "p")?
                .as_u64()
                .ok_or_else(|| bad("`p` must be an integer"))?,
        },
        Family::BjorckSaffariSq => Params::BjorckSaffariSq {
            c: parse_complex_list(field(v, "c")?, "c")?,
            sigma: field(v, "sigma")?
                .as_array()
                .ok_or_else(|| bad("`sigma` must be an array"))?
                .iter()
                .map(|x| as_usize(x, "sigma"))
                .collect::<Result<_>>()?,
        },
        Family::Milewski => Params::Milewski {
            v: parse_complex_list(field(v, "v")?, "v")?,
            m: as_usize(field(v, "m")?, "m")?,
            n: as_usize(field(v, "n")?, "n")?,
        },
        Family::Kronecker => Params::Kronecker {
            u: parse_complex_list(field(v, "u")?, "u")?,
            v: parse_complex_list(field(v, "v")?, "v")?,
        },
    })
}

pub fn sequence_to_json(phi: &Sequence) -> Value {
    json!({
        "n": phi.len(),
        "family": phi.family().as_str(),
        "params": params_json(phi.params()),
        "entries": complex_list(phi.entries()),
    })
}

/// Accepts the output of [`sequence_to_json`]; `family` and `params` are
/// optional (defaulting to an untagged sequence).
pub fn sequence_from_json(v: &Value) -> Result<Sequence> {
    let entries = parse_complex_list(field(v, "entries")?, "entries")?;
    if let Some(n) = v.get("n") {
        let n = as_usize(n, "n")?;
        if n != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.len(),
            });
        }
    }
    let family: Family = match v.get("family") {
        Some(f) => f
            .as_str()
            .ok_or_else(|| bad("`family` must be a string"))?
            .parse()?,
        None => Family::Custom,
    };
    let params = parse_params(family, v.get("params"))?;
    Sequence::from_parts(family, params, entries)
}

pub fn parse_sequence(text: &str) -> Result<Sequence> {
    sequence_from_json(&serde_json::from_str(text)?)
}

/// One `re,im` line per entry.
pub fn sequence_to_csv(phi: &Sequence) -> String {
    let mut out = String::new();
    for z in phi.entries() {
        let _ = writeln!(out, "{},{}", sig17(z.re), sig17(z.im));
    }
    out
}

pub fn dpaf_to_json(a: &DpafMatrix) -> Value {
    let n = a.n();
    json!({
        "n": n,
        "values": (0..n).map(|m| complex_list(a.row(m))).collect::<Vec<_>>(),
    })
}

/// `|A[m, n]|` grid, one row per `m`.
pub fn dpaf_magnitude_csv(a: &DpafMatrix) -> String {
    let mut out = String::new();
    for m in 0..a.n() {
        let line: Vec<String> = a.row(m).iter().map(|z| sig17(z.norm())).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn subgroup_to_json(g: &TFSubgroup) -> Value {
    json!({
        "n": g.n(),
        "elements": g.elements().iter().map(|&(k, l)| json!([k, l])).collect::<Vec<_>>(),
    })
}

pub fn subgroup_from_json(v: &Value) -> Result<TFSubgroup> {
    let n = as_usize(field(v, "n")?, "n")?;
    let elements = field(v, "elements")?
        .as_array()
        .ok_or_else(|| bad("`elements` must be an array"))?
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([k, l]) => Ok((as_usize(k, "k")?, as_usize(l, "l")?)),
            _ => Err(bad("elements are [k, l] pairs")),
        })
        .collect::<Result<Vec<_>>>()?;
    TFSubgroup::from_elements(n, elements)
}

pub fn parse_subgroup(text: &str) -> Result<TFSubgroup> {
    subgroup_from_json(&serde_json::from_str(text)?)
}

/// One `k,l` line per element.
pub fn subgroup_to_csv(g: &TFSubgroup) -> String {
    g.elements()
        .iter()
        .map(|(k, l)| format!("{k},{l}\n"))
        .collect()
}

pub fn report_to_json(r: &TightnessReport) -> Value {
    let bounds = match (r.lower_bound, r.upper_bound) {
        (Some(a), Some(b)) => json!([num(a), num(b)]),
        _ => Value::Null,
    };
    json!({
        "method": r.method.as_str(),
        "is_frame": r.is_frame,
        "is_tight": r.is_tight,
        "frame_bound": num(r.frame_bound),
        "witnesses": r.witnesses.iter()
            .map(|w| json!([w.m, w.n, num(w.value.re), num(w.value.im)]))
            .collect::<Vec<_>>(),
        "gram_rank": r.gram_rank,
        "bounds": bounds,
    })
}

/// Several reports plus an agreement summary. Top-level `is_frame`,
/// `is_tight` and `frame_bound` are taken from the first report.
pub fn reports_to_json(reports: &[TightnessReport], agree: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("method".into(), json!("all"));
    if let Some(first) = reports.first() {
        obj.insert("is_frame".into(), json!(first.is_frame));
        obj.insert("is_tight".into(), json!(first.is_tight));
        obj.insert("frame_bound".into(), num(first.frame_bound));
    }
    obj.insert("agree".into(), json!(agree));
    obj.insert(
        "reports".into(),
        Value::Array(reports.iter().map(report_to_json).collect()),
    );
    Value::Object(obj)
}

/// Parses the `method` field of a report.
pub fn report_method(v: &Value) -> Result<Method> {
    field(v, "method")?
        .as_str()
        .ok_or_else(|| bad("`method` must be a string"))?
        .parse()
}

pub fn gram_to_json(g: &GramMatrix) -> Value {
    let size = g.size();
    json!({
        "size": size,
        "entries": (0..size)
            .map(|i| Value::Array((0..size).map(|j| complex(g.get(i, j))).collect()))
            .collect::<Vec<_>>(),
    })
}

/// 0/1 support grid of `|G[i, j]| > threshold`.
pub fn gram_support_csv(g: &GramMatrix, threshold: f64) -> String {
    let mut out = String::new();
    for row in g.support(threshold) {
        let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn cyclic_root_to_json(root: &CyclicRoot) -> Value {
    json!({
        "n": root.n(),
        "z": complex_list(&root.z),
        "verified": root.verified,
    })
}

pub fn cyclic_root_from_json(v: &Value) -> Result<CyclicRoot> {
    let z = parse_complex_list(field(v, "z")?, "z")?;
    let verified = v.get("verified").and_then(Value::as_bool).unwrap_or(false);
    Ok(CyclicRoot { z, verified })
}
