#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
}

pub fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn greechie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greechie"))
        .args(args)
        .current_dir(corpus(""))
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn is_rational(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (n, d) = body.split_once('/').unwrap_or((body, "1"));
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    digits(n) && digits(d) && d.bytes().any(|b| b != b'0')
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

/// The subset of JSON Schema the shipped schemas use: `type`, `enum`,
/// `const`, `properties`, `required`, `additionalProperties`, `items`,
/// `anyOf`, `minimum` and `format: rational`. Returns the first error path.
pub fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let err = |m: &str| Err(format!("{path}: {m}"));
    let Some(s) = schema.as_object() else {
        return Ok(());
    };
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(t) => type_matches(t, v),
            Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
            _ => true,
        };
        if !ok {
            return err(&format!("expected type {t}, got {v}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            return err(&format!("{v} not in enum"));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            return err(&format!("{v} != const {c}"));
        }
    }
    if let (Some(m), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < m {
            return err(&format!("{x} below minimum {m}"));
        }
    }
    if s.get("format").and_then(Value::as_str) == Some("rational") {
        if let Some(text) = v.as_str() {
            if !is_rational(text) {
                return err(&format!("`{text}` is not a rational"));
            }
        }
    }
    if let Some(Value::Array(options)) = s.get("anyOf") {
        if !options.iter().any(|o| validate(o, v, path).is_ok()) {
            return err("no anyOf branch matches");
        }
    }
    if let Value::Object(map) = v {
        let props = s.get("properties").and_then(Value::as_object);
        if let Some(Value::Array(req)) = s.get("required") {
            for r in req {
                if !map.contains_key(r.as_str().unwrap()) {
                    return err(&format!("missing `{r}`"));
                }
            }
        }
        for (k, x) in map {
            let sub = format!("{path}.{k}");
            match props.and_then(|p| p.get(k)) {
                Some(ps) => validate(ps, x, &sub)?,
                None => match s.get("additionalProperties") {
                    Some(Value::Bool(false)) => return err(&format!("unexpected `{k}`")),
                    Some(extra @ Value::Object(_)) => validate(extra, x, &sub)?,
                    _ => {}
                },
            }
        }
    }
    if let (Value::Array(items), Some(item_schema)) = (v, s.get("items")) {
        for (i, x) in items.iter().enumerate() {
            validate(item_schema, x, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

/// Brute-force two-valued states: every 0/1 assignment with exactly one true
/// atom per context, as sorted 0/1 strings over the canonical atom order.
pub fn brute_force_states(atoms: &[String], contexts: &[Vec<String>]) -> Vec<String> {
    let n = atoms.len();
    let idx: Vec<Vec<usize>> = contexts
        .iter()
        .map(|c| {
            c.iter()
                .map(|a| atoms.iter().position(|x| x == a).unwrap())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let ok = idx
            .iter()
            .all(|c| c.iter().filter(|&&a| mask >> a & 1 == 1).count() == 1);
        if ok {
            out.push(
                (0..n)
                    .map(|a| if mask >> a & 1 == 1 { '1' } else { '0' })
                    .collect(),
            );
        }
    }
    out.sort();
    out
}
