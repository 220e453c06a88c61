#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn socent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_socent"))
        .args(args)
        .output()
        .expect("socent runs")
}

/// `key = value` lines printed by the `gini` and `oracle` subcommands.
pub fn key_values(stdout: &[u8]) -> Vec<(String, String)> {
    String::from_utf8_lossy(stdout)
        .lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

pub fn value_of<'a>(pairs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

/// Walks two JSON documents in step. Numbers may differ by `tol`, relative
/// to the larger of 1 and the expected magnitude; everything else must be
/// equal. Returns the path of the first mismatch.
pub fn compare_json(actual: &Value, expected: &Value, tol: f64) -> Result<(), String> {
    walk(actual, expected, tol, "$")
}

fn walk(a: &Value, e: &Value, tol: f64, path: &str) -> Result<(), String> {
    match (a, e) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() <= tol * y.abs().max(1.0) {
                Ok(())
            } else {
                Err(format!("{path}: {x} != {y}"))
            }
        }
        (Value::Array(xs), Value::Array(ys)) => {
            if xs.len() != ys.len() {
                return Err(format!("{path}: length {} != {}", xs.len(), ys.len()));
            }
            xs.iter()
                .zip(ys)
                .enumerate()
                .try_for_each(|(i, (x, y))| walk(x, y, tol, &format!("{path}[{i}]")))
        }
        (Value::Object(xs), Value::Object(ys)) => {
            if xs.len() != ys.len() || xs.keys().any(|k| !ys.contains_key(k)) {
                return Err(format!("{path}: keys differ"));
            }
            xs.iter()
                .try_for_each(|(k, x)| walk(x, &ys[k], tol, &format!("{path}.{k}")))
        }
        _ if a == e => Ok(()),
        _ => Err(format!("{path}: {a} != {e}")),
    }
}
