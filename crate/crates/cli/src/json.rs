//! JSON encodings shared by all commands.
//!
//! Integers whose magnitude exceeds 2^53 are written as decimal strings so
//! that readers using doubles never lose precision; readers here accept
//! both numbers and strings.

use std::collections::{BTreeMap, BTreeSet};

use algper::{DoldClass, IntMatrix, IntPolynomial};
use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{Map, Value};

const EXACT_DOUBLE_LIMIT: u64 = 1 << 53;

pub fn big(x: &BigInt) -> Value {
    if x.abs() <= BigInt::from(EXACT_DOUBLE_LIMIT) {
        let v: i64 = x.try_into().expect("fits in i64");
        Value::from(v)
    } else {
        Value::String(x.to_string())
    }
}

pub fn big_list<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> Value {
    Value::Array(xs.into_iter().map(big).collect())
}

pub fn set(xs: &BTreeSet<u64>) -> Value {
    Value::Array(xs.iter().map(|&n| Value::from(n)).collect())
}

pub fn parse_big(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => bail!("expected an integer, found {other}"),
    };
    text.parse::<BigInt>()
        .map_err(|_| anyhow!("`{text}` is not an integer"))
}

/// `{"dim": n, "rows": [[...], ...]}`.
pub fn matrix(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = m.rows().map(big_list).collect();
    let mut obj = Map::new();
    obj.insert("dim".into(), Value::from(m.dim()));
    obj.insert("rows".into(), Value::Array(rows));
    Value::Object(obj)
}

/// Errors while reading a matrix file, split by how the CLI reports them.
#[derive(Debug)]
pub enum MatrixFileError {
    /// Not valid JSON or wrong field types.
    Syntax(anyhow::Error),
    /// Row count or row lengths disagree with `dim`.
    Shape(String),
}

pub fn parse_matrix(v: &Value) -> std::result::Result<IntMatrix, MatrixFileError> {
    let syntax = |msg: &str| MatrixFileError::Syntax(anyhow!(msg.to_string()));
    let obj = v
        .as_object()
        .ok_or_else(|| syntax("matrix file must hold a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| syntax("matrix file needs a nonnegative integer `dim`"))?
        as usize;
    let rows = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| syntax("matrix file needs an array `rows`"))?;
    if rows.len() != dim {
        return Err(MatrixFileError::Shape(format!(
            "`dim` is {dim} but there are {} rows",
            rows.len()
        )));
    }
    let mut parsed = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| syntax("each row must be an array"))?;
        if row.len() != dim {
            return Err(MatrixFileError::Shape(format!(
                "row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        let entries = row
            .iter()
            .map(parse_big)
            .collect::<Result<Vec<_>>>()
            .map_err(MatrixFileError::Syntax)?;
        parsed.push(entries);
    }
    IntMatrix::from_rows(parsed).map_err(|e| MatrixFileError::Shape(e.to_string()))
}

/// `{"n": a_n, ...}` with keys sorted as strings by the JSON map.
pub fn dold(d: &DoldClass) -> Value {
    Value::Object(d.iter().map(|(n, a)| (n.to_string(), big(a))).collect())
}

pub fn parse_dold(v: &Value) -> Result<DoldClass> {
    let obj = v.as_object().context("Dold class must be a JSON object")?;
    let mut pairs = Vec::with_capacity(obj.len());
    for (k, a) in obj {
        let n: u64 = k
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("key `{k}` is not a positive integer"))?;
        pairs.push((
            n,
            parse_big(a).with_context(|| format!("value for period {n}"))?,
        ));
    }
    Ok(DoldClass::from_pairs(pairs))
}

pub fn polynomial(p: &IntPolynomial) -> Value {
    big_list(p.coeffs())
}

pub fn exponent_map(map: &BTreeMap<u64, BigInt>) -> Value {
    Value::Object(map.iter().map(|(k, e)| (k.to_string(), big(e))).collect())
}

pub fn multiplicities(map: &BTreeMap<u64, u32>) -> Value {
    Value::Object(
        map.iter()
            .map(|(k, m)| (k.to_string(), Value::from(*m)))
            .collect(),
    )
}

/// Recursively orders object keys: integer keys first in numeric order,
/// then the rest as strings.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> =
                map.into_iter().map(|(k, v)| (k, sorted(v))).collect();
            entries.sort_by_cached_key(|(k, _)| {
                (k.parse::<u64>().map_or((1, 0), |n| (0, n)), k.clone())
            });
            Value::Object(entries.into_iter().collect())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Indented JSON that keeps arrays of scalars on a single line.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_pretty(out: &mut String, v: &Value, depth: usize) {
    let scalar = |x: &Value| !matches!(x, Value::Array(_) | Value::Object(_));
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(xs) if xs.iter().all(scalar) => {
            let items: Vec<String> = xs.iter().map(Value::to_string).collect();
            out.push_str(&format!("[{}]", items.join(", ")));
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_pretty(out, x, depth + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::from(k.as_str()).to_string());
                out.push_str(": ");
                write_pretty(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar_value => out.push_str(&scalar_value.to_string()),
    }
}

/// Reads a JSON value given inline (`{...}`) or as a path to a file.
pub fn read_inline_or_file(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("cannot read `{arg}`"))?
    };
    serde_json::from_str(&text).with_context(|| format!("`{arg}` is not valid JSON"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn big_integers_switch_to_strings() {
        assert_eq!(big(&BigInt::from(1u64 << 53)), json!(9007199254740992u64));
        assert_eq!(big(&-BigInt::from(1u64 << 53)), json!(-9007199254740992i64));
        assert_eq!(
            big(&(BigInt::from(1u64 << 53) + 1)),
            json!("9007199254740993")
        );
        let huge: BigInt = "-123456789012345678901234567890".parse().unwrap();
        assert_eq!(parse_big(&big(&huge)).unwrap(), huge);
    }

    #[test]
    fn reads_both_number_and_string_forms() {
        let v: Value = serde_json::from_str("[123456789012345678901234567890, \"-5\"]").unwrap();
        let xs: Vec<BigInt> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|x| parse_big(x).unwrap())
            .collect();
        assert_eq!(
            xs[0],
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
        assert_eq!(xs[1], BigInt::from(-5));
        assert!(parse_big(&json!(1.5)).is_err());
        assert!(parse_big(&json!(null)).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let v = matrix(&m);
        assert_eq!(v, json!({"dim": 2, "rows": [[0, -1], [1, 0]]}));
        assert_eq!(parse_matrix(&v).unwrap(), m);
        assert!(matches!(
            parse_matrix(&json!({"dim": 2, "rows": [[1, 0]]})),
            Err(MatrixFileError::Shape(_))
        ));
        assert!(matches!(
            parse_matrix(&json!({"rows": []})),
            Err(MatrixFileError::Syntax(_))
        ));
        assert_eq!(
            parse_matrix(&json!({"dim": 0, "rows": []})).unwrap(),
            IntMatrix::empty()
        );
    }

    #[test]
    fn keys_sort_numerically_then_lexically() {
        let v = json!({"b": 1, "10": 2, "a": {"z": 0, "y": [{"2": 0, "1": 0}]}, "9": 3});
        let text = serde_json::to_string(&sorted(v)).unwrap();
        assert_eq!(
            text,
            r#"{"9":3,"10":2,"a":{"y":[{"1":0,"2":0}],"z":0},"b":1}"#
        );
    }

    #[test]
    fn pretty_output_parses_back() {
        let v = json!({"a": [1, "x,y", null], "b": {"c": [[1, 2], [3, 4]], "d": {}}, "e": []});
        let text = to_pretty(&v);
        assert!(text.contains(r#""a": [1, "x,y", null]"#));
        assert!(text.contains("\"c\": [\n      [1, 2],\n      [3, 4]\n    ]"));
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }

    #[test]
    fn dold_maps() {
        let d = parse_dold(&json!({"3": -2, "4": "1", "7": 0})).unwrap();
        assert_eq!(d, DoldClass::from_pairs([(3, -2), (4, 1)]));
        assert_eq!(dold(&d), json!({"3": -2, "4": 1}));
        assert!(parse_dold(&json!({"0": 1})).is_err());
        assert!(parse_dold(&json!({"x": 1})).is_err());
        assert!(parse_dold(&json!([1])).is_err());
    }
}
