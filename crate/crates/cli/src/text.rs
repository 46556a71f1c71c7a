//! Plain-text rendering of a JSON report, field for field.

use serde_json::Value;

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => {
            let parts: Vec<String> = xs.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}: {}", inline(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn block(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) if !map.values().all(is_scalar) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, child) in map {
                block(out, k, child, depth + 1);
            }
        }
        Value::Array(xs) if !xs.iter().all(is_scalar) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for x in xs {
                out.push_str(&format!("{pad}  - {}\n", inline(x)));
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", inline(v))),
    }
}

/// One line per scalar field; nested objects indent, lists of compound
/// values put one item per line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                block(&mut out, k, child, 0);
            }
        }
        other => {
            out.push_str(&inline(other));
            out.push('\n');
        }
    }
    out
}
