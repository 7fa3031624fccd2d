//! JSON or indented text output.

use serde_json::Value;

use crate::Format;

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialise"),
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out.trim_end().to_string()
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) if !is_flat(v) => {
            for x in xs {
                out.push_str(&format!("{pad}-\n"));
                text(x, depth + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
