//! Rendering of command results as JSON, CSV or text.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Adds the seed and renders. Objects carrying a `rows` array of objects
/// become a CSV table; anything else becomes `key,value` lines.
pub fn render(value: Value, seed: u64, format: Format) -> String {
    let mut obj = Map::new();
    obj.insert("seed".into(), Value::from(seed));
    match value {
        Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("result".into(), other);
        }
    }
    let value = Value::Object(obj);
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
        Format::Text => flatten(&value, "").into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        Format::Csv => match value.get("rows").and_then(Value::as_array).filter(|r| r.iter().all(Value::is_object)) {
            Some(rows) if !rows.is_empty() => table(rows),
            _ => std::iter::once("key,value\n".to_string())
                .chain(flatten(&value, "").into_iter().map(|(k, v)| format!("{},{}\n", csv_field(&k), csv_field(&v))))
                .collect(),
        },
    }
}

fn table(rows: &[Value]) -> String {
    let header: Vec<String> = flatten(&rows[0], "").into_iter().map(|(k, _)| k).collect();
    let mut out = header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",") + "\n";
    for row in rows {
        let cells = flatten(row, "");
        out += &header
            .iter()
            .map(|h| cells.iter().find(|(k, _)| k == h).map(|(_, v)| csv_field(v)).unwrap_or_default())
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Dotted-path leaves; arrays of scalars stay inline.
fn flatten(v: &Value, prefix: &str) -> Vec<(String, String)> {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().flat_map(|(k, v)| flatten(v, &key(k))).collect(),
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            a.iter().enumerate().flat_map(|(i, v)| flatten(v, &key(&i.to_string()))).collect()
        }
        Value::String(s) => vec![(prefix.to_string(), s.clone())],
        other => vec![(prefix.to_string(), other.to_string())],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_table_and_pairs() {
        let v = json!({"rows": [{"a": 1, "b": "x,y"}, {"a": 2, "b": "z"}]});
        assert_eq!(render(v, 3, Format::Csv), "a,b\n1,\"x,y\"\n2,z\n");
        let v = json!({"n": {"x": [1, 2]}});
        assert_eq!(render(v, 3, Format::Csv), "key,value\nn.x,\"[1,2]\"\nseed,3\n");
        assert_eq!(render(json!({"a": 1}), 0, Format::Text), "a: 1\nseed: 0\n");
    }
}
