use serde_json::{json, Map, Value};

use crate::Format;

/// Wraps a command body with the schema version and command name.
pub fn report(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(1));
    m.insert("command".into(), json!(command));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("values serialize")),
        Format::Text => {
            if let Value::Object(m) = v {
                for (k, x) in m {
                    match x {
                        Value::String(s) => println!("{k}: {s}"),
                        other => println!("{k}: {other}"),
                    }
                }
            }
        }
    }
}
