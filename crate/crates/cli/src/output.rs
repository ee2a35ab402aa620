//! Report serialization.
//!
//! JSON documents are assembled by hand so that key order is frozen per
//! schema version and every float is printed with 17 significant digits,
//! which round-trips f64 exactly; byte-identical reruns are a contract,
//! not an accident. CSV is a projection of the same data with stable
//! column headers.

pub const SCHEMA_VERSION: u32 = 1;

/// One JSON value; objects keep insertion order.
pub enum Val {
    F(f64),
    U(u64),
    B(bool),
    S(String),
    Arr(Vec<Val>),
    Obj(Vec<(&'static str, Val)>),
}

/// 17 significant digits; exact round trip for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_json(value: &Val) -> String {
    let mut buf = String::new();
    write_val(&mut buf, value);
    buf.push('\n');
    buf
}

fn write_val(buf: &mut String, value: &Val) {
    match value {
        Val::F(x) => buf.push_str(&fmt_f64(*x)),
        Val::U(n) => buf.push_str(&n.to_string()),
        Val::B(b) => buf.push_str(if *b { "true" } else { "false" }),
        Val::S(s) => {
            buf.push('"');
            for c in s.chars() {
                match c {
                    '"' => buf.push_str("\\\""),
                    '\\' => buf.push_str("\\\\"),
                    '\n' => buf.push_str("\\n"),
                    c if (c as u32) < 0x20 => buf.push_str(&format!("\\u{:04x}", c as u32)),
                    c => buf.push(c),
                }
            }
            buf.push('"');
        }
        Val::Arr(items) => {
            buf.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    buf.push(',');
                }
                write_val(buf, item);
            }
            buf.push(']');
        }
        Val::Obj(entries) => {
            buf.push('{');
            for (i, (key, item)) in entries.iter().enumerate() {
                if i > 0 {
                    buf.push(',');
                }
                buf.push('"');
                buf.push_str(key);
                buf.push_str("\":");
                write_val(buf, item);
            }
            buf.push('}');
        }
    }
}

/// Standard document wrapper: schema version and command name first.
pub fn document(command: &str, fields: Vec<(&'static str, Val)>) -> Val {
    let mut entries = vec![
        ("schemaVersion", Val::U(SCHEMA_VERSION as u64)),
        ("command", Val::S(command.to_string())),
    ];
    entries.extend(fields);
    Val::Obj(entries)
}

pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut buf = header.join(",");
    buf.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len(), "csv row width mismatch");
        buf.push_str(&row.join(","));
        buf.push('\n');
    }
    buf
}
