//! Rendering of result documents as JSON, CSV or an aligned text table.
//!
//! CSV and table output use the first array of records found at the top
//! level of the document (spectrum entries, enumerated elements, roots…).
//! Documents without one are flattened to `key,value` rows with dotted keys.

use serde_json::Value;

use crate::args::Format;

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable value");
            s.push('\n');
            s
        }
        Format::Csv => {
            let (header, rows) = tabulate(doc);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory write");
            for r in &rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        Format::Table => {
            let (header, rows) = tabulate(doc);
            table(&header, &rows)
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => serde_json::to_string(v).expect("serializable value"),
    }
}

fn records(v: &Value) -> Option<&Vec<Value>> {
    match v {
        Value::Array(items) if !items.is_empty() && items.iter().all(|x| x.is_object() || x.is_array()) => Some(items),
        _ => None,
    }
}

fn tabulate(doc: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let found = match doc {
        Value::Object(map) => map.values().find_map(records),
        other => records(other),
    };
    match found {
        Some(items) => rows_of(items),
        None => {
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            (vec!["key".into(), "value".into()], rows)
        }
    }
}

fn rows_of(items: &[Value]) -> (Vec<String>, Vec<Vec<String>>) {
    if let Some(first) = items[0].as_object() {
        let mut header: Vec<String> = first.keys().cloned().collect();
        for item in items {
            for k in item.as_object().into_iter().flat_map(|m| m.keys()) {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
        let rows = items
            .iter()
            .map(|it| header.iter().map(|k| it.get(k).map(cell).unwrap_or_default()).collect())
            .collect();
        return (header, rows);
    }
    let width = items.iter().filter_map(Value::as_array).map(Vec::len).max().unwrap_or(0);
    let header = (0..width).map(|i| format!("c{i}")).collect();
    let rows = items
        .iter()
        .map(|it| {
            let a = it.as_array().cloned().unwrap_or_default();
            (0..width).map(|i| a.get(i).map(cell).unwrap_or_default()).collect()
        })
        .collect();
    (header, rows)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        _ => out.push(vec![prefix.to_string(), cell(v)]),
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        let mut s = padded.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(header);
    out.push_str(&line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn records_become_rows() {
        let doc = json!({"height": 3, "entries": [{"t": "4", "disc": 3}, {"t": "14", "disc": 3}]});
        assert_eq!(render(&doc, Format::Csv), "t,disc\n4,3\n14,3\n");
        let t = render(&doc, Format::Table);
        assert!(t.starts_with("t   disc\n--  ----\n4   3\n"));
    }

    #[test]
    fn scalars_are_flattened() {
        let doc = json!({"a": {"b": 1, "c": [1, 2]}, "ok": true});
        assert_eq!(render(&doc, Format::Csv), "key,value\na.b,1\na.c,\"[1,2]\"\nok,true\n");
    }

    #[test]
    fn nested_arrays_get_positional_columns() {
        let doc = json!({"elements": [[1, 0, 0, 0], [-1, 0, 0, 0]]});
        assert_eq!(render(&doc, Format::Csv), "c0,c1,c2,c3\n1,0,0,0\n-1,0,0,0\n");
    }
}
