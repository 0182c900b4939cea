//! Deterministic machine-readable output: ordered flat records rendered as
//! JSON (one document per invocation) or CSV (header + rows, `\n` endings).
//! Floats carry 12 significant digits so identical runs are byte-identical.

/// One output field.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Num(f64),
    Bool(bool),
    Str(String),
}

/// Ordered key→value record; insertion order is emission order.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record { fields: Vec::new() }
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.to_string(), Value::Int(v)));
        self
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.to_string(), Value::Num(v)));
        self
    }

    pub fn bool(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.to_string(), Value::Bool(v)));
        self
    }

    pub fn str(mut self, key: &str, v: &str) -> Self {
        self.fields.push((key.to_string(), Value::Str(v.to_string())));
        self
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }
}

/// Formats with (up to) 12 significant digits, positional where reasonable
/// and exponent notation otherwise, trailing zeros trimmed (`%.12g` style).
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return "null".to_string();
    }
    let formatted = format!("{:.11e}", x.abs());
    let (mantissa, exp_str) = formatted.split_once('e').expect("always has exponent");
    let exp: i32 = exp_str.parse().expect("exponent parses");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if x < 0.0 { "-" } else { "" };

    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let split = (exp + 1) as usize;
            let int_part = &digits[..split];
            let frac = digits[split..].trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            let frac = format!("{zeros}{digits}");
            format!("0.{}", frac.trim_end_matches('0'))
        }
    } else {
        let head = &digits[..1];
        let tail = digits[1..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        }
    };
    format!("{sign}{body}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn value_to_json(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Num(x) => format_sig(*x),
        Value::Bool(b) => b.to_string(),
        Value::Str(s) => format!("\"{}\"", json_escape(s)),
    }
}

fn value_to_csv(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Num(x) => format_sig(*x),
        Value::Bool(b) => b.to_string(),
        // field strings are kept comma-free by construction
        Value::Str(s) => s.replace(',', ";"),
    }
}

/// Single record → one pretty JSON object.
pub fn record_to_json(r: &Record) -> String {
    let mut out = String::from("{\n");
    for (i, (k, v)) in r.fields.iter().enumerate() {
        let comma = if i + 1 == r.fields.len() { "" } else { "," };
        out.push_str(&format!("  \"{}\": {}{comma}\n", json_escape(k), value_to_json(v)));
    }
    out.push_str("}\n");
    out
}

/// Record table → JSON array with one compact object per line.
pub fn records_to_json(rows: &[Record]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in rows.iter().enumerate() {
        let fields: Vec<String> = r
            .fields
            .iter()
            .map(|(k, v)| format!("\"{}\": {}", json_escape(k), value_to_json(v)))
            .collect();
        let comma = if i + 1 == rows.len() { "" } else { "," };
        out.push_str(&format!("  {{{}}}{comma}\n", fields.join(", ")));
    }
    out.push_str("]\n");
    out
}

/// Records → CSV with a header row taken from the first record.
pub fn records_to_csv(rows: &[Record]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let mut out = String::new();
    out.push_str(&first.keys().collect::<Vec<_>>().join(","));
    out.push('\n');
    for r in rows {
        let row: Vec<String> = r.fields.iter().map(|(_, v)| value_to_csv(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(48.0), "48");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(-0.5), "-0.5");
        assert_eq!(format_sig(1e-12), "1e-12");
        assert_eq!(format_sig(0.10909090909090909), "0.109090909091");
        assert_eq!(format_sig(1.5430806348152437), "1.54308063482");
        assert_eq!(format_sig(1.0e15), "1e15");
        assert_eq!(format_sig(-123456789012345.0), "-1.23456789012e14");
        assert_eq!(format_sig(0.0001), "0.0001");
        assert_eq!(format_sig(0.00001), "1e-5");
    }

    #[test]
    fn json_and_csv_rendering() {
        let r = Record::new().int("n", 3).num("ratio", 0.25).bool("ok", true).str("note", "a,b");
        let json = record_to_json(&r);
        assert!(json.contains("\"n\": 3,"));
        assert!(json.contains("\"ratio\": 0.25,"));
        assert!(json.contains("\"note\": \"a,b\"\n"));

        let csv = records_to_csv(&[r]);
        assert_eq!(csv, "n,ratio,ok,note\n3,0.25,true,a;b\n");
    }

    #[test]
    fn json_array_rendering() {
        let rows = vec![
            Record::new().int("n", 0).num("ratio", 1.0),
            Record::new().int("n", 1).num("ratio", 0.10909090909090909),
        ];
        let doc = records_to_json(&rows);
        assert_eq!(
            doc,
            "[\n  {\"n\": 0, \"ratio\": 1},\n  {\"n\": 1, \"ratio\": 0.109090909091}\n]\n"
        );
    }
}
