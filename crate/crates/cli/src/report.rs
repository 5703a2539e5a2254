//! The result document and its text, JSON and CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use jthresh::numeric::{format_decimal, QuadNum, Rat};
use serde::{Deserialize, Serialize};

/// What every command reports. Exact values are strings that parse back with
/// `parse_rat` or `str::parse::<QuadNum>`; `decimal` mirrors them for display.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default)]
    pub exact: BTreeMap<String, String>,
    #[serde(default)]
    pub decimal: BTreeMap<String, String>,
    pub decimal_digits: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub caveats: Vec<String>,
}

impl ResultDocument {
    pub fn new(command: &str, digits: usize) -> Self {
        ResultDocument {
            command: command.to_string(),
            decimal_digits: digits,
            ..Default::default()
        }
    }

    pub fn quad(&mut self, key: &str, x: &QuadNum) -> &mut Self {
        self.exact.insert(key.to_string(), x.to_string());
        self.decimal.insert(
            key.to_string(),
            format_decimal(x.to_f64(), self.decimal_digits),
        );
        self
    }

    pub fn rat(&mut self, key: &str, x: &Rat) -> &mut Self {
        self.quad(key, &QuadNum::from_rat(x.clone()))
    }

    pub fn flag(&mut self, key: &str, v: bool) -> &mut Self {
        self.flags.insert(key.to_string(), v);
        self
    }

    pub fn label(&mut self, key: &str, v: impl ToString) -> &mut Self {
        self.labels.insert(key.to_string(), v.to_string());
        self
    }

    pub fn status(&mut self, s: impl ToString) -> &mut Self {
        self.status = Some(s.to_string());
        self
    }

    pub fn caveat(&mut self, c: impl ToString) -> &mut Self {
        self.caveats.push(c.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain maps serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(s) = &self.status {
            let _ = writeln!(out, "status: {}", s);
        }
        for (k, v) in &self.exact {
            match self.decimal.get(k) {
                Some(d) if v.contains('/') || v.contains("sqrt") => {
                    let _ = writeln!(out, "{} = {}  (~ {})", k, v, d);
                }
                _ => {
                    let _ = writeln!(out, "{} = {}", k, v);
                }
            }
        }
        for (k, v) in &self.flags {
            let _ = writeln!(out, "{}: {}", k, v);
        }
        for (k, v) in &self.labels {
            let _ = writeln!(out, "{}: {}", k, v);
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
            let _ = writeln!(out, "  {}", cells.join("  "));
        }
        for c in &self.caveats {
            let _ = writeln!(out, "caveat: {}", c);
        }
        out
    }
}

/// One line of the path sweep.
pub struct CsvRow {
    pub t: String,
    pub numerator: String,
    pub value: String,
    pub solvable: bool,
    pub decimal: String,
}

pub fn path_csv(rows: &[CsvRow]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "t",
        "R_numerator",
        "gamma_value",
        "solvable",
        "decimal_approx",
    ])
    .expect("writing to memory");
    for r in rows {
        w.write_record([
            r.t.as_str(),
            r.numerator.as_str(),
            r.value.as_str(),
            if r.solvable { "1" } else { "0" },
            r.decimal.as_str(),
        ])
        .expect("writing to memory");
    }
    w.into_inner().expect("flushing to memory")
}
