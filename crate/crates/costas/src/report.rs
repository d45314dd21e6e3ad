//! The uniform result of every command, and its JSON, CSV and text forms.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

/// Exact counts travel as decimal strings so no consumer rounds them.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Count {
    pub name: String,
    pub value: String,
}

/// A rectangular table; preferred by the CSV emitter when present.
#[derive(Debug, Clone, Serialize, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Default)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub verdicts: Vec<Verdict>,
    pub counts: Vec<Count>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    /// Human-oriented body for text output (grids, rasters, lists).
    #[serde(skip)]
    pub text: Option<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((name.into(), value.to_string()));
        self
    }

    pub fn verdict(&mut self, check: &str, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict { check: check.into(), pass, detail: detail.into() });
        self
    }

    pub fn count(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.counts.push(Count { name: name.into(), value: value.to_string() });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// 0 when every verdict passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, emit: Emit) -> String {
        match emit {
            Emit::Json => serde_json::to_string_pretty(self).expect("plain data") + "\n",
            Emit::Csv => self.csv(),
            Emit::Text => self.plain(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, cells: &[&str]| {
            let quoted: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&quoted.join(","));
            out.push('\n');
        };
        if let Some(t) = &self.table {
            line(&mut out, &t.headers.iter().map(String::as_str).collect::<Vec<_>>());
            for row in &t.rows {
                line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
            }
            return out;
        }
        line(&mut out, &["kind", "name", "value", "detail"]);
        for (k, v) in &self.parameters {
            line(&mut out, &["parameter", k, v, ""]);
        }
        for v in &self.verdicts {
            line(&mut out, &["verdict", &v.check, if v.pass { "pass" } else { "fail" }, &v.detail]);
        }
        for c in &self.counts {
            line(&mut out, &["count", &c.name, &c.value, ""]);
        }
        if let Some(ms) = self.elapsed_ms {
            line(&mut out, &["timing", "elapsed_ms", &ms.to_string(), ""]);
        }
        out
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for v in &self.verdicts {
            let mark = if v.pass { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                let _ = writeln!(out, "{mark} {}", v.check);
            } else {
                let _ = writeln!(out, "{mark} {}: {}", v.check, v.detail);
            }
        }
        for c in &self.counts {
            let _ = writeln!(out, "{} = {}", c.name, c.value);
        }
        if let Some(t) = &self.table {
            let _ = writeln!(out, "{}", t.headers.join("\t"));
            for row in &t.rows {
                let _ = writeln!(out, "{}", row.join("\t"));
            }
        }
        match (&self.text, &self.result) {
            (Some(body), _) => out.push_str(body),
            (None, Value::Null) => {}
            (None, v) => {
                out.push_str(&serde_json::to_string_pretty(v).expect("plain data"));
                out.push('\n');
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms = {ms}");
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_and_formats() {
        let mut r = RunReport::new("demo");
        r.param("n", 4).verdict("costas", true, "").count("found", 12);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.render(Emit::Text), "demo\n  n = 4\nPASS costas\nfound = 12\n");
        assert!(r.render(Emit::Csv).contains("count,found,12,\n"));
        let json: Value = serde_json::from_str(&r.render(Emit::Json)).unwrap();
        assert_eq!(json["counts"][0]["value"], "12");
        assert!(json.get("elapsed_ms").is_none());
        r.verdict("other", false, "a, b");
        assert_eq!(r.exit_code(), 1);
        assert!(r.render(Emit::Csv).contains("\"a, b\""));
    }
}
