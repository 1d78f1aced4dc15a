//! `RunReport` and its two renderings.
//!
//! The `records` format is one record per line, `key=value` pairs separated by
//! single spaces, keys in insertion order. Values containing spaces, quotes or
//! backslashes are double-quoted with `\"` and `\\` escapes.

use std::fmt::Write as _;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Records,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<Record>,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            seed: None,
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn result(&mut self, record: Record) {
        self.results.push(record);
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl ToString) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.to_string(),
        });
    }

    pub fn note(&mut self, text: impl ToString) {
        self.notes.push(text.to_string());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.render_plain(),
            Format::Records => self.render_records(),
        }
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "prinseries {VERSION} {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input {k}: {v}");
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for r in &self.results {
            let body: Vec<String> = r.fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "{}: {}", r.kind, body.join("  "));
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {} ({})", c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(out, "{} checks, {failed} failed", self.checks.len());
        out
    }

    fn render_records(&self) -> String {
        let mut lines = Vec::new();
        let mut head = Record::new("run")
            .field("command", &self.command)
            .field("version", VERSION);
        if let Some(seed) = self.seed {
            head = head.field("seed", seed);
        }
        lines.push(head);
        for (k, v) in &self.inputs {
            lines.push(Record::new("input").field("key", k).field("value", v));
        }
        for note in &self.notes {
            lines.push(Record::new("note").field("text", note));
        }
        lines.extend(self.results.iter().cloned());
        for c in &self.checks {
            lines.push(
                Record::new("check")
                    .field("name", &c.name)
                    .field("status", if c.pass { "pass" } else { "fail" })
                    .field("detail", &c.detail),
            );
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        lines.push(
            Record::new("summary")
                .field("checks", self.checks.len())
                .field("failed", failed),
        );
        let mut out = String::new();
        for r in &lines {
            out.push_str(&format_record(r));
            out.push('\n');
        }
        out
    }
}

fn quote(v: &str) -> String {
    let plain = !v.is_empty() && !v.chars().any(|c| c.is_whitespace() || c == '"' || c == '\\');
    if plain {
        return v.to_string();
    }
    let mut s = String::with_capacity(v.len() + 2);
    s.push('"');
    for c in v.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

pub fn format_record(r: &Record) -> String {
    let mut parts = vec![format!("record={}", quote(&r.kind))];
    parts.extend(r.fields.iter().map(|(k, v)| format!("{k}={}", quote(v))));
    parts.join(" ")
}

/// Parses one line of the `records` format.
pub fn parse_record(line: &str) -> Result<Record, String> {
    let mut fields = Vec::new();
    let mut chars = line.trim().chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        if key.is_empty() || key.contains(' ') {
            return Err(format!("malformed key in '{line}'"));
        }
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next() {
                    Some('\\') => value.push(chars.next().ok_or("dangling escape")?),
                    Some('"') => break,
                    Some(c) => value.push(c),
                    None => return Err(format!("unterminated quote in '{line}'")),
                }
            }
            if let Some(c) = chars.next() {
                if c != ' ' {
                    return Err(format!("expected space after quoted value in '{line}'"));
                }
            }
        } else {
            value = chars.by_ref().take_while(|&c| c != ' ').collect();
        }
        fields.push((key, value));
    }
    let Some((k, kind)) = fields.first().cloned() else {
        return Err("empty record".into());
    };
    if k != "record" {
        return Err(format!("record must start with record=, got '{line}'"));
    }
    Ok(Record {
        kind,
        fields: fields.split_off(1),
    })
}

pub fn parse_records(text: &str) -> Result<Vec<Record>, String> {
    text.lines().filter(|l| !l.trim().is_empty()).map(parse_record).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let r = Record::new("item")
            .field("chars", "c=0,phase=1/2;c=4")
            .field("detail", "two words \"quoted\" and \\ slash")
            .field("empty", "");
        let line = format_record(&r);
        assert_eq!(parse_record(&line).unwrap(), r);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_record("kind=x").is_err());
        assert!(parse_record("record=\"open").is_err());
    }
}
