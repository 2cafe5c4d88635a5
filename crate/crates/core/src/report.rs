//! Line-oriented `key: value` reports.

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    /// Starts a report with the command name and a digest of the input.
    pub fn new(command: &str, input_name: &str, input: &[u8]) -> Self {
        let mut r = Report::default();
        r.push("command", command);
        r.push("input", input_name);
        r.push("input.sha256", format!("{:x}", Sha256::digest(input)));
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.push(format!("param.{key}"), value);
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }

    /// First value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}
