//! Reports: free text followed by `KEY=VALUE` lines.

use std::fmt;

pub const KEYS: [&str; 7] = ["RESULT", "ATLAS_SIZE", "FOP_SIZE", "LCO", "LSCO", "TW_AXIOMS", "SEED_MATCH"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub text: Vec<String>,
    pub keys: Vec<(String, String)>,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Sets `key`, replacing an earlier value.
    pub fn set(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.keys.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.keys.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.keys.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Reads the machine section back; lines before the first blank line
    /// followed only by `KEY=VALUE` lines are text.
    pub fn parse(s: &str) -> Report {
        let mut lines: Vec<&str> = s.lines().collect();
        while lines.last() == Some(&"") {
            lines.pop();
        }
        let split = lines.iter().rposition(|l| l.is_empty()).map_or(0, |i| i + 1);
        let mut r = Report::default();
        for l in &lines[..split.saturating_sub(1)] {
            r.line(*l);
        }
        for l in &lines[split..] {
            if let Some((k, v)) = l.split_once('=') {
                r.set(k, v);
            }
        }
        r
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.text {
            writeln!(f, "{l}")?;
        }
        writeln!(f)?;
        for (k, v) in &self.keys {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
