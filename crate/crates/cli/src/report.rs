use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

/// Output of one subcommand. Bodies never contain timestamps or paths, so
/// identical inputs give identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub body: Vec<String>,
    pub verdict: Option<Verdict>,
}

impl Report {
    pub fn new(command: String, input_digest: Option<String>) -> Self {
        Report {
            command,
            input_digest,
            body: Vec::new(),
            verdict: None,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.body.push(s.into());
    }

    pub fn exit_code(&self) -> i32 {
        match &self.verdict {
            Some(v) if !v.passed => 2,
            _ => 0,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input: {}", self.input_digest.as_deref().unwrap_or("none"));
        for line in &self.body {
            let _ = writeln!(s, "{line}");
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(s, "verdict: {}", if v.passed { "PASS" } else { "FAIL" });
            for w in &v.witnesses {
                let _ = writeln!(s, "witness: {w}");
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("verify --ray 0".into(), Some("sha256:00".into()));
        r.line("a=1: PASS");
        r.verdict = Some(Verdict {
            passed: false,
            witnesses: vec!["a=2 monomial (2,-1)".into()],
        });
        assert_eq!(
            r.to_text(),
            "command: verify --ray 0\ninput: sha256:00\na=1: PASS\nverdict: FAIL\nwitness: a=2 monomial (2,-1)\n"
        );
        assert_eq!(r.exit_code(), 2);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"]["passed"], false);
    }
}
