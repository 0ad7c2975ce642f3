//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::time::Instant;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub cases: Vec<Case>,
    pub totals: Totals,
    pub wall_time_s: f64,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { schema: SCHEMA, suite: suite.into(), cases: vec![], totals: Totals::default(), wall_time_s: 0.0 }
    }

    pub fn push(&mut self, name: impl Into<String>, inputs: Value, expected: Value, got: Value, pass: bool) {
        self.cases.push(Case { name: name.into(), inputs, expected, got, pass });
        self.totals.cases += 1;
        if pass {
            self.totals.passed += 1;
        } else {
            self.totals.failed += 1;
        }
    }

    pub fn finish(mut self, start: Instant) -> Self {
        self.wall_time_s = start.elapsed().as_secs_f64();
        self
    }

    pub fn all_pass(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// One line per case plus a summary.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag} {}: {}\n", c.name, compact(&c.got)));
            if !c.pass {
                s.push_str(&format!("     expected {}\n", compact(&c.expected)));
            }
        }
        s.push_str(&format!(
            "{}: {}/{} passed in {:.2}s\n",
            self.suite, self.totals.passed, self.totals.cases, self.wall_time_s
        ));
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let mut r = Report::new("demo");
        r.push("a", json!({"x": 1}), json!(true), json!(true), true);
        r.push("b", json!([1, 2]), json!("0"), json!("q"), false);
        let r = r.finish(Instant::now());
        let s = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.schema, 1);
        assert_eq!(r.exit_code(), 1);
        assert!(r.render().contains("FAIL b"));
    }
}
