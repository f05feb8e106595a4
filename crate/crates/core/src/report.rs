//! Pass/fail reports shared by every verification routine.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Exit code used by the command-line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub desc: String,
    pub status: Status,
    /// Offending expression in the input grammar, or a value summary.
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub items: Vec<Item>,
    pub notes: Vec<String>,
    pub timing_ms: u64,
    started: Option<Instant>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            items: Vec::new(),
            notes: Vec::new(),
            timing_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn push(&mut self, desc: impl Into<String>, status: Status, witness: impl Into<String>) {
        self.items.push(Item { desc: desc.into(), status, witness: witness.into() });
    }

    /// Adds a pass or fail item.
    pub fn check(&mut self, desc: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.push(desc, Status::from_bool(ok), witness);
    }

    /// Adds a note unless an identical one is already present.
    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// Appends the items of `other`, prefixing descriptions with its name.
    pub fn absorb(&mut self, other: Report) {
        for it in other.items {
            self.items.push(Item { desc: format!("{}: {}", other.check, it.desc), ..it });
        }
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn status(&self) -> Status {
        if self.items.iter().any(|i| i.status == Status::Fail) {
            Status::Fail
        } else if self.items.iter().any(|i| i.status == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status != Status::Pass)
    }

    /// `{check, status, items, notes, timing_ms}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.check,
            "status": self.status(),
            "items": self.items,
            "notes": self.notes,
            "timing_ms": self.timing_ms,
        })
    }

    /// Stops the clock.
    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.timing_ms = t.elapsed().as_millis() as u64;
        }
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} ({} items, {} ms)", self.check, self.status(), self.items.len(), self.timing_ms)?;
        for it in &self.items {
            if it.witness.is_empty() {
                writeln!(f, "  [{}] {}", it.status, it.desc)?;
            } else {
                writeln!(f, "  [{}] {}  ~  {}", it.status, it.desc, it.witness)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregation() {
        let mut r = Report::new("demo");
        assert_eq!(r.status(), Status::Pass);
        r.push("a", Status::Undecided, "");
        assert_eq!(r.status(), Status::Undecided);
        r.check("b", false, "x");
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.status().exit_code(), 1);
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new("demo");
        r.check("a", true, "");
        let v = r.finish().to_json();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["check"], "demo");
        assert_eq!(v["items"][0]["status"], "pass");
        assert!(v["timing_ms"].is_u64());
    }
}
