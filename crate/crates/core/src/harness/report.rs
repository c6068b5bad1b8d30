//! Line-oriented suite reports.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::harness::SuiteId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
        })
    }
}

/// One `CASE` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub group: String,
    pub t: Option<u32>,
    pub check: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Case {
    pub fn new(
        group: impl Into<String>,
        t: Option<u32>,
        check: impl Into<String>,
        outcome: Outcome,
        detail: impl Into<String>,
    ) -> Self {
        Case {
            group: group.into(),
            t,
            check: check.into(),
            outcome,
            detail: detail.into(),
        }
    }

    /// Pass when `ok`, fail otherwise.
    pub fn check(
        group: impl Into<String>,
        t: Option<u32>,
        check: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        Case::new(group, t, check, outcome, detail)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.t.map_or("-".to_string(), |t| t.to_string());
        write!(
            f,
            "CASE {} t={} {}={}",
            self.group, t, self.check, self.outcome
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Totals {
    fn add(&mut self, other: Totals) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.skip += other.skip;
    }
}

impl fmt::Display for Totals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TOTAL pass={} fail={} skip={}",
            self.pass, self.fail, self.skip
        )
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: SuiteId,
    pub cases: Vec<Case>,
    /// Not part of the rendered text.
    pub wall: Duration,
}

impl Report {
    pub fn totals(&self) -> Totals {
        let mut t = Totals::default();
        for c in &self.cases {
            match c.outcome {
                Outcome::Pass => t.pass += 1,
                Outcome::Fail => t.fail += 1,
                Outcome::Skip => t.skip += 1,
            }
        }
        t
    }

    pub fn passed(&self) -> bool {
        self.totals().fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = format!("SUITE {}\n", self.suite);
        for c in &self.cases {
            let _ = writeln!(out, "{c}");
        }
        let _ = writeln!(out, "{}", self.totals());
        out
    }
}

/// Several suite reports rendered back to back, with a grand total.
pub fn render_all(reports: &[Report]) -> String {
    let mut out = String::new();
    let mut grand = Totals::default();
    for r in reports {
        out.push_str(&r.render());
        grand.add(r.totals());
    }
    if reports.len() > 1 {
        let _ = writeln!(out, "ALL {grand}");
    }
    out
}

pub fn emit_report(reports: &[Report], path: &Path) -> Result<()> {
    std::fs::write(path, render_all(reports)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_format() {
        let c = Case::check("S4", Some(2), "quotient_closed", true, "n=4");
        assert_eq!(c.to_string(), "CASE S4 t=2 quotient_closed=pass n=4");
        let c = Case::new("A5", None, "x", Outcome::Skip, "");
        assert_eq!(c.to_string(), "CASE A5 t=- x=skip");
    }

    #[test]
    fn totals_line() {
        let r = Report {
            suite: SuiteId::Lemma1_1,
            cases: vec![
                Case::check("a", None, "x", true, ""),
                Case::check("b", None, "x", false, ""),
                Case::new("c", None, "x", Outcome::Skip, "cap"),
            ],
            wall: Duration::ZERO,
        };
        assert!(r.render().ends_with("TOTAL pass=1 fail=1 skip=1\n"));
        assert!(!r.passed());
    }
}
