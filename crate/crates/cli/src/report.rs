use std::fmt;
use std::path::Path;

use anyhow::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Computed and shown, but not counted toward the exit status.
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub check: String,
    pub name: String,
    pub status: Status,
    pub counterexample: String,
}

#[derive(Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: &str, name: impl Into<String>, ok: bool, counterexample: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.add(check, name, status, counterexample);
    }

    pub fn info(&mut self, check: &str, name: impl Into<String>, detail: impl Into<String>) {
        self.add(check, name, Status::Reported, detail);
    }

    fn add(&mut self, check: &str, name: impl Into<String>, status: Status, counterexample: impl Into<String>) {
        let c = Check { check: check.to_string(), name: name.into(), status, counterexample: counterexample.into() };
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "INFO",
        };
        if c.counterexample.is_empty() {
            println!("{tag}  {}: {}", c.check, c.name);
        } else {
            println!("{tag}  {}: {}  [{}]", c.check, c.name, c.counterexample);
        }
        self.checks.push(c);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["check", "name", "status", "counterexample"])?;
        for c in &self.checks {
            w.write_record([c.check.as_str(), c.name.as_str(), &c.status.to_string(), c.counterexample.as_str()])?;
        }
        w.flush()?;
        Ok(())
    }
}
