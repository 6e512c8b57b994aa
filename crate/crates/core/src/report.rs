//! Line-oriented verification reports.
//!
//! ```text
//! command	gram --N 4
//! check	det N=4	10368	10368	pass
//! data	rank (2,2)	4
//! status	pass
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub data: Vec<(String, String)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("report line {line}: {msg}")]
pub struct ReportParseError {
    pub line: usize,
    pub msg: String,
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: clean(&command.into()), ..Default::default() }
    }

    pub fn check(&mut self, name: impl AsRef<str>, expected: impl fmt::Display, actual: impl fmt::Display, pass: bool) {
        self.checks.push(Check {
            name: clean(name.as_ref()),
            expected: clean(&expected.to_string()),
            actual: clean(&actual.to_string()),
            pass,
        });
    }

    /// Passes when both sides print the same.
    pub fn check_eq(&mut self, name: impl AsRef<str>, expected: impl fmt::Display, actual: impl fmt::Display) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let pass = e == a;
        self.check(name, e, a, pass);
    }

    /// A boolean property; expected is always `true`.
    pub fn check_true(&mut self, name: impl AsRef<str>, holds: bool) {
        self.check(name, true, holds, holds);
    }

    pub fn data(&mut self, key: impl AsRef<str>, value: impl fmt::Display) {
        self.data.push((clean(key.as_ref()), clean(&value.to_string())));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.data.extend(other.data);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command\t{}", self.command)?;
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "fail" };
            writeln!(f, "check\t{}\t{}\t{}\t{verdict}", c.name, c.expected, c.actual)?;
        }
        for (k, v) in &self.data {
            writeln!(f, "data\t{k}\t{v}")?;
        }
        writeln!(f, "status\t{}", if self.passed() { "pass" } else { "fail" })
    }
}

impl FromStr for Report {
    type Err = ReportParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = Report::default();
        let mut status = None;
        for (no, line) in s.lines().enumerate() {
            let err = |msg: &str| ReportParseError { line: no + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                ["command", cmd] => r.command = cmd.to_string(),
                ["check", name, expected, actual, verdict] => {
                    let pass = match *verdict {
                        "pass" => true,
                        "fail" => false,
                        _ => return Err(err("verdict must be pass or fail")),
                    };
                    r.checks.push(Check {
                        name: name.to_string(),
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                        pass,
                    });
                }
                ["data", k, v] => r.data.push((k.to_string(), v.to_string())),
                ["status", st] => status = Some(*st == "pass"),
                [""] => {}
                _ => return Err(err("unrecognised line")),
            }
        }
        match status {
            Some(st) if st == r.passed() => Ok(r),
            Some(_) => Err(ReportParseError { line: 0, msg: "status disagrees with checks".into() }),
            None => Err(ReportParseError { line: 0, msg: "missing status line".into() }),
        }
    }
}
