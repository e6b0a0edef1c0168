//! Outcome records shared by every identity checker.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Overall outcome. A flagged report passed every check but carries notes
/// about printed statements that disagree with the verified ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Flagged,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
            Status::Fail => "fail",
        }
    }

    /// The worse of two outcomes.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which form of a printed formula a checker tests. Where a printed formula
/// is wrong, `Corrected` tests the right one and flags the printed one;
/// everywhere else both readings coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reading {
    Printed,
    Corrected,
}

/// Where and how the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub mismatch: Option<Mismatch>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// A documented disagreement between a printed formula or table entry and
/// what the exact computation gives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag {
    pub id: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub flags: Vec<Flag>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            checks: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            mismatch: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, at: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.checks.push(Check {
            name: name.into(),
            mismatch: Some(Mismatch {
                at: at.into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
        });
    }

    /// Records an equality check; both sides are rendered only on failure.
    pub fn compare<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, at: impl fmt::Display, lhs: &T, rhs: &T) -> bool {
        if lhs == rhs {
            self.pass(name);
            true
        } else {
            self.fail(name, format!("{at}"), lhs, rhs);
            false
        }
    }

    /// Adds a flag unless one with the same id is already present.
    pub fn flag(&mut self, id: impl Into<String>, note: impl Into<String>) {
        let id = id.into();
        if !self.flags.iter().any(|f| f.id == id) {
            self.flags.push(Flag { id, note: note.into() });
        }
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
        for f in other.flags {
            self.flag(f.id, f.note);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn status(&self) -> Status {
        if !self.passed() {
            Status::Fail
        } else if self.flags.is_empty() {
            Status::Pass
        } else {
            Status::Flagged
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        write!(f, "{}: {} ({} checks, {} failed", self.name, self.status(), self.checks.len(), failed)?;
        if !self.flags.is_empty() {
            write!(f, ", flags: ")?;
            for (i, fl) in self.flags.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fl.id)?;
            }
        }
        write!(f, ")")?;
        if let Some(c) = self.first_failure() {
            let m = c.mismatch.as_ref().expect("failed check has a mismatch");
            write!(f, "; first failure {} at {}: {} != {}", c.name, m.at, m.lhs, m.rhs)?;
        }
        Ok(())
    }
}
