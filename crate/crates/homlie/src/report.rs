//! Verification reports: an ordered list of named checks with exact residual
//! rendering on failure. Reports are deterministic for a fixed structure and
//! seed, so the machine rendering can be compared byte for byte.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Measured and reported but never part of the verdict.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.records.push(CheckRecord {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            residual: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>, residual: impl Into<String>) {
        self.records.push(CheckRecord {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            residual: Some(residual.into()),
        });
    }

    pub fn info(&mut self, name: impl Into<String>, witness: impl Into<String>, residual: impl Into<String>) {
        self.records.push(CheckRecord {
            name: name.into(),
            status: Status::Info,
            witness: Some(witness.into()),
            residual: Some(residual.into()),
        });
    }

    /// Records a pass or a fail depending on whether the residual is zero.
    pub fn residual_zero<T: ResidualLike>(
        &mut self,
        name: impl Into<String>,
        witness: impl Fn() -> String,
        residual: &T,
    ) {
        if residual.is_zero_residual() {
            self.pass(name);
        } else {
            self.fail(name, witness(), residual.render_residual());
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    /// Prefixes every record name, used when embedding one suite in another.
    pub fn merge_under(&mut self, prefix: &str, other: VerificationReport) {
        for mut rec in other.records {
            rec.name = format!("{prefix}.{}", rec.name);
            self.records.push(rec);
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rec in &self.records {
            let tag = match rec.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            write!(f, "{tag}  {}", rec.name)?;
            if let Some(w) = &rec.witness {
                write!(f, "  witness={w}")?;
            }
            if let Some(r) = &rec.residual {
                write!(f, "  residual={r}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

/// Anything that can serve as an exact residual.
pub trait ResidualLike {
    fn is_zero_residual(&self) -> bool;
    fn render_residual(&self) -> String;
}

impl ResidualLike for crate::ring::RingElement {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render_residual(&self) -> String {
        self.to_string()
    }
}

impl ResidualLike for crate::linalg::Matrix {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render_residual(&self) -> String {
        match self.first_nonzero() {
            Some((r, c, e)) => format!("entry ({},{}) = {}", r + 1, c + 1, e),
            None => "0".to_string(),
        }
    }
}

impl ResidualLike for Vec<crate::ring::RingElement> {
    fn is_zero_residual(&self) -> bool {
        self.iter().all(|e| e.is_zero())
    }
    fn render_residual(&self) -> String {
        let cells: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        format!("({})", cells.join(", "))
    }
}
