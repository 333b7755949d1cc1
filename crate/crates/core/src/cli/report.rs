use std::fmt;

use super::output::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Computed and printed values differ in a documented way; not a failure.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    /// Short name of the statement being checked.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    pub expected: Option<String>,
    pub computed: Option<String>,
}

impl Claim {
    pub fn check(id: &str, anchor: &str, ok: bool, detail: impl Into<String>) -> Self {
        Claim {
            id: id.to_owned(),
            anchor: anchor.to_owned(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            expected: None,
            computed: None,
        }
    }

    /// Pass when the two sides are equal, fail otherwise; both are kept.
    pub fn compare(
        id: &str,
        anchor: &str,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
    ) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Claim {
            status: if expected == computed {
                Status::Pass
            } else {
                Status::Fail
            },
            detail: String::new(),
            expected: Some(expected),
            computed: Some(computed),
            id: id.to_owned(),
            anchor: anchor.to_owned(),
        }
    }

    pub fn discrepancy(
        id: &str,
        anchor: &str,
        expected: impl Into<String>,
        computed: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Claim {
            id: id.to_owned(),
            anchor: anchor.to_owned(),
            status: Status::Discrepancy,
            detail: detail.into(),
            expected: Some(expected.into()),
            computed: Some(computed.into()),
        }
    }

    /// A check that could not run.
    pub fn infrastructure(id: &str, anchor: &str, err: &crate::error::Error) -> Self {
        Claim::check(id, anchor, false, format!("could not run: {err}"))
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            claims: Vec::new(),
        }
    }

    pub fn extend(&mut self, claims: impl IntoIterator<Item = Claim>) {
        self.claims.extend(claims);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Fail if any claim fails, else discrepancy if any, else pass.
    pub fn status(&self) -> Status {
        summarize(&self.claims)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "suite", "id", "anchor", "status", "expected", "computed", "detail",
        ]);
        for c in &self.claims {
            t.push(vec![
                self.suite.clone(),
                c.id.clone(),
                c.anchor.clone(),
                c.status.to_string(),
                c.expected.clone().unwrap_or_default(),
                c.computed.clone().unwrap_or_default(),
                c.detail.clone(),
            ]);
        }
        t
    }
}

pub fn summarize(claims: &[Claim]) -> Status {
    if claims.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if claims.iter().any(|c| c.status == Status::Discrepancy) {
        Status::Discrepancy
    } else {
        Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregation() {
        let mut r = VerificationReport::new("t");
        r.extend([Claim::check("a", "x", true, "")]);
        assert_eq!(r.status(), Status::Pass);
        r.extend([Claim::discrepancy("b", "y", "1", "2", "shifted")]);
        assert_eq!(r.status(), Status::Discrepancy);
        assert!(r.passed());
        r.extend([Claim::compare("c", "z", 3, 4)]);
        assert_eq!(r.status(), Status::Fail);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.to_table().rows().len(), 3);
    }

    #[test]
    fn compare_keeps_both_sides() {
        let c = Claim::compare("c", "z", "1 5 16", "1 5 16");
        assert_eq!(c.status, Status::Pass);
        assert_eq!(c.expected.as_deref(), Some("1 5 16"));
    }
}
