//! Check results and reports.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub group: String,
    pub status: Status,
    pub instances: usize,
    pub failures: usize,
    /// First failing instance, in enumeration order.
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Compares lhs and rhs; on mismatch returns a witness.
pub fn compare<T: PartialEq + Display>(input: impl Display, lhs: &T, rhs: &T) -> Option<Witness> {
    if lhs == rhs {
        None
    } else {
        Some(Witness { input: input.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() })
    }
}

/// Runs `f` on every instance (in parallel) and folds the outcomes in order.
pub fn run_check<I, F>(group: &str, name: &str, instances: Vec<I>, f: F) -> CheckResult
where
    I: Send + Sync,
    F: Fn(&I) -> Option<Witness> + Send + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Option<Witness>> = instances.par_iter().map(&f).collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    CheckResult {
        name: name.to_string(),
        group: group.to_string(),
        status: if failures == 0 { Status::Pass } else { Status::Fail },
        instances: instances.len(),
        failures,
        witness: outcomes.into_iter().flatten().next(),
        elapsed: start.elapsed(),
    }
}

/// A check with a single instance.
pub fn single_check(group: &str, name: &str, outcome: Option<Witness>) -> CheckResult {
    run_check(group, name, vec![()], |_| outcome.clone())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub instances: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    /// Computed structure data (δ, σ images, τ, ...), as canonical literals.
    pub table: BTreeMap<String, String>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>) -> Report {
        Report { schema: 1, config, ..Default::default() }
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(checks);
        self.refresh_summary();
    }

    pub fn refresh_summary(&mut self) {
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        self.summary = Summary {
            checks: self.checks.len(),
            passed,
            failed: self.checks.len() - passed,
            instances: self.checks.iter().map(|c| c.instances).sum(),
        };
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.config {
            writeln!(f, "# {k} = {v}")?;
        }
        let mut group = "";
        for c in &self.checks {
            if c.group != group {
                group = &c.group;
                writeln!(f, "[{group}]")?;
            }
            let status = if c.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "  {status:4} {:<34} {:>7} instances  {:>8.1?}",
                c.name, c.instances, c.elapsed
            )?;
            if let Some(w) = &c.witness {
                writeln!(f, "       at  {}", w.input)?;
                writeln!(f, "       lhs {}", w.lhs)?;
                writeln!(f, "       rhs {}", w.rhs)?;
            }
        }
        if !self.table.is_empty() {
            writeln!(f, "[table]")?;
            for (k, v) in &self.table {
                writeln!(f, "  {k} = {v}")?;
            }
        }
        write!(
            f,
            "{} checks, {} passed, {} failed, {} instances",
            self.summary.checks, self.summary.passed, self.summary.failed, self.summary.instances
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_the_witness() {
        let r = run_check("g", "parity", (0..10).collect(), |i: &i32| compare(i, &(i % 3), &0));
        assert_eq!(r.failures, 6);
        assert_eq!(r.witness.unwrap().input, "1");
        let mut rep = Report::new(BTreeMap::new());
        rep.extend([single_check("g", "ok", None)]);
        assert!(rep.all_passed());
        assert_eq!(rep.summary.passed, 1);
    }
}
