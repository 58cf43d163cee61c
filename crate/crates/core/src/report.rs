use serde::Serialize;

/// Violations kept verbatim per report; the rest are only counted.
pub const MAX_VIOLATIONS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub detail: String,
}

/// Outcome of a checker: pass flag, counts and the first few violations in
/// index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub instances_checked: u64,
    pub total_violations: u64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            passed: true,
            instances_checked: 0,
            total_violations: 0,
            violations: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.instances_checked += 1;
        if !ok {
            self.fail(violation());
        }
    }

    pub fn fail(&mut self, v: Violation) {
        self.passed = false;
        self.total_violations += 1;
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(v);
        }
    }

    /// Appends a report over a later range of instances.
    pub fn absorb(&mut self, other: Report) {
        self.instances_checked += other.instances_checked;
        self.total_violations += other.total_violations;
        self.passed &= other.passed;
        let room = MAX_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }

    /// Conjunction of several named checks.
    pub fn all(check: &str, parts: impl IntoIterator<Item = Report>) -> Report {
        let mut r = Report::new(check);
        for p in parts {
            r.absorb(p);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Violation {
        Violation {
            indices: vec![i],
            labels: vec![],
            detail: String::new(),
        }
    }

    #[test]
    fn keeps_first_violations_only() {
        let mut r = Report::new("x");
        for i in 0..25 {
            r.record(i % 2 == 0, || v(i));
        }
        assert!(!r.passed);
        assert_eq!(r.instances_checked, 25);
        assert_eq!(r.total_violations, 12);
        assert_eq!(r.violations.len(), MAX_VIOLATIONS);
        assert_eq!(r.violations[0].indices, vec![1]);
    }

    #[test]
    fn absorb_preserves_order() {
        let mut a = Report::new("x");
        a.fail(v(1));
        let mut b = Report::new("x");
        b.fail(v(7));
        a.absorb(b);
        assert_eq!(a.violations.iter().map(|x| x.indices[0]).collect::<Vec<_>>(), vec![1, 7]);
    }
}
