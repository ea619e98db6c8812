use serde::Serialize;

/// One named claim evaluated over a finite set of instances. The claim holds
/// iff `witnesses` is empty; every witness is a tuple of carrier elements (or
/// small integers) locating a failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub witnesses: Vec<Vec<usize>>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            checked: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }

    /// Record one evaluated instance.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<usize>) {
        self.checked += 1;
        if !ok {
            self.witnesses.push(witness());
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }
}
