//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub instance: String,
    pub seed: u64,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
    pub probes: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub const VERSION: u32 = 1;

    pub fn new() -> Self {
        Report { version: Self::VERSION, checks: Vec::new() }
    }
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
