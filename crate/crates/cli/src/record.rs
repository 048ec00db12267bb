use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use srgsep::bounds::BoundReport;
use srgsep::classify::{Verdict, VerdictStatus};
use srgsep::families::FamilySpec;
use srgsep::graph::SrgParams;
use srgsep::solver::SolveResult;

pub const SCHEMA: &str = "srg-separator/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    Spec { spec: FamilySpec, name: String },
    File { path: String, checksum: u64 },
    Params,
}

/// One command's result as written to stdout and to the cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub input: Input,
    pub params: Option<SrgParams>,
    pub bounds: Option<BoundReport>,
    pub verdict: Option<Verdict>,
    pub solve: Option<SolveResult>,
    pub timestamp: u64,
}

impl RunRecord {
    pub fn new(command: &str, input: Input) -> Self {
        RunRecord {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            params: None,
            bounds: None,
            verdict: None,
            solve: None,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }

    /// Whether a later run with a larger budget could change the result.
    pub fn is_final(&self) -> bool {
        let verdict_final = self.verdict.as_ref().is_none_or(|v| {
            v.status != VerdictStatus::Unresolved || v.reason != srgsep::classify::Reason::BudgetExhausted
        });
        let solve_final = self.solve.as_ref().is_none_or(|s| s.status.is_final());
        verdict_final && solve_final
    }
}
