//! Verdicts and per-check records shared by the verification suites.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing was falsified, but the check could not be completed as
    /// requested (for example a residue class not reached inside the box).
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Combines two verdicts; `Fail` dominates `Inconclusive`, which dominates `Pass`.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub case: String,
    pub verdict: Verdict,
    /// Largest numerical residual, or the failure count for exact checks.
    pub residual: f64,
    pub detail: String,
}

impl CheckResult {
    pub fn new(
        suite: impl Into<String>,
        case: impl Into<String>,
        verdict: Verdict,
        residual: f64,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            suite: suite.into(),
            case: case.into(),
            verdict,
            residual,
            detail: detail.into(),
        }
    }
}
