//! Serializable forms of command results. Text output is rendered from the same values.

use newform_core::dimension::{SteinbergReport, SweepReport};
use newform_core::multiseg::Padded;
use newform_core::LambdaVec;
use serde::Serialize;

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct MultisegOut {
    pub input: String,
    pub result: String,
    /// Escalation level of the randomized oracle, when one was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_level: Option<u32>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct LambdaOut {
    pub multisegment: String,
    pub lambda: String,
    pub padded: String,
    pub n: u32,
    pub conductor: u32,
}

impl LambdaOut {
    pub fn new(multisegment: String, lambda: &LambdaVec, n: u32, conductor: u32) -> Self {
        LambdaOut { multisegment, lambda: lambda.to_string(), padded: Padded(lambda, n as usize).to_string(), n, conductor }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct DimOut {
    pub multisegment: String,
    pub lambda: String,
    pub dim: u128,
    pub method: String,
    pub prime: u64,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CountOut {
    pub shape: String,
    pub bounds: Vec<i64>,
    pub exact: bool,
    pub count: u128,
    pub prime: u64,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckOut {
    pub sweep: &'static str,
    pub lambda: String,
    pub dim: u128,
    pub expected: u128,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyOut {
    pub multisegment: String,
    pub lambda_pi: String,
    pub n: u32,
    pub prime: u64,
    pub entry_cap: Option<u32>,
    pub passed: bool,
    pub checks: Vec<CheckOut>,
    /// Sweeps not run, with the reason.
    pub skipped: Vec<String>,
    pub elapsed_ms: u128,
}

impl VerifyOut {
    pub fn push(&mut self, sweep: &'static str, report: &SweepReport) {
        self.passed &= report.passed();
        self.checks.extend(report.checks.iter().map(|c| CheckOut { sweep, lambda: c.lambda.to_string(), dim: c.dim, expected: c.expected }));
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOut> {
        self.checks.iter().filter(|c| c.dim != c.expected)
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct XiOut {
    pub shape: String,
    pub xi: i128,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct SteinbergOut {
    pub n: u32,
    pub prime: u64,
    pub f: String,
    pub in_ideal: bool,
    pub series_matches: bool,
    pub xi: Vec<XiOut>,
    pub passed: bool,
    pub elapsed_ms: u128,
}

impl SteinbergOut {
    pub fn new(r: &SteinbergReport, elapsed_ms: u128) -> Self {
        SteinbergOut {
            n: r.n,
            prime: r.prime,
            f: r.f.to_string(),
            in_ideal: r.in_ideal,
            series_matches: r.series_matches,
            xi: r.xi.iter().map(|(s, v)| XiOut { shape: s.to_string(), xi: *v }).collect(),
            passed: r.passed(),
            elapsed_ms,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct DrawOut {
    pub multisegment: String,
    pub dual: Option<String>,
    pub diagram: String,
}
