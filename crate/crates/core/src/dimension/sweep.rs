use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{DimError, Dimensions};
use crate::multiseg::{LambdaVec, Multisegment};
use crate::omodule::partitions;

/// Expected against computed dimension at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub lambda: LambdaVec,
    pub dim: u128,
    pub expected: u128,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.dim == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub multisegment: Multisegment,
    pub lambda_pi: LambdaVec,
    pub n: u32,
    pub prime: u64,
    pub checks: Vec<Check>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// One above the largest part of `λ_π`.
pub fn default_entry_cap(lambda_pi: &LambdaVec) -> u32 {
    lambda_pi.max_part() + 1
}

/// All `λ ∈ Λ_n` lex-below `target` with every part at most `cap`, in increasing order.
///
/// Such a `λ` never has more parts than `target`, so the set is finite.
pub fn lambdas_below(target: &LambdaVec, n: u32, cap: u32) -> Vec<LambdaVec> {
    let k = target.len().min(n as usize);
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(k);
    bounded_partitions(k, cap, &mut parts, &mut out);
    out.retain(|l| l.lex_cmp(target, n as usize) == Some(Ordering::Less));
    out.sort();
    out
}

fn bounded_partitions(slots: usize, max: u32, parts: &mut Vec<u32>, out: &mut Vec<LambdaVec>) {
    out.push(LambdaVec::from_parts(parts.iter().copied()));
    if slots == 0 {
        return;
    }
    for v in 1..=max {
        parts.push(v);
        bounded_partitions(slots - 1, v, parts, out);
        parts.pop();
    }
}

impl Dimensions {
    /// Dimension one at `λ_π` and zero at every capped `λ` lex-below it.
    pub fn verify_newform_ladder(&mut self, m: &Multisegment, entry_cap: u32) -> Result<SweepReport, DimError> {
        if !m.is_ladder()? {
            return Err(DimError::NotLadder);
        }
        let lambda_pi = m.lambda();
        let n = m.rank();
        let mut checks = Vec::new();
        checks.push(Check { dim: self.ladder_dim(m, &lambda_pi)?.dim, lambda: lambda_pi.clone(), expected: 1 });
        for lambda in lambdas_below(&lambda_pi, n, entry_cap) {
            checks.push(Check { dim: self.ladder_dim(m, &lambda)?.dim, lambda, expected: 0 });
        }
        Ok(SweepReport { multisegment: m.clone(), lambda_pi, n, prime: self.prime(), checks })
    }

    /// Dimension zero at every `λ ∈ Λ_n` with `|λ| < |λ_π|`.
    pub fn verify_conj12(&mut self, m: &Multisegment) -> Result<SweepReport, DimError> {
        let lambda_pi = m.lambda();
        let n = m.rank();
        let mut checks = Vec::new();
        for size in 0..lambda_pi.size() {
            for lambda in partitions(size, n as usize) {
                checks.push(Check { dim: self.dim(m, &lambda)?.dim, lambda, expected: 0 });
            }
        }
        Ok(SweepReport { multisegment: m.clone(), lambda_pi, n, prime: self.prime(), checks })
    }
}
