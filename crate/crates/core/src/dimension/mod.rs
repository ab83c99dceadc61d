//! Dimensions of fixed vectors under `K_{n,λ}` and the sweeps built on them.
//!
//! Every dimension here reduces to counting admissible filtrations of a finite module,
//! so all of them share one [`FiltrationCounter`] and its Hall tables.

mod poly;
mod steinberg;
mod sweep;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::multiseg::{LambdaVec, MultisegError, Multisegment};
use crate::omodule::{FiltrationCounter, LevelOracle, ModuleError, SizeLimits};

pub use poly::{monomial_degree, TruncatedGradedPoly};
pub use steinberg::{steinberg, steinberg_f, steinberg_series_coefficient, SteinbergReport, MAX_STEINBERG};
pub use sweep::{default_entry_cap, lambdas_below, Check, SweepReport};

/// Largest ladder for the signed sum over `S_t`.
pub const MAX_LADDER_SEGMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Multiseg(#[from] MultisegError),
    #[error("line {0} is ramified; its inner dimensions need an oracle")]
    Ramified(String),
    #[error("not a ladder")]
    NotLadder,
    #[error("neither a ladder nor unlinked, so no dimension formula applies")]
    Unsupported,
    #[error("({lambda}) has more than {n} parts")]
    NotInLambda { lambda: LambdaVec, n: u32 },
    #[error("{what} is {got}, above the bound {max}")]
    Bound { what: &'static str, got: usize, max: usize },
    #[error("signed sum came out negative: {0}")]
    Negative(i128),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimMethod {
    Standard,
    Ladder,
    MackeyComposite,
}

impl fmt::Display for DimMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimMethod::Standard => "standard",
            DimMethod::Ladder => "ladder",
            DimMethod::MackeyComposite => "mackey-composite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub lambda: LambdaVec,
    pub dim: u128,
    pub method: DimMethod,
    pub prime: u64,
}

/// One factor of a parabolic induction: its rank and the invariant dimensions of the
/// factor as a function of the graded type.
pub struct Factor<'a> {
    pub rank: u32,
    pub oracle: &'a dyn Fn(&LambdaVec) -> u128,
}

/// Dimension formulas at a fixed prime, with cached Hall tables.
pub struct Dimensions {
    counter: FiltrationCounter,
}

impl Dimensions {
    pub fn new(p: u64) -> Result<Self, DimError> {
        Ok(Self { counter: FiltrationCounter::new(p)? })
    }

    pub fn with_limits(p: u64, limits: SizeLimits) -> Result<Self, DimError> {
        Ok(Self { counter: FiltrationCounter::with_limits(p, limits)? })
    }

    pub fn prime(&self) -> u64 {
        self.counter.p()
    }

    pub fn counter(&mut self) -> &mut FiltrationCounter {
        &mut self.counter
    }

    fn report(&self, lambda: &LambdaVec, dim: u128, method: DimMethod) -> DimReport {
        DimReport { lambda: lambda.clone(), dim, method, prime: self.prime() }
    }

    /// `N_{(l(Δ_1), …, l(Δ_r))}(M)`: invariants of `Z(Δ_1) × ⋯ × Z(Δ_r)`.
    pub fn standard_module_dim(&mut self, m: &Multisegment, lambda: &LambdaVec) -> Result<DimReport, DimError> {
        require_unipotent(m)?;
        require_fits(lambda, m.rank())?;
        let bounds: Vec<i64> = m.segments().iter().map(|s| i64::from(s.len())).collect();
        let dim = self.counter.count_atmost(lambda, &bounds)?;
        Ok(self.report(lambda, dim, DimMethod::Standard))
    }

    /// Sum over admissible filtrations of the product of factor dimensions.
    pub fn mackey_dim(&mut self, factors: &[Factor<'_>], lambda: &LambdaVec) -> Result<DimReport, DimError> {
        let n: u32 = factors.iter().map(|f| f.rank).sum();
        require_fits(lambda, n)?;
        let pairs: Vec<(u32, LevelOracle<'_>)> = factors.iter().map(|f| (f.rank, f.oracle)).collect();
        let dim = self.counter.weighted_count(lambda, &pairs)?;
        Ok(self.report(lambda, dim, DimMethod::MackeyComposite))
    }

    /// `Σ_{w ∈ S_t} sgn(w) N_{n_w}(M)` with `n_w,i = y_i − x_{w(i)} + 1`.
    pub fn ladder_dim(&mut self, m: &Multisegment, lambda: &LambdaVec) -> Result<DimReport, DimError> {
        require_unipotent(m)?;
        if !m.is_ladder()? {
            return Err(DimError::NotLadder);
        }
        let t = m.card();
        if t > MAX_LADDER_SEGMENTS {
            return Err(DimError::Bound { what: "ladder size", got: t, max: MAX_LADDER_SEGMENTS });
        }
        require_fits(lambda, m.rank())?;
        let x: Vec<i64> = m.segments().iter().map(|s| s.a()).collect();
        let y: Vec<i64> = m.segments().iter().map(|s| s.b()).collect();
        let mut total: i128 = 0;
        for (w, sign) in signed_permutations(t) {
            let bounds: Vec<i64> = (0..t).map(|i| y[i] - x[w[i]] + 1).collect();
            let n = self.counter.count_atmost(lambda, &bounds)? as i128;
            total += if sign { n } else { -n };
        }
        let dim = u128::try_from(total).map_err(|_| DimError::Negative(total))?;
        Ok(self.report(lambda, dim, DimMethod::Ladder))
    }

    /// Ladder formula for ladders, standard modules for unlinked multisegments.
    pub fn dim(&mut self, m: &Multisegment, lambda: &LambdaVec) -> Result<DimReport, DimError> {
        require_unipotent(m)?;
        if m.lines().len() <= 1 && m.is_ladder()? {
            self.ladder_dim(m, lambda)
        } else if m.is_unlinked() {
            self.standard_module_dim(m, lambda)
        } else {
            Err(DimError::Unsupported)
        }
    }
}

fn require_unipotent(m: &Multisegment) -> Result<(), DimError> {
    match m.segments().iter().find(|s| !s.label().is_unipotent()) {
        Some(s) => Err(DimError::Ramified(s.label().line().into())),
        None => Ok(()),
    }
}

fn require_fits(lambda: &LambdaVec, n: u32) -> Result<(), DimError> {
    if lambda.len() > n as usize {
        return Err(DimError::NotInLambda { lambda: lambda.clone(), n });
    }
    Ok(())
}

/// Every permutation of `0..t` with its sign (`true` for even).
pub fn signed_permutations(t: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..t).collect();
    permute(&mut perm, 0, true, &mut out);
    out
}

fn permute(perm: &mut Vec<usize>, k: usize, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
    if k + 1 >= perm.len() {
        out.push((perm.clone(), even));
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, even == (i == k), out);
        perm.swap(k, i);
    }
}

/// [`Dimensions::standard_module_dim`] with a fresh cache.
pub fn standard_module_dim(m: &Multisegment, lambda: &LambdaVec, p: u64) -> Result<u128, DimError> {
    Ok(Dimensions::new(p)?.standard_module_dim(m, lambda)?.dim)
}

/// [`Dimensions::mackey_dim`] with a fresh cache.
pub fn mackey_dim(factors: &[Factor<'_>], lambda: &LambdaVec, p: u64) -> Result<u128, DimError> {
    Ok(Dimensions::new(p)?.mackey_dim(factors, lambda)?.dim)
}

/// [`Dimensions::ladder_dim`] with a fresh cache.
pub fn ladder_dim(m: &Multisegment, lambda: &LambdaVec, p: u64) -> Result<u128, DimError> {
    Ok(Dimensions::new(p)?.ladder_dim(m, lambda)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiseg::ms;

    fn lv(p: &[u32]) -> LambdaVec {
        LambdaVec::from_parts(p.iter().copied())
    }

    #[test]
    fn permutation_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|p| p.1).count(), 3);
        for (w, even) in &perms {
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(inversions % 2 == 0, *even);
        }
        assert_eq!(signed_permutations(0), alloc::vec![(Vec::new(), true)]);
    }

    #[test]
    fn iwahori_vectors() {
        let m = ms(&[(1, 1), (0, 0)]);
        assert_eq!(standard_module_dim(&m, &lv(&[1]), 2).unwrap(), 2);
        assert_eq!(standard_module_dim(&m, &lv(&[1]), 3).unwrap(), 2);
        assert_eq!(standard_module_dim(&m, &lv(&[]), 3).unwrap(), 1);
        assert_eq!(standard_module_dim(&ms(&[(0, 3)]), &lv(&[2, 1]), 2).unwrap(), 1);
    }

    #[test]
    fn small_ladder() {
        let m = ms(&[(1, 2), (0, 0)]);
        assert_eq!(ladder_dim(&m, &lv(&[1]), 2).unwrap(), 1);
        assert_eq!(ladder_dim(&m, &lv(&[]), 2).unwrap(), 0);
        assert_eq!(ladder_dim(&m, &lv(&[1]), 3).unwrap(), 1);
        assert!(matches!(ladder_dim(&ms(&[(0, 3), (1, 2)]), &lv(&[]), 2), Err(DimError::NotLadder)));
        assert!(matches!(ladder_dim(&m, &lv(&[1, 1, 1, 1]), 2), Err(DimError::NotInLambda { .. })));
    }

    #[test]
    fn mackey_examples() {
        let one = |_: &LambdaVec| 1u128;
        let two = |_: &LambdaVec| 2u128;
        let zero = |_: &LambdaVec| 0u128;
        let f = [Factor { rank: 2, oracle: &one }, Factor { rank: 2, oracle: &one }];
        assert_eq!(mackey_dim(&f, &lv(&[1, 1]), 2).unwrap(), 5);
        let f = [Factor { rank: 1, oracle: &two }, Factor { rank: 2, oracle: &two }];
        assert_eq!(mackey_dim(&f, &lv(&[]), 3).unwrap(), 4);
        let f = [Factor { rank: 1, oracle: &zero }, Factor { rank: 2, oracle: &one }];
        assert_eq!(mackey_dim(&f, &lv(&[1]), 3).unwrap(), 0);
    }

    #[test]
    fn dispatch() {
        let mut d = Dimensions::new(2).unwrap();
        assert_eq!(d.dim(&ms(&[(1, 2), (0, 0)]), &lv(&[1])).unwrap().method, DimMethod::Ladder);
        assert_eq!(d.dim(&ms(&[(0, 3), (1, 2)]), &lv(&[1])).unwrap().method, DimMethod::Standard);
        assert_eq!(d.dim(&ms(&[(0, 3), (1, 4), (0, 3)]), &lv(&[])), Err(DimError::Unsupported));
    }
}
